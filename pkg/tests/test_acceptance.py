"""Acceptance suite: one test per release criterion, each printing a
pass/fail line. Tolerances are pinned here and nowhere else.

Run with `pytest -s tests/test_acceptance.py` to see the criterion lines.
"""

from __future__ import annotations

import json
import random
import time
from contextlib import contextmanager

from click.testing import CliRunner
from fastapi.testclient import TestClient

from collabspheres.cf import neighborhood, predict_rating, recommend_cf
from collabspheres.cli import main as cli_main
from collabspheres.config import CombinerWeights, EngineConfig
from collabspheres.content import item_profile, match, user_profile
from collabspheres.corpus import generate_synthetic, relations
from collabspheres.corpus.text import stopwords
from collabspheres.engine import (
    batch_recommendations,
    combine,
    corpus_stats,
    infer_pack_recs,
)
from collabspheres.recommendation import ItemRef, Recommendation, Source
from collabspheres.sessions import (
    add_context_item,
    explanation_report,
    open_session,
    remove_context_item,
)
from collabspheres.service import create_app
from collabspheres.social import (
    build_social_graph,
    interaction_similarity,
    recommend_users,
)

from .conftest import GOLDEN_DIR
from .oracles import (
    brute_interaction_similarity,
    brute_neighborhood,
    brute_pack_inference,
    brute_predict,
    brute_recommend_cf,
    brute_recommend_users,
    brute_social_edges,
    brute_tfidf_profiles,
    brute_user_profile,
    cosine,
)

ORACLE_TOL = 1e-9
EXACT_TOL = 1e-12


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"[acceptance] {name}: FAIL")
        raise
    print(f"[acceptance] {name}: PASS")


def test_cf_oracle_equivalence():
    started = time.perf_counter()
    with criterion("CF oracle equivalence (5 corpora, <=1e-9, <5s)"):
        for seed in (101, 102, 103, 104, 105):
            snapshot = generate_synthetic(seed, 18, 16, 22)  # <=20 users, <=40 items
            assert len(snapshot.users) <= 20 and snapshot.n_items() <= 40
            items = snapshot.item_ids()
            for user in snapshot.users:
                hood = neighborhood(snapshot, user, 5)
                expected = brute_neighborhood(snapshot, user, 5)
                assert [u for u, _ in hood.neighbors] == [u for u, _ in expected]
                for (_, got), (_, want) in zip(hood.neighbors, expected):
                    assert abs(got - want) <= ORACLE_TOL

                recs = recommend_cf(snapshot, user, 5, 40)
                expected_recs = brute_recommend_cf(snapshot, user, 5, 40)
                assert [r.item.id for r in recs] == [i for i, _ in expected_recs]
                for rec, (_, strength) in zip(recs, expected_recs):
                    assert abs(rec.strength - strength) <= ORACLE_TOL

                for item in items:
                    got = predict_rating(snapshot, user, item, 5)
                    want = brute_predict(snapshot, user, item, 5)
                    if want is None:
                        assert got is None
                    else:
                        assert got is not None and abs(got - want) <= ORACLE_TOL
        elapsed = time.perf_counter() - started
        assert elapsed < 5.0, f"CF oracle suite took {elapsed:.2f}s"


def test_social_oracle_equivalence():
    with criterion("Social oracle equivalence (5 graphs, <=1e-9)"):
        for seed in (201, 202, 203, 204, 205):
            snapshot = generate_synthetic(seed, 14, 10, 14)  # <=15 nodes
            assert len(snapshot.users) <= 15
            graph = build_social_graph(snapshot, 1.0, 0.5)
            edges = brute_social_edges(snapshot, 1.0, 0.5)
            nodes = sorted(snapshot.users)
            for i, u in enumerate(nodes):
                for v in nodes[i + 1 :]:
                    got = interaction_similarity(graph, u, v)
                    want = brute_interaction_similarity(edges, nodes, u, v)
                    assert abs(got - want) <= ORACLE_TOL
            for user in nodes:
                got_list = recommend_users(snapshot, graph, user, 10)
                want_list = brute_recommend_users(snapshot, edges, user, 10)
                assert [r.item.id for r in got_list] == [u for u, _ in want_list]
                for rec, (_, sim) in zip(got_list, want_list):
                    assert abs(rec.strength - sim) <= ORACLE_TOL


def test_content_oracle_equivalence():
    with criterion("Content oracle equivalence (10-item fixture, <=1e-9)"):
        snapshot = generate_synthetic(5, 6, 4, 6)
        assert snapshot.n_items() == 10
        stop = stopwords()
        expected_profiles = brute_tfidf_profiles(snapshot, stop)
        for item_id in snapshot.item_ids():
            got = item_profile(snapshot, item_id).weights
            assert got.keys() == expected_profiles[item_id].keys()
            for term, weight in expected_profiles[item_id].items():
                assert abs(got[term] - weight) <= ORACLE_TOL
        for user in snapshot.users:
            got_profile = user_profile(snapshot, user)
            want_profile = brute_user_profile(snapshot, stop, user)
            assert got_profile.weights.keys() == want_profile.keys()
            for term, weight in want_profile.items():
                assert abs(got_profile.weights[term] - weight) <= ORACLE_TOL
            for item_id in snapshot.item_ids():
                got = match(got_profile, item_profile(snapshot, item_id))
                want = cosine(want_profile, expected_profiles[item_id])
                assert abs(got - want) <= ORACLE_TOL


def _random_rec(rng: random.Random, source: Source, item_id: str) -> Recommendation:
    return Recommendation(
        subject="users/1",
        item=ItemRef("resource", item_id),
        strength=rng.random(),
        source=source,
        explanation="synthetic",
    )


def test_combiner_linearity_and_identity():
    with criterion("Combiner linearity and identity (200 cases, <=1e-12)"):
        rng = random.Random(4242)
        for case in range(200):
            items = [f"resources/{i}" for i in range(1, 10)]
            lists = {
                source: [
                    _random_rec(rng, source, item)
                    for item in rng.sample(items, rng.randint(0, 7))
                ]
                for source in (Source.CF, Source.SOCIAL, Source.CONTENT)
            }
            # Identity: a single source with full weight passes through.
            solo = CombinerWeights(cf=0.0, social=0.0, content=1.0)
            passthrough = combine({Source.CONTENT: lists[Source.CONTENT]}, solo, 50)
            expected = sorted(
                lists[Source.CONTENT], key=lambda r: (-r.strength, r.item.id)
            )
            assert [r.item.id for r in passthrough] == [r.item.id for r in expected]
            for got, want in zip(passthrough, expected):
                assert abs(got.strength - want.strength) <= EXACT_TOL

            # Linearity: scaling one source scales exactly its contribution.
            weights = CombinerWeights(
                cf=rng.random() + 0.05, social=rng.random() + 0.05, content=rng.random() + 0.05
            )
            lam = rng.random()
            base = {r.item.id: r.strength for r in combine(lists, weights, 50)}
            scaled_cf = [
                Recommendation(r.subject, r.item, r.strength * lam, r.source, r.explanation)
                for r in lists[Source.CF]
            ]
            scaled = {
                r.item.id: r.strength
                for r in combine({**lists, Source.CF: scaled_cf}, weights, 50)
            }
            cf_strengths = {r.item.id: r.strength for r in lists[Source.CF]}
            for item_id, strength in base.items():
                delta = weights.cf * cf_strengths.get(item_id, 0.0) * (lam - 1.0)
                assert abs(scaled[item_id] - (strength + delta)) <= EXACT_TOL


def test_pack_inference_matches_exhaustive_scan(seed42):
    with criterion("Pack inference vs exhaustive scan (theta 0.25/0.5/1.0)"):
        rng = random.Random(77)
        resource_ids = sorted(seed42.resources)
        for theta in (0.25, 0.5, 1.0):
            for subject in sorted(seed42.users):
                chosen = rng.sample(resource_ids, 30)
                recs = [
                    Recommendation(
                        subject=subject,
                        item=ItemRef("resource", rid),
                        strength=rng.random(),
                        source=Source.COMBINED,
                        explanation="synthetic",
                    )
                    for rid in chosen
                ]
                got = infer_pack_recs(seed42, recs, theta)
                want = brute_pack_inference(
                    seed42, {r.item.id: r.strength for r in recs}, theta, subject
                )
                assert {p.item.id for p in got} == set(want)
                for pack in got:
                    assert abs(pack.strength - want[pack.item.id]) <= EXACT_TOL


def test_undo_replay_sequences(seed42):
    with criterion("Undo/replay: 100 seeded sequences byte-identical"):
        candidates = [ItemRef("ro", rid) for rid in sorted(seed42.ros)[:20]]
        candidates += [
            ItemRef("user", uid) for uid in sorted(seed42.users) if uid != "users/5"
        ][:10]
        rng = random.Random(2024)
        for sequence in range(100):
            session = open_session(seed42, "users/5")
            applied: list[ItemRef] = []
            for _ in range(rng.randint(1, 10)):
                if applied and rng.random() < 0.4:
                    victim = applied.pop(rng.randrange(len(applied)))
                    session = remove_context_item(session, victim)
                else:
                    remaining = [ref for ref in candidates if ref not in applied]
                    if not remaining:
                        break
                    ref = rng.choice(remaining)
                    applied.append(ref)
                    session = add_context_item(session, ref)
            replayed = open_session(seed42, "users/5")
            for ref in applied:
                replayed = add_context_item(replayed, ref)
            assert (
                json.dumps(session.state_dict()).encode()
                == json.dumps(replayed.state_dict()).encode()
            )


def test_exclusion_suite(seed42):
    with criterion("Exclusion suite across all seed-42 users"):
        config = EngineConfig()
        for user, lists in batch_recommendations(seed42, config):
            rated = set(seed42.ratings_of(user))
            created = set(seed42.created_by(user))
            friends = set(seed42.friends_of(user))
            for rec in lists.cf:
                assert rec.item.id not in rated and rec.item.id not in created
            for rec in lists.content:
                assert rec.item.id not in rated and rec.item.id not in created
            for rec in lists.social:
                assert rec.item.kind == "user"
                assert rec.item.id != user
                assert rec.item.id not in friends
            for rec in lists.inferred:
                assert rec.item.id not in created
            for rec in lists.combined:
                assert not (rec.item.kind == "user" and rec.item.id == user)
                assert rec.item.id not in created

        # Gray sphere: blue items, center, and the center's own/rated items
        # are never recommended.
        for user in sorted(seed42.users):
            rel = relations(seed42, user)
            ref = None
            if rel.friends_ros:
                ref = ItemRef("ro", rel.friends_ros[0])
            elif rel.own_ros:
                ref = ItemRef("ro", rel.own_ros[0])
            else:
                others = [u for u in sorted(seed42.users) if u != user]
                ref = ItemRef("user", others[0])
            session = add_context_item(open_session(seed42, user, config), ref)
            blue_ids = {r.id for r in session.blue}
            for rec in session.gray_basis:
                assert rec.item.id not in blue_ids
                assert rec.item.id != user
                assert rec.item.id not in seed42.created_by(user)
                assert rec.item.id not in seed42.ratings_of(user)


def test_determinism_and_golden_files(seed42_dir):
    with criterion("Determinism: stats/recommend/report match goldens twice"):
        runner = CliRunner()
        stats_runs = [
            runner.invoke(cli_main, ["stats", "--corpus", str(seed42_dir)]).stdout_bytes
            for _ in range(2)
        ]
        assert stats_runs[0] == stats_runs[1]
        assert stats_runs[0] == (GOLDEN_DIR / "seed42_stats.json").read_bytes()

        recommend_runs = [
            runner.invoke(
                cli_main,
                ["recommend", "--corpus", str(seed42_dir), "--user", "users/1"],
            ).stdout_bytes
            for _ in range(2)
        ]
        assert recommend_runs[0] == recommend_runs[1]
        assert recommend_runs[0] == (GOLDEN_DIR / "seed42_recommend_users1.json").read_bytes()

        snapshot = generate_synthetic(42, 50, 120, 200)
        rel = relations(snapshot, "users/1")
        reports = []
        for _ in range(2):
            session = open_session(snapshot, "users/1")
            session = add_context_item(session, ItemRef("ro", rel.friends_ros[0]))
            reports.append(
                (json.dumps(explanation_report(session).to_dict(), indent=2) + "\n").encode()
            )
        assert reports[0] == reports[1]
        assert reports[0] == (GOLDEN_DIR / "seed42_report_context.json").read_bytes()


def test_stats_report_shape(seed42):
    with criterion("Stats report field shape"):
        assert list(corpus_stats(seed42).to_dict()) == [
            "users",
            "workflows",
            "files",
            "packs",
            "recs_total",
            "recs_cf",
            "recs_content",
            "recs_social",
            "recs_inferred_pack",
            "users_with_at_least_one_rec",
        ]


def test_service_contract_walk(seed42):
    with criterion("Service contract: HTTP walk equals engine, 404/400"):
        config = EngineConfig()
        center = "users/1"
        with TestClient(create_app(seed42, config)) as client:
            assert client.get("/users/users/9999").status_code == 404
            assert client.get("/ros/ros/9999").status_code == 404
            assert client.post("/sessions", content=b"}{").status_code == 400
            assert client.post("/sessions", json={"middle": center}).status_code == 400

            user_env = client.get(f"/users/{center}").json()
            links = {l["rel"]: l["href"] for l in user_env["links"]}
            relations_env = client.get(links["friends"]).json()
            ro_id = relations_env["payload"]["friends_ros"][0]["id"]

            session_env = client.post(links["open-session"], json={"center": center}).json()
            session_links = {l["rel"]: l["href"] for l in session_env["links"]}
            spheres = client.post(
                session_links["context"], json={"item": {"kind": "ro", "id": ro_id}}
            ).json()["payload"]
            report = client.get(session_links["report"]).json()["payload"]
            removed = client.delete(f"{session_links['context']}/{ro_id}").json()["payload"]

        engine_session = add_context_item(
            open_session(seed42, center, config), ItemRef("ro", ro_id)
        )
        assert report == explanation_report(engine_session).to_dict()
        assert [n["id"] for n in spheres["white"]] == [
            r.item.id for r in engine_session.white
        ]
        assert [n["id"] for n in spheres["gray"]] == [r.item.id for r in engine_session.gray]
        fresh = open_session(seed42, center, config)
        assert [n["id"] for n in removed["white"]] == [r.item.id for r in fresh.white]
        assert removed["blue"] == [] and removed["gray"] == []


def test_batch_performance_budget():
    with criterion("Performance: 1000-user/2000-item batch < 10 s"):
        snapshot = generate_synthetic(7, 1000, 600, 1400)
        assert len(snapshot.users) == 1000 and snapshot.n_items() == 2000
        started = time.perf_counter()
        report = corpus_stats(snapshot)
        elapsed = time.perf_counter() - started
        assert report.users == 1000
        assert elapsed < 10.0, f"batch took {elapsed:.2f}s"
