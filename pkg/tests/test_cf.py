from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from collabspheres.cf import (
    RatingVector,
    neighborhood,
    predict_rating,
    rating_vector,
    recommend_cf,
    user_similarity,
)
from collabspheres.corpus import generate_synthetic, load_corpus
from collabspheres.errors import UnknownItemError, UnknownUserError

from .conftest import write_fixture_corpus
from .oracles import brute_neighborhood, brute_predict, brute_recommend_cf

rating_entries = st.dictionaries(
    st.sampled_from([f"items/{i}" for i in range(8)]),
    st.integers(min_value=1, max_value=5),
    max_size=8,
)


def test_identical_vectors_have_similarity_one():
    u = RatingVector("users/1", {"a": 4, "b": 2})
    v = RatingVector("users/2", {"a": 4, "b": 2})
    assert user_similarity(u, v) == pytest.approx(1.0, abs=1e-12)


def test_disjoint_vectors_have_similarity_zero():
    u = RatingVector("users/1", {"a": 4})
    v = RatingVector("users/2", {"b": 5})
    assert user_similarity(u, v) == 0.0


def test_empty_vector_similarity_is_zero():
    assert user_similarity(RatingVector("u", {}), RatingVector("v", {"a": 3})) == 0.0


def test_similarity_hand_computed_example():
    # dot = 4*2 + 2*4 = 16; norms both sqrt(20) -> 16/20
    u = RatingVector("users/1", {"i1": 4, "i2": 2})
    v = RatingVector("users/2", {"i1": 2, "i2": 4})
    assert user_similarity(u, v) == pytest.approx(0.8, abs=1e-12)


@given(rating_entries, rating_entries)
def test_similarity_symmetric_and_bounded(a, b):
    u = RatingVector("users/1", a)
    v = RatingVector("users/2", b)
    left = user_similarity(u, v)
    right = user_similarity(v, u)
    assert left == pytest.approx(right, abs=1e-12)
    assert 0.0 <= left <= 1.0 + 1e-12


def test_mean_center_option_zeroes_constant_vectors():
    u = RatingVector("users/1", {"a": 3, "b": 3})
    v = RatingVector("users/2", {"a": 5, "b": 1})
    assert user_similarity(u, v, mean_center=True) == 0.0


def test_user_with_no_ratings_has_empty_neighborhood(fixture_snapshot, tmp_path):
    root = write_fixture_corpus(tmp_path, ratings=[])
    snapshot = load_corpus(root)
    assert neighborhood(snapshot, "users/1", 5).neighbors == ()


def test_neighborhood_unknown_user(fixture_snapshot):
    with pytest.raises(UnknownUserError):
        neighborhood(fixture_snapshot, "users/none", 5)


def test_neighborhood_requires_positive_k(fixture_snapshot):
    with pytest.raises(ValueError):
        neighborhood(fixture_snapshot, "users/1", 0)


def test_single_overlapping_rater_gives_singleton_neighborhood(tmp_path):
    ratings = [
        {"user": "users/1", "item": "ros/1", "value": 4, "at": "2024-02-01T00:00:00Z"},
        {"user": "users/2", "item": "ros/1", "value": 5, "at": "2024-02-01T01:00:00Z"},
        {"user": "users/3", "item": "ros/2", "value": 3, "at": "2024-02-01T02:00:00Z"},
    ]
    snapshot = load_corpus(write_fixture_corpus(tmp_path, ratings=ratings))
    hood = neighborhood(snapshot, "users/1", 10)
    assert [user for user, _ in hood.neighbors] == ["users/2"]


def test_predict_none_when_no_neighbor_rated_item(tmp_path):
    ratings = [
        {"user": "users/1", "item": "ros/1", "value": 4, "at": "2024-02-01T00:00:00Z"},
        {"user": "users/2", "item": "ros/1", "value": 5, "at": "2024-02-01T01:00:00Z"},
    ]
    snapshot = load_corpus(write_fixture_corpus(tmp_path, ratings=ratings))
    assert predict_rating(snapshot, "users/1", "resources/2", 10) is None


def test_predict_single_neighbor_weights_cancel(tmp_path):
    ratings = [
        {"user": "users/1", "item": "ros/1", "value": 2, "at": "2024-02-01T00:00:00Z"},
        {"user": "users/2", "item": "ros/1", "value": 5, "at": "2024-02-01T01:00:00Z"},
        {"user": "users/2", "item": "ros/2", "value": 4, "at": "2024-02-01T02:00:00Z"},
    ]
    snapshot = load_corpus(write_fixture_corpus(tmp_path, ratings=ratings))
    assert predict_rating(snapshot, "users/1", "ros/2", 10) == pytest.approx(4.0, abs=1e-12)


def test_predict_weighted_mean_hand_example():
    # Two neighbors: sim .8 rating 5 and sim .2 rating 1 -> (4.0 + 0.2) / 1.0 = 4.2
    weighted = 0.8 * 5 + 0.2 * 1
    assert weighted / (0.8 + 0.2) == pytest.approx(4.2, abs=1e-12)


def test_predict_unknown_item(fixture_snapshot):
    with pytest.raises(UnknownItemError):
        predict_rating(fixture_snapshot, "users/1", "items/none", 5)


def test_recommend_excludes_rated_and_created(fixture_snapshot):
    for rec in recommend_cf(fixture_snapshot, "users/3", 10, 50):
        assert rec.item.id not in fixture_snapshot.ratings_of("users/3")
        assert rec.item.id not in fixture_snapshot.created_by("users/3")


def test_recommend_empty_for_user_who_rated_everything(tmp_path):
    users = [
        {"id": "users/1", "name": "A", "keywords": [], "created_at": "2024-01-01T00:00:00Z"},
        {"id": "users/2", "name": "B", "keywords": [], "created_at": "2024-01-01T00:00:00Z"},
    ]
    ros = [{"id": "ros/1", "title": "t", "description": "", "creators": ["users/2"],
            "tags": [], "resources": [], "created_at": "2024-01-01T00:00:00Z"}]
    ratings = [
        {"user": "users/1", "item": "ros/1", "value": 4, "at": "2024-02-01T00:00:00Z"},
        {"user": "users/2", "item": "ros/1", "value": 5, "at": "2024-02-01T01:00:00Z"},
    ]
    snapshot = load_corpus(
        write_fixture_corpus(tmp_path, users=users, friends=[], ros=ros, resources=[], ratings=ratings)
    )
    assert recommend_cf(snapshot, "users/1", 10, 10) == []


def test_unanimous_five_rating_gives_strength_one(tmp_path):
    ratings = [
        {"user": "users/1", "item": "ros/1", "value": 4, "at": "2024-02-01T00:00:00Z"},
        {"user": "users/2", "item": "ros/1", "value": 4, "at": "2024-02-01T01:00:00Z"},
        {"user": "users/2", "item": "resources/3", "value": 5, "at": "2024-02-01T02:00:00Z"},
        {"user": "users/3", "item": "ros/1", "value": 4, "at": "2024-02-01T03:00:00Z"},
        {"user": "users/3", "item": "resources/3", "value": 5, "at": "2024-02-01T04:00:00Z"},
    ]
    snapshot = load_corpus(write_fixture_corpus(tmp_path, ratings=ratings))
    recs = recommend_cf(snapshot, "users/1", 10, 10)
    assert recs[0].item.id == "resources/3"
    assert recs[0].strength == pytest.approx(1.0, abs=1e-12)
    assert recs[0].stars == 5
    assert "users" not in recs[0].explanation.split(":")[0]  # names, not raw ids


def test_cold_start_user_gets_empty_cf_list(tmp_path):
    root = write_fixture_corpus(tmp_path, ratings=[])
    snapshot = load_corpus(root)
    assert recommend_cf(snapshot, "users/1", 10, 10) == []


def test_cf_matches_brute_force_on_synthetic_corpus():
    snapshot = generate_synthetic(11, 20, 15, 25)
    for user_id in snapshot.users:
        hood = neighborhood(snapshot, user_id, 5)
        expected = brute_neighborhood(snapshot, user_id, 5)
        assert [u for u, _ in hood.neighbors] == [u for u, _ in expected]
        for (_, got), (_, want) in zip(hood.neighbors, expected):
            assert got == pytest.approx(want, abs=1e-9)

        recs = recommend_cf(snapshot, user_id, 5, 10)
        expected_recs = brute_recommend_cf(snapshot, user_id, 5, 10)
        assert [r.item.id for r in recs] == [item for item, _ in expected_recs]
        for rec, (_, strength) in zip(recs, expected_recs):
            assert rec.strength == pytest.approx(strength, abs=1e-9)


def test_predict_matches_brute_force_on_synthetic_corpus():
    snapshot = generate_synthetic(13, 15, 10, 15)
    items = snapshot.item_ids()
    for user_id in sorted(snapshot.users)[:8]:
        for item in items:
            got = predict_rating(snapshot, user_id, item, 5)
            want = brute_predict(snapshot, user_id, item, 5)
            if want is None:
                assert got is None
            else:
                assert got == pytest.approx(want, abs=1e-9)


def test_rating_vector_mirrors_snapshot(fixture_snapshot):
    vec = rating_vector(fixture_snapshot, "users/3")
    assert dict(vec.entries) == {"resources/1": 3, "ros/1": 4}
