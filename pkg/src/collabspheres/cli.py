"""Operator CLI: validate and synthesize corpora, run recommendations and
stats, launch the HTTP service.

Machine-readable output goes to stdout as JSON; diagnostics go to stderr.
Exit codes: 0 success, 1 data errors, 2 usage errors.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .config import DEFAULT_CONFIG, EngineConfig
from .corpus import generate_synthetic, load_corpus, write_corpus
from .engine import corpus_stats
from .errors import CollabSpheresError
from .sessions import explanation_report, open_session

CONFIG_ENV_VAR = "COLLABSPHERE_CONFIG"


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _load_snapshot(corpus_dir: str):
    try:
        return load_corpus(corpus_dir)
    except CollabSpheresError as exc:
        _fail(str(exc))


def _load_config(config_path: str | None) -> EngineConfig:
    path = config_path or os.environ.get(CONFIG_ENV_VAR)
    if not path:
        return DEFAULT_CONFIG
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return EngineConfig.from_dict(data)
    except (OSError, ValueError, TypeError) as exc:
        _fail(f"bad config file {path}: {exc}")


corpus_option = click.option(
    "--corpus",
    "corpus_dir",
    required=True,
    type=click.Path(exists=True, file_okay=False),
    help="Corpus directory with the five JSONL files.",
)
config_option = click.option(
    "--config",
    "config_path",
    default=None,
    type=click.Path(exists=True, dir_okay=False),
    help=f"Engine config JSON (defaults to ${CONFIG_ENV_VAR}).",
)


@click.group()
def main():
    """CollabSpheres: research-object recommender toolkit."""


@main.command()
@corpus_option
def validate(corpus_dir: str):
    """Load a corpus and report whether it is valid."""
    _load_snapshot(corpus_dir)
    click.echo("OK")


@main.command()
@click.option("--seed", required=True, type=int)
@click.option("--users", "n_users", required=True, type=int)
@click.option("--ros", "n_ros", required=True, type=int)
@click.option("--resources", "n_resources", required=True, type=int)
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
def synth(seed: int, n_users: int, n_ros: int, n_resources: int, out_dir: str):
    """Generate a deterministic synthetic corpus directory."""
    try:
        snapshot = generate_synthetic(seed, n_users, n_ros, n_resources)
    except ValueError as exc:
        _fail(str(exc))
    write_corpus(snapshot, out_dir)
    click.echo(f"wrote synthetic corpus to {out_dir}", err=True)


@main.command()
@corpus_option
@click.option("--user", "user_id", required=True, help="Subject user id.")
@click.option("--n", "limit", default=None, type=int, help="Truncate the report to N entries.")
@config_option
def recommend(corpus_dir: str, user_id: str, limit: int | None, config_path: str | None):
    """Print the full recommendation report for one user as JSON."""
    snapshot = _load_snapshot(corpus_dir)
    config = _load_config(config_path)
    try:
        session = open_session(snapshot, user_id, config)
    except CollabSpheresError as exc:
        _fail(str(exc))
    report = explanation_report(session).to_dict()
    if limit is not None:
        report["entries"] = report["entries"][:limit]
    click.echo(json.dumps(report, indent=2))


@main.command()
@corpus_option
@config_option
def stats(corpus_dir: str, config_path: str | None):
    """Print the dataset statistics report as JSON."""
    snapshot = _load_snapshot(corpus_dir)
    config = _load_config(config_path)
    click.echo(json.dumps(corpus_stats(snapshot, config).to_dict(), indent=2))


@main.command()
@corpus_option
@click.option("--port", default=8000, type=int)
@click.option("--host", default="127.0.0.1")
@config_option
def serve(corpus_dir: str, port: int, host: str, config_path: str | None):
    """Run the hypermedia HTTP service over a corpus."""
    import uvicorn

    from .service import create_app

    snapshot = _load_snapshot(corpus_dir)
    config = _load_config(config_path)
    app = create_app(snapshot, config)
    click.echo(f"serving corpus {corpus_dir} on http://{host}:{port}", err=True)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
