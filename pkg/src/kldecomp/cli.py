"""Thin command-line client for the table service.

Without ``--server`` the commands spin up the FastAPI app in-process and
talk to it through an ASGI test transport, so the CLI works offline
while still exercising exactly the HTTP surface; with ``--server URL``
the same requests go to a running instance instead (whose own cache
directory then applies).

Exit codes: 0 success, 1 failed verification (the first counterexample
is printed), 2 bad arguments, 3 corrupt cache file.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click
import httpx

from . import __version__
from .tables import KINDS, payload_to_csv, render_table_json

_CHECK_CHOICES = ("all", "mass", "oracle", "hecke", "recon", "wordindep")


def _client(ctx) -> httpx.Client:
    server = ctx.obj.get("server")
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app

    return TestClient(create_app(ctx.obj.get("cache_dir")), raise_server_exceptions=False)


def _request(ctx, path: str, payload: dict) -> dict:
    try:
        with _client(ctx) as client:
            response = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        click.echo(f"error: cannot reach service: {exc}", err=True)
        sys.exit(1)
    if response.status_code == 200:
        return response.json()
    detail = None
    try:
        detail = response.json().get("detail")
    except (ValueError, AttributeError):
        pass
    if isinstance(detail, dict):
        code = detail.get("code")
        message = detail.get("message", "request failed")
        if code == "cache-corrupt":
            click.echo(f"error: {message}", err=True)
            sys.exit(3)
        if code == "bad-argument":
            position = detail.get("position")
            suffix = f" (position {position})" if position is not None else ""
            click.echo(f"error: {message}{suffix}", err=True)
            sys.exit(2)
        click.echo(f"error: {message}", err=True)
        sys.exit(1)
    if response.status_code == 422:
        click.echo(f"error: invalid request: {detail}", err=True)
        sys.exit(2)
    click.echo(f"error: service returned status {response.status_code}", err=True)
    sys.exit(1)


def _policy_payload(word_policy: str, policy_file: Path | None) -> dict:
    if word_policy == "file":
        if policy_file is None:
            raise click.UsageError("--word-policy file requires --policy-file")
        try:
            data = json.loads(policy_file.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise click.UsageError(f"cannot read policy file {policy_file}: {exc}")
        if not isinstance(data, dict) or not isinstance(data.get("words"), list):
            raise click.UsageError(
                f'policy file {policy_file} must be {{"name": str, "words": [[int, ...], ...]}}'
            )
        return {"name": str(data.get("name", "file")), "words": data["words"]}
    if policy_file is not None:
        raise click.UsageError("--policy-file only makes sense with --word-policy file")
    return {"name": word_policy}


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text)


def _parse_element(text: str) -> list[int]:
    letters: list[int] = []
    if text.strip() == "":
        return letters
    for position, token in enumerate(text.split(","), start=1):
        token = token.strip()
        try:
            letters.append(int(token))
        except ValueError:
            click.echo(f"error: invalid generator {token!r} at position {position}", err=True)
            sys.exit(2)
    return letters


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__)
@click.option("--server", metavar="URL", default=None,
              help="Use a running service instead of computing in-process.")
@click.option("--cache-dir", type=click.Path(path_type=Path), default=None,
              help="Cache directory for in-process mode (default: $KLDECOMP_CACHE).")
@click.pass_context
def main(ctx, server, cache_dir):
    """Exact polynomial tables for finite Weyl groups."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server
    ctx.obj["cache_dir"] = cache_dir


@main.command()
@click.argument("cartan")
@click.option("--kind", "kinds", multiple=True, type=click.Choice(KINDS),
              help="Table kind to emit (repeatable; default: all kinds).")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="json",
              show_default=True)
@click.option("--word-policy", type=click.Choice(["lexmin", "lexmax", "file"]),
              default="lexmin", show_default=True)
@click.option("--policy-file", type=click.Path(exists=True, path_type=Path), default=None,
              help="JSON word list used when --word-policy file.")
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="Write to a file instead of stdout.")
@click.option("--refresh", is_flag=True, help="Recompute even on a warm cache.")
@click.option("--jobs", type=click.IntRange(1, 16), default=1, show_default=True,
              help="Worker threads for the per-length table fill.")
@click.pass_context
def table(ctx, cartan, kinds, fmt, word_policy, policy_file, out, refresh, jobs):
    """Compute (or fetch) polynomial tables for a Cartan type."""
    payload = _request(ctx, "/table", {
        "cartan": cartan,
        "kinds": list(kinds) or None,
        "policy": _policy_payload(word_policy, policy_file),
        "refresh": refresh,
        "jobs": jobs,
    })
    text = render_table_json(payload) if fmt == "json" else payload_to_csv(payload)
    _emit(text, out)


@main.command()
@click.argument("cartan")
@click.option("--checks", default="all", show_default=True,
              help="Comma-separated subset of: " + ", ".join(_CHECK_CHOICES) + ".")
@click.option("--word-policy", type=click.Choice(["lexmin", "lexmax", "file"]),
              default="lexmin", show_default=True)
@click.option("--policy-file", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--jobs", type=click.IntRange(1, 16), default=1, show_default=True)
@click.pass_context
def verify(ctx, cartan, checks, word_policy, policy_file, jobs):
    """Run property suites; exit 1 if any check fails."""
    names = [name.strip() for name in checks.split(",") if name.strip()]
    unknown = [name for name in names if name not in _CHECK_CHOICES]
    if unknown:
        raise click.UsageError(f"unknown check {unknown[0]!r} "
                               f"(choose from {', '.join(_CHECK_CHOICES)})")
    if not names:
        raise click.UsageError("no checks selected")
    result = _request(ctx, "/verify", {
        "cartan": cartan,
        "checks": names,
        "policy": _policy_payload(word_policy, policy_file),
        "jobs": jobs,
    })
    for check in result["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        click.echo(f"{status} {check['name']}: {check['detail']}")
        if check.get("counterexample"):
            click.echo(f"     counterexample: {check['counterexample']}")
    if not result["passed"]:
        sys.exit(1)


@main.command()
@click.argument("cartan")
@click.option("--element", required=True,
              help="Comma-separated 1-based generator word; empty for the identity.")
@click.option("--basis", type=click.Choice(["B", "C"]), default="B", show_default=True)
@click.option("--express-in", type=click.Choice(["C", "T"]), default="C", show_default=True)
@click.option("--word-policy", type=click.Choice(["lexmin", "lexmax", "file"]),
              default="lexmin", show_default=True)
@click.option("--policy-file", type=click.Path(exists=True, path_type=Path), default=None)
@click.pass_context
def basis(ctx, cartan, element, basis, express_in, word_policy, policy_file):
    """Print a basis element expanded in the requested target basis."""
    result = _request(ctx, "/basis", {
        "cartan": cartan,
        "element": _parse_element(element),
        "basis": basis,
        "express_in": express_in,
        "policy": _policy_payload(word_policy, policy_file),
    })
    click.echo(result["rendered"])


@main.command()
@click.argument("cartan")
@click.option("--max-length", type=click.IntRange(0), default=None,
              help="Stop after this word length (default: the longest element).")
@click.option("--engines", default="brute,dp", show_default=True,
              help="Comma-separated subset of: brute, dp.")
@click.option("--out", type=click.Path(path_type=Path), default=None)
@click.pass_context
def bench(ctx, cartan, max_length, engines, out):
    """Emit per-length engine timings and state counts as CSV."""
    engine_list = [name.strip() for name in engines.split(",") if name.strip()]
    unknown = [name for name in engine_list if name not in ("brute", "dp")]
    if unknown:
        raise click.UsageError(f"unknown engine {unknown[0]!r} (choose from brute, dp)")
    if not engine_list:
        raise click.UsageError("no engines selected")
    result = _request(ctx, "/bench", {
        "cartan": cartan,
        "max_length": max_length,
        "engines": engine_list,
    })
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["length", "engine", "words", "seconds", "states", "note"])
    for row in result["rows"]:
        writer.writerow([
            row["length"], row["engine"], row["words"],
            "" if row["seconds"] is None else row["seconds"],
            "" if row["states"] is None else row["states"],
            row["note"] or "",
        ])
    _emit(buffer.getvalue(), out)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.pass_context
def serve(ctx, host, port):
    """Run the table service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(ctx.obj.get("cache_dir")), host=host, port=port)


if __name__ == "__main__":
    main()
