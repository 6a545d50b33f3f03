"""Command-line client for the mesh metrics service.

Every subcommand talks to the HTTP API: pass --url to target a running server
(see `mediandual serve`), or omit it to mount the service in-process, which
keeps file-based runs self-contained. Exit codes: 0 success, 2 input error,
3 verification tolerance failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from .fileio import dumps

EXIT_INPUT_ERROR = 2
EXIT_VERIFY_FAILURE = 3


def _client(url: str | None) -> httpx.Client:
    if url:
        return httpx.Client(base_url=url, timeout=120.0)
    import warnings

    with warnings.catch_warnings():
        # the in-process transport import can warn about client-library churn
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _fail(message: str, code: int = EXIT_INPUT_ERROR) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_mesh_doc(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(str(exc))
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def _post(client: httpx.Client, endpoint: str, payload: dict) -> dict:
    response = client.post(endpoint, json=payload)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        _fail(f"{endpoint}: {detail}")
    return response.json()


@click.group()
@click.option("--url", default=None, help="Base URL of a running service; in-process if omitted.")
@click.pass_context
def main(ctx, url):
    """Median-dual mesh metrics: generation, dual fields, verification."""
    ctx.obj = url


@main.command()
@click.option("--dim", type=int, default=None, help="Ambient dimension (2..5).")
@click.option("--cells-per-axis", "-n", type=int, default=None, help="Cubes per axis.")
@click.option("--perturb", type=float, default=0.0, help="Interior perturbation amplitude [0, 0.3].")
@click.option("--seed", type=int, default=0, help="Perturbation seed.")
@click.option("--canonical", default=None, help="Named reference mesh instead of a grid.")
@click.option("-o", "--output", required=True, type=click.Path(), help="Mesh JSON output path.")
@click.pass_obj
def generate(url, dim, cells_per_axis, perturb, seed, canonical, output):
    """Generate a Kuhn grid or a canonical mesh and write it as JSON."""
    payload = {
        "dimension": dim,
        "cells_per_axis": cells_per_axis,
        "perturb_amplitude": perturb,
        "seed": seed,
        "canonical": canonical,
    }
    with _client(url) as client:
        doc = _post(client, "/api/generate", payload)
    Path(output).write_text(dumps(doc), encoding="utf-8")
    click.echo(f"wrote {output}: {len(doc['points'])} points, {len(doc['cells'])} cells")


@main.command()
@click.argument("mesh", type=click.Path(exists=True))
@click.pass_obj
def validate(url, mesh):
    """Exit 0 if the mesh is a valid triangulation, 2 with diagnostics otherwise."""
    doc = _load_mesh_doc(mesh)
    with _client(url) as client:
        result = _post(client, "/api/validate", doc)
    if not result["valid"]:
        for line in result["diagnostics"]:
            click.echo(f"invalid: {line}", err=True)
        sys.exit(EXIT_INPUT_ERROR)
    click.echo(f"{mesh}: valid")


@main.command()
@click.argument("mesh", type=click.Path(exists=True))
@click.pass_obj
def info(url, mesh):
    """Print mesh counts (points, cells, edges, interior/boundary facets)."""
    doc = _load_mesh_doc(mesh)
    with _client(url) as client:
        counts = _post(client, "/api/info", doc)
    click.echo(dumps(counts), nl=False)


@main.command()
@click.argument("mesh", type=click.Path(exists=True))
@click.option(
    "--no-boundary-correction",
    "boundary_correction",
    flag_value=False,
    default=True,
    help="Skip the boundary-facet terms (interior-sum field only).",
)
@click.option("-o", "--output", required=True, type=click.Path(), help="Dual JSON output path.")
@click.pass_obj
def dual(url, mesh, boundary_correction, output):
    """Compute per-node dual volumes and per-edge directed areas."""
    doc = _load_mesh_doc(mesh)
    payload = {"mesh": doc, "boundary_correction": boundary_correction}
    with _client(url) as client:
        result = _post(client, "/api/dual", payload)
    Path(output).write_text(dumps(result), encoding="utf-8")
    click.echo(
        f"wrote {output}: {len(result['volumes'])} volumes, "
        f"{len(result['directed_areas'])} directed areas ({result['meta']['mode']})"
    )


@main.command()
@click.argument("mesh", type=click.Path(exists=True))
@click.option("--boundary-coefficient", type=float, default=None, help="Closure weight (default 1/d).")
@click.option(
    "--paper-coefficient",
    is_flag=True,
    default=False,
    help="Report the 1/(d+1) closure bookkeeping without gating the verdict on it.",
)
@click.option("-o", "--output", required=True, type=click.Path(), help="Report JSON output path.")
@click.pass_obj
def verify(url, mesh, boundary_coefficient, paper_coefficient, output):
    """Run all checks; exit 0 on pass, 3 on tolerance failure."""
    doc = _load_mesh_doc(mesh)
    payload = {
        "mesh": doc,
        "boundary_coefficient": boundary_coefficient,
        "paper_coefficient": paper_coefficient,
    }
    with _client(url) as client:
        report = _post(client, "/api/verify", payload)
    Path(output).write_text(dumps(report), encoding="utf-8")
    click.echo(
        f"{mesh}: verdict={report['verdict']} mode={report['mode']} "
        f"closure_max={report['closure_max']:.3e} "
        f"field_max_rel_err={report['field_max_rel_err']:.3e}"
    )
    if report["verdict"] != "pass":
        sys.exit(EXIT_VERIFY_FAILURE)


@main.command()
@click.option("--host", default="127.0.0.1", help="Bind address.")
@click.option("--port", type=int, default=8000, help="Bind port.")
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("mediandual.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
