"""Command line: gen, run, verify, render, bench."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import io as hio
from .bench import format_table, sweep_sizes
from .generate import KINDS, generate
from .oracle import verify
from .render import render_svg
from .scene import SceneError, canonicalize, validate
from .sweep import coalesce, run


def _load(path: str):
    try:
        return hio.read_scene(path)
    except hio.ParseError as exc:
        raise click.ClickException(str(exc))


def _canonical(scene):
    try:
        return canonicalize(scene)
    except ValueError as exc:
        raise click.ClickException(str(exc))


@click.group()
def main():
    """Visible surfaces of iso-oriented rectangles seen from z = +inf."""


@main.command()
@click.option("--n", "n", type=int, required=True, help="number of rectangles")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--kind", type=click.Choice(KINDS), default="uniform", show_default=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default="-")
def gen(n, seed, kind, output):
    """Write a deterministic random scene."""
    if n < 1:
        raise click.BadParameter("n must be at least 1", param_hint="--n")
    scene = generate(kind, n, seed)
    text = hio.format_scene(scene, header=f"kind={kind} n={n} seed={seed}\nid x1 x2 y1 y2 z")
    with click.open_file(output, "w") as fh:
        fh.write(text)


@main.command("run")
@click.argument("scene_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default="-",
              help="regions CSV (stdout by default)")
@click.option("--report-background", is_flag=True, help="also emit background strips")
@click.option("--coalesce", "do_coalesce", is_flag=True,
              help="merge x-adjacent pieces of the same face")
@click.option("--slab-size-override", type=int, default=None, help="events per slab")
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False), default=None)
@click.option("--counters", "counters_path", type=click.Path(dir_okay=False), default=None,
              help="write operation counters as JSON")
def run_cmd(scene_path, output, report_background, do_coalesce, slab_size_override,
            svg_path, counters_path):
    """Report visible regions in canonical coordinates."""
    scene = _canonical(_load(scene_path))
    try:
        result = run(scene, report_background=report_background, slab_size=slab_size_override)
    except SceneError as exc:
        raise click.ClickException(f"invalid scene: {exc}")
    regions = coalesce(result.regions) if do_coalesce else result.regions
    with click.open_file(output, "w") as fh:
        hio.write_regions(regions, fh)
    counters = result.counters.as_dict()
    if counters_path:
        Path(counters_path).write_text(json.dumps(counters, indent=2) + "\n")
    if svg_path:
        Path(svg_path).write_text(render_svg(regions))
    click.echo(f"k={result.k} " + " ".join(f"{k}={v}" for k, v in counters.items()), err=True)


@main.command("verify")
@click.argument("scene_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("regions_path", type=click.Path(exists=True, dir_okay=False))
def verify_cmd(scene_path, regions_path):
    """Check a regions CSV against the brute-force owner grid."""
    scene = _load(scene_path)
    report = validate(scene)
    scene = _canonical(scene)
    with open(regions_path, newline="") as fh:
        try:
            regions = hio.read_regions(fh, regions_path)
        except hio.ParseError as exc:
            raise click.ClickException(str(exc))
    verdict = verify(regions, scene)
    if not report.ok:
        click.echo(f"note: input needed canonicalization ({len(report.violations)} issues)", err=True)
    if verdict.ok:
        click.echo(f"OK: {len(regions)} regions match the oracle")
        return
    where = f" at cell {verdict.cell}" if verdict.cell else ""
    click.echo(f"FAIL: {verdict.message}{where}", err=True)
    sys.exit(1)


@main.command()
@click.argument("regions_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), default="-")
@click.option("--width", type=int, default=800, show_default=True)
def render(regions_path, output, width):
    """Draw a regions CSV as SVG."""
    with open(regions_path, newline="") as fh:
        try:
            regions = hio.read_regions(fh, regions_path)
        except hio.ParseError as exc:
            raise click.ClickException(str(exc))
    with click.open_file(output, "w") as fh:
        fh.write(render_svg(regions, width=width))


@main.command()
@click.option("--kind", type=click.Choice(KINDS), default="uniform", show_default=True)
@click.option("--min-exp", type=int, default=10, show_default=True)
@click.option("--max-exp", type=int, default=16, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--slab-size-override", type=int, default=None)
@click.option("--counters", "counters_path", type=click.Path(dir_okay=False), default=None,
              help="write the table rows as JSON")
def bench(kind, min_exp, max_exp, seed, slab_size_override, counters_path):
    """Operation and space counters over doubling n."""
    if min_exp < 1 or max_exp < min_exp:
        raise click.BadParameter("need 1 <= min-exp <= max-exp")
    rows = sweep_sizes(kind, range(min_exp, max_exp + 1), seed, slab_size_override)
    click.echo(format_table(rows))
    if counters_path:
        Path(counters_path).write_text(json.dumps(
            [dict(vars(r), time_ratio=r.time_ratio, space_ratio=r.space_ratio) for r in rows],
            indent=2) + "\n")


if __name__ == "__main__":
    main()
