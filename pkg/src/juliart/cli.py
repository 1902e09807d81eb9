"""Command-line front end.

Subcommands mirror the workflow the scene headers advertise:

    juliart render -b 0 -s 1000 fjords.cfdg fjords.png
    juliart presets list
    juliart presets dump forest
    juliart check ragnarok
    juliart serve --port 8000
    juliart report out/

Exit status: 0 on success, 1 on scene or verification errors (with a
diagnostic naming the error class and source position), 2 on usage
errors.
"""

from __future__ import annotations

import pathlib
import sys
import time

import click

from . import __version__
from .errors import SceneError
from .gallery import preset, preset_names, render_preset
from .gallery.verify import verify_render
from .render import render_source, write_png


def _fail_scene(err: SceneError):
    """Print a one-line diagnostic and exit 1."""
    where = f" (line {err.line}, column {err.col})" if err.line is not None else ""
    shapes = getattr(err, "shape_stack", None)
    via = f" [in {' > '.join(shapes)}]" if shapes else ""
    click.echo(f"{err.kind} error: {err.message}{where}{via}", err=True)
    sys.exit(1)


@click.group()
@click.version_option(__version__, prog_name="juliart")
def main() -> None:
    """Render grammar-described Julia set artworks."""


@main.command()
@click.argument("scene", type=click.Path(exists=True, dir_okay=False, allow_dash=True))
@click.argument("output", type=click.Path(dir_okay=False, writable=True), required=False)
@click.option("-s", "--size", default=1000, show_default=True, help="Image side in pixels.")
@click.option("-b", "--border", default=0, show_default=True, help="Margin in pixels.")
@click.option("-v", "--variation", default="", help="Tag selecting the random stream.")
@click.option("--workers", type=int, default=None, help="Worker threads (default: JULIART_WORKERS or CPU count).")
@click.option("--timings", is_flag=True, help="Print per-stage timings.")
def render(scene, output, size, border, variation, workers, timings) -> None:
    """Render SCENE (a .cfdg file, or - for stdin) to OUTPUT (PNG)."""
    if scene == "-":
        source = sys.stdin.read()
        if output is None:
            raise click.UsageError("OUTPUT is required when reading the scene from stdin")
    else:
        source = pathlib.Path(scene).read_text(encoding="utf-8")
        if output is None:
            output = str(pathlib.Path(scene).with_suffix(".png"))

    started = time.perf_counter()
    try:
        result = render_source(
            source, size=size, border=border, variation=variation, workers=workers
        )
    except SceneError as err:
        _fail_scene(err)
    except ValueError as err:
        click.echo(f"render error: {err}", err=True)
        sys.exit(1)
    write_png(output, result.pixels)
    elapsed = time.perf_counter() - started
    click.echo(
        f"{output}: {size}x{size}, {result.primitive_count} primitives, "
        f"{elapsed:.2f}s"
    )
    if timings:
        for stage, seconds in result.timings.items():
            click.echo(f"  {stage:>9}: {seconds * 1000.0:8.1f} ms")


@main.group()
def presets() -> None:
    """Inspect the bundled artwork scenes."""


@presets.command("list")
def presets_list() -> None:
    """One line per preset: name, iteration cap, variation, title."""
    for name in preset_names():
        p = preset(name)
        tag = p.variation or "-"
        click.echo(f"{name:<10} N={p.max_steps:<4} {p.resolution}px  var={tag:<7} {p.title}")


@presets.command("dump")
@click.argument("name")
def presets_dump(name) -> None:
    """Print a preset's scene source."""
    try:
        source = preset(name).source
    except ValueError as err:
        click.echo(str(err), err=True)
        sys.exit(1)
    click.echo(source, nl=False)


@main.command()
@click.argument("name")
@click.option("--workers", type=int, default=None, help="Worker threads.")
def check(name, workers) -> None:
    """Render preset NAME at reference size and verify its structure."""
    try:
        p = preset(name)
    except ValueError as err:
        click.echo(str(err), err=True)
        sys.exit(1)
    try:
        result = render_preset(name, workers=workers)
    except SceneError as err:
        _fail_scene(err)
    report = verify_render(name, result)
    for line in report.lines():
        click.echo(f"{name}: {line}")
    if not report.passed:
        click.echo(f"{name}: verification FAILED", err=True)
        sys.exit(1)
    click.echo(f"{name}: ok ({result.primitive_count} primitives at {p.resolution}px)")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--workers", type=int, default=None, help="Render worker threads per request.")
def serve(host, port, workers) -> None:
    """Run the HTTP render service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(workers=workers), host=host, port=port)


@main.command()
@click.argument("outdir", type=click.Path(file_okay=False), default="report")
@click.option("-s", "--size", default=400, show_default=True, help="Render size for the gallery pages.")
@click.option("--workers", type=int, default=None, help="Worker threads.")
def report(outdir, size, workers) -> None:
    """Render every preset and write a figures-plus-CSV report to OUTDIR."""
    from .report import write_report

    try:
        paths = write_report(pathlib.Path(outdir), size=size, workers=workers)
    except SceneError as err:
        _fail_scene(err)
    for path in paths:
        click.echo(str(path))


if __name__ == "__main__":
    main()
