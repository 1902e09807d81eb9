"""Batch gallery report.

Renders every preset, saves the PNGs, and writes the numbers a human
wants next to them: a CSV of primitive counts, escape-iteration totals
and stage timings, plus matplotlib figures (gallery contact sheet,
timing breakdown, and the in-set pixel count of the basic scene as the
iteration budget grows).  Everything lands in one output directory.
"""

from __future__ import annotations

import csv
import pathlib

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .dynamics import EscapeBudget, Viewport, in_set_count
from .gallery import preset, preset_names, render_preset
from .render import RenderResult, write_png

PRECISION_STEPS = (40, 60, 80, 100)


def precision_series(
    steps=PRECISION_STEPS,
    viewport: Viewport | None = None,
    seed: complex = complex(-0.381966, 0.618034),
    resolution: int = 1000,
) -> list[tuple[int, int]]:
    """In-set pixel count of the basic lattice for each iteration budget."""
    if viewport is None:
        viewport = Viewport(-1.4, 1.4, -1.4, 1.4)
    return [
        (n, in_set_count(viewport, resolution, seed, EscapeBudget(n))) for n in steps
    ]


def _contact_sheet(images: dict[str, np.ndarray], path: pathlib.Path) -> None:
    names = list(images)
    cols = 4
    rows = (len(names) + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(3.2 * cols, 3.4 * rows))
    for ax in np.ravel(axes):
        ax.axis("off")
    for ax, name in zip(np.ravel(axes), names):
        ax.imshow(images[name])
        ax.set_title(name, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _timing_chart(results: dict[str, RenderResult], path: pathlib.Path) -> None:
    names = list(results)
    stages = ("evaluate", "rasterize", "encode")
    bottoms = np.zeros(len(names))
    fig, ax = plt.subplots(figsize=(8, 4))
    for stage in stages:
        values = np.array([results[n].timings.get(stage, 0.0) for n in names])
        ax.bar(names, values, bottom=bottoms, label=stage)
        bottoms += values
    ax.set_ylabel("seconds")
    ax.set_title("render time by stage")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def _series_chart(series: list[tuple[int, int]], path: pathlib.Path) -> None:
    ns = [n for n, _ in series]
    counts = [c for _, c in series]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ns, counts, marker="o")
    ax.set_xlabel("iteration budget N")
    ax.set_ylabel("in-set pixels")
    ax.set_title("boundary sharpening on the basic lattice")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def write_report(
    outdir: pathlib.Path, *, size: int = 400, workers: int | None = None
) -> list[pathlib.Path]:
    """Render the gallery into outdir; returns every file written."""
    outdir = pathlib.Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[pathlib.Path] = []

    results: dict[str, RenderResult] = {}
    images: dict[str, np.ndarray] = {}
    for name in preset_names():
        result = render_preset(name, size=size, workers=workers)
        results[name] = result
        images[name] = result.pixels
        png_path = outdir / f"{name}.png"
        write_png(png_path, result.pixels)
        written.append(png_path)

    csv_path = outdir / "gallery.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [
                "preset",
                "size",
                "max_steps",
                "primitives",
                "escape_iterations",
                "evaluate_s",
                "rasterize_s",
                "encode_s",
            ]
        )
        for name, result in results.items():
            t = result.timings
            writer.writerow(
                [
                    name,
                    size,
                    preset(name).max_steps,
                    result.primitive_count,
                    result.steps_executed,
                    f"{t.get('evaluate', 0.0):.4f}",
                    f"{t.get('rasterize', 0.0):.4f}",
                    f"{t.get('encode', 0.0):.4f}",
                ]
            )
    written.append(csv_path)

    series = precision_series()
    series_csv = outdir / "precision_series.csv"
    with open(series_csv, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["max_steps", "in_set_pixels"])
        writer.writerows(series)
    written.append(series_csv)

    for maker, name in (
        (lambda p: _contact_sheet(images, p), "gallery_sheet.png"),
        (lambda p: _timing_chart(results, p), "timings.png"),
        (lambda p: _series_chart(series, p), "precision_series.png"),
    ):
        path = outdir / name
        maker(path)
        written.append(path)

    return written
