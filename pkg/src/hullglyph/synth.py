"""Seeded synthetic glyph corpus for tests and desk-scale experiments.

Each class is a prototype made of a few thick strokes (open polylines and,
for some classes, a closed loop) laid out in the unit square.  Samples
jitter the control points, apply a small random affine map, vary the stroke
width, and are rendered as dark ink on a noisy light background.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .imaging import GrayImage
from .pnm import write_pnm

CANVAS = 48


@dataclass(frozen=True)
class Prototype:
    strokes: tuple[np.ndarray, ...]  # each (k, 2) array of unit-square (x, y) points
    closed: tuple[bool, ...]


def make_prototype(seed: int, label: int) -> Prototype:
    rng = np.random.Generator(np.random.PCG64([seed, label]))
    n_strokes = int(rng.integers(2, 4))
    strokes, closed = [], []
    for k in range(n_strokes):
        loop = k == 0 and rng.random() < 0.4
        n_pts = int(rng.integers(4, 6)) if loop else int(rng.integers(2, 5))
        if loop:
            center = rng.uniform(0.35, 0.65, size=2)
            radius = rng.uniform(0.12, 0.25, size=2)
            angles = np.sort(rng.uniform(0, 2 * np.pi, size=n_pts))
            pts = center + radius * np.column_stack([np.cos(angles), np.sin(angles)])
        else:
            pts = rng.uniform(0.1, 0.9, size=(n_pts, 2))
        strokes.append(pts)
        closed.append(loop)
    return Prototype(tuple(strokes), tuple(closed))


def _segment_distance(px, py, a, b):
    ab = b - a
    denom = float(ab @ ab) or 1.0
    t = np.clip(((px - a[0]) * ab[0] + (py - a[1]) * ab[1]) / denom, 0.0, 1.0)
    dx = px - (a[0] + t * ab[0])
    dy = py - (a[1] + t * ab[1])
    return np.hypot(dx, dy)


def render_sample(proto: Prototype, rng: np.random.Generator, size: int = CANVAS) -> GrayImage:
    angle = rng.uniform(-0.3, 0.3)
    scale = rng.uniform(0.75, 1.1)
    shear = rng.uniform(-0.3, 0.3)
    rot = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
    affine = scale * rot @ np.array([[1.0, shear], [0.0, 1.0]])
    width = rng.uniform(2.0, 4.0)

    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    dist = np.full((size, size), np.inf)
    for pts, loop in zip(proto.strokes, proto.closed):
        p = pts + rng.normal(0.0, 0.07, size=pts.shape)
        p = (p - 0.5) @ affine.T + 0.5
        p = p * (size - 1)
        if loop:
            p = np.vstack([p, p[:1]])
        for a, b in zip(p[:-1], p[1:]):
            dist = np.minimum(dist, _segment_distance(xx, yy, a, b))
    ink = dist <= width / 2
    gray = np.where(ink, 40.0, 215.0) + rng.normal(0.0, 12.0, size=(size, size))
    return GrayImage(np.clip(np.round(gray), 0, 255).astype(np.uint8))


def generate_corpus(out_dir, classes: int, per_class: int, seed: int) -> Path:
    """Write ``classes * per_class`` PGM files and a ``manifest.csv``; return the manifest path."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    protos = [make_prototype(seed, k) for k in range(classes)]
    rng = np.random.Generator(np.random.PCG64([seed, classes, per_class]))
    rows = []
    for i in range(per_class):
        for k, proto in enumerate(protos):
            name = f"c{k:02d}_{i:05d}.pgm"
            write_pnm(out / name, render_sample(proto, rng))
            rows.append((name, str(k)))
    manifest = out / "manifest.csv"
    with manifest.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["path", "label"])
        w.writerows(rows)
    return manifest
