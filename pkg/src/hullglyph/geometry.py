"""Integer-grid convex hulls, polygon area/centroid, and hull rasterization.

Coordinates follow the raster convention: ``col`` grows to the right and
``row`` grows downwards.  "Counter-clockwise" means a positive shoelace sum
in ``(col, row)`` coordinates, which makes every non-degenerate hull area
positive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DegenerateHull, EmptyPointSet


class Point(NamedTuple):
    col: int
    row: int


def cross(o, a, b):
    """z-component of (a - o) x (b - o)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class ConvexHull:
    vertices: tuple[Point, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3


@dataclass(frozen=True, eq=False)
class HullMask:
    """Pixels covered by a hull: traced edge pixels and the strict interior.

    Both masks are boolean arrays of shape ``(height, width)``.
    """

    width: int
    height: int
    boundary: np.ndarray
    interior: np.ndarray

    @property
    def region(self) -> np.ndarray:
        return self.boundary | self.interior


def convex_hull(points: Iterable) -> ConvexHull:
    """Graham scan.

    The pivot is the point with the lowest row (then lowest column).  The
    remaining points are sorted by polar angle about the pivot, equal angles
    by increasing distance, and any non-left turn is popped, so collinear boundary points never survive.
    Inputs with fewer than three non-collinear points give a 1- or 2-vertex
    hull (``hull.degenerate`` is true).
    """
    pts = {(p[0], p[1]) for p in points}
    if not pts:
        raise EmptyPointSet("convex hull of an empty point set")
    pivot = min(pts, key=lambda p: (p[1], p[0]))
    pts.discard(pivot)
    px, py = pivot

    def by_angle(p):
        dx, dy = p[0] - px, p[1] - py
        # every other point has dy > 0, or dy == 0 and dx > 0; the angle
        # grows as dx/dy shrinks.  Equal rationals divide to equal floats.
        slope = -math.inf if dy == 0 else -dx / dy
        return slope, dx * dx + dy * dy

    stack = [pivot]
    for p in sorted(pts, key=by_angle):
        while len(stack) > 1 and cross(stack[-2], stack[-1], p) <= 0:
            stack.pop()
        stack.append(p)
    return ConvexHull(tuple(Point(*p) for p in stack))


def polygon_area(hull: ConvexHull) -> float:
    """Shoelace area, positive for CCW order; 0 for hulls with < 3 vertices."""
    v = hull.vertices
    if len(v) < 3:
        return 0.0
    total = 0
    for i in range(len(v)):
        x0, y0 = v[i]
        x1, y1 = v[(i + 1) % len(v)]
        total += x0 * y1 - x1 * y0
    return total / 2


def centroid(hull: ConvexHull) -> tuple[float, float]:
    """Area centroid ``(C_x, C_y)`` of the hull polygon.

    Raises DegenerateHull when the polygon has zero area; see hull_center for
    the vertex-mean fallback.
    """
    v = hull.vertices
    if len(v) < 3:
        raise DegenerateHull(f"centroid needs >= 3 vertices, got {len(v)}")
    twice_area = 0
    sx = sy = 0
    for i in range(len(v)):
        x0, y0 = v[i]
        x1, y1 = v[(i + 1) % len(v)]
        w = x0 * y1 - x1 * y0
        twice_area += w
        sx += (x0 + x1) * w
        sy += (y0 + y1) * w
    if twice_area == 0:
        raise DegenerateHull("zero-area hull")
    # 1/(6A) with A = twice_area/2
    return sx / (3 * twice_area), sy / (3 * twice_area)


def hull_center(hull: ConvexHull) -> tuple[float, float]:
    """Centroid, or the arithmetic mean of the vertices for degenerate hulls."""
    try:
        return centroid(hull)
    except DegenerateHull:
        n = len(hull.vertices)
        return (sum(p[0] for p in hull.vertices) / n,
                sum(p[1] for p in hull.vertices) / n)


def trace_line(a, b) -> list[Point]:
    """Integer midpoint (Bresenham) line from ``a`` to ``b``, both ends included."""
    x0, y0 = a
    x1, y1 = b
    dx = abs(x1 - x0)
    dy = -abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx + dy
    out = []
    while True:
        out.append(Point(x0, y0))
        if x0 == x1 and y0 == y1:
            return out
        e2 = 2 * err
        if e2 >= dy:
            err += dy
            x0 += sx
        if e2 <= dx:
            err += dx
            y0 += sy


def _scanline_interior(vertices, width, height) -> np.ndarray:
    """Even-odd fill of grid points strictly between edge crossings."""
    inside = np.zeros((height, width), dtype=bool)
    n = len(vertices)
    edges = []
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        if y0 == y1:
            continue
        if y0 > y1:
            x0, y0, x1, y1 = x1, y1, x0, y0
        edges.append((x0, y0, x1, y1))
    rows = [p[1] for p in vertices]
    for y in range(max(min(rows), 0), min(max(rows), height - 1) + 1):
        # crossing x = num / den, kept exact in integers
        xs = []
        for x0, y0, x1, y1 in edges:
            # half-open rule: count the lower endpoint only
            if y0 <= y < y1:
                den = y1 - y0
                xs.append((x0 * den + (y - y0) * (x1 - x0), den))
        xs.sort(key=lambda f: f[0] / f[1])
        for (ln, ld), (rn, rd) in zip(xs[0::2], xs[1::2]):
            lo = max(ln // ld + 1, 0)
            hi = min(-(-rn // rd) - 1, width - 1)
            if lo <= hi:
                inside[y, lo:hi + 1] = True
    return inside


def rasterize_hull(hull: ConvexHull, width: int, height: int) -> HullMask:
    v = hull.vertices
    boundary = np.zeros((height, width), dtype=bool)
    if len(v) == 1:
        edges = [(v[0], v[0])]
    else:
        edges = [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]
    for a, b in edges:
        for c, r in trace_line(a, b):
            if 0 <= c < width and 0 <= r < height:
                boundary[r, c] = True
    if len(v) >= 3:
        interior = _scanline_interior(v, width, height) & ~boundary
    else:
        interior = np.zeros_like(boundary)
    return HullMask(width, height, boundary, interior)


def hull_of_mask(pixels: np.ndarray) -> ConvexHull:
    """Hull of the True pixels of a boolean raster.

    Only the leftmost and rightmost pixel of each row can be a hull vertex,
    so the scan runs on those; the result equals the hull of all pixels.
    """
    rows = np.flatnonzero(pixels.any(axis=1))
    if rows.size == 0:
        raise EmptyPointSet("raster has no object pixels")
    sub = pixels[rows]
    first = sub.argmax(axis=1)
    last = sub.shape[1] - 1 - sub[:, ::-1].argmax(axis=1)
    pts = [(int(c), int(r)) for r, c in zip(rows, first)]
    pts += [(int(c), int(r)) for r, c in zip(rows, last)]
    return convex_hull(pts)
