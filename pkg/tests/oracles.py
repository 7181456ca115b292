"""Brute-force reference implementations the tests compare against.

None of these share code with the package beyond plain data types.
"""
from collections import deque

import numpy as np


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def gift_wrap(points):
    """Jarvis march; returns the set of strict hull vertices."""
    pts = sorted({(p[0], p[1]) for p in points})
    if len(pts) <= 2:
        return set(pts)
    start = min(pts, key=lambda p: (p[1], p[0]))
    hull = []
    p = start
    while True:
        hull.append(p)
        q = None
        for r in pts:
            if r == p:
                continue
            if q is None:
                q = r
                continue
            c = _cross(p, q, r)
            # r is clockwise of p->q, or collinear and farther: take r
            if c < 0 or (c == 0 and _dist2(p, r) > _dist2(p, q)):
                q = r
        p = q
        if p == start or len(hull) > len(pts):
            break
    if all(_cross(hull[0], hull[1], r) == 0 for r in pts):
        # all collinear: the two extremes
        return {hull[0], hull[1]}
    return set(hull)


def _dist2(a, b):
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def fan_area_centroid(vertices):
    """Area and centroid by summing triangles (v0, vi, vi+1)."""
    v0 = vertices[0]
    area = 0.0
    cx = cy = 0.0
    for a, b in zip(vertices[1:-1], vertices[2:]):
        t = 0.5 * ((a[0] - v0[0]) * (b[1] - v0[1]) - (a[1] - v0[1]) * (b[0] - v0[0]))
        area += t
        cx += t * (v0[0] + a[0] + b[0]) / 3.0
        cy += t * (v0[1] + a[1] + b[1]) / 3.0
    return area, (cx / area, cy / area)


def inside_or_on(vertices, p):
    n = len(vertices)
    return all(_cross(vertices[i], vertices[(i + 1) % n], p) >= 0 for i in range(n))


def strictly_inside(vertices, p):
    n = len(vertices)
    return all(_cross(vertices[i], vertices[(i + 1) % n], p) > 0 for i in range(n))


def flood_bays(ink, region, boundary):
    """BFS from every non-ink boundary pixel through non-ink hull pixels.

    Returns boolean arrays (bay, lake).
    """
    deficit = region & ~ink
    bay = np.zeros_like(deficit)
    q = deque()
    for r, c in zip(*np.nonzero(boundary & deficit)):
        bay[r, c] = True
        q.append((r, c))
    h, w = deficit.shape
    while q:
        r, c = q.popleft()
        for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            rr, cc = r + dr, c + dc
            if 0 <= rr < h and 0 <= cc < w and deficit[rr, cc] and not bay[rr, cc]:
                bay[rr, cc] = True
                q.append((rr, cc))
    return bay, deficit & ~bay


def count_components(mask):
    """4-connected component count by BFS."""
    seen = np.zeros_like(mask)
    h, w = mask.shape
    n = 0
    for r0, c0 in zip(*np.nonzero(mask)):
        if seen[r0, c0]:
            continue
        n += 1
        seen[r0, c0] = True
        q = deque([(r0, c0)])
        while q:
            r, c = q.popleft()
            for dr, dc in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                rr, cc = r + dr, c + dc
                if 0 <= rr < h and 0 <= cc < w and mask[rr, cc] and not seen[rr, cc]:
                    seen[rr, cc] = True
                    q.append((rr, cc))
    return n


def naive_forward(w1, w2, x):
    """Double-loop matrix products with sigmoid units (bias in the last column)."""
    def sig(z):
        return 1.0 / (1.0 + np.exp(-z))

    h = []
    for j in range(w1.shape[0]):
        s = w1[j, -1]
        for i in range(len(x)):
            s += w1[j, i] * x[i]
        h.append(sig(s))
    o = []
    for k in range(w2.shape[0]):
        s = w2[k, -1]
        for j in range(len(h)):
            s += w2[k, j] * h[j]
        o.append(sig(s))
    return np.array(h), np.array(o)


def otsu_exhaustive(values):
    """All thresholds t (ink = value < t) attaining the maximal between-class variance."""
    values = np.asarray(values, dtype=np.float64).ravel()
    best, arg = -1.0, []
    for t in range(1, 256):
        a, b = values[values < t], values[values >= t]
        if a.size == 0 or b.size == 0:
            continue
        wa, wb = a.size / values.size, b.size / values.size
        var = wa * wb * (a.mean() - b.mean()) ** 2
        if var > best + 1e-9 * max(best, 1.0):
            best, arg = var, [t]
        elif abs(var - best) <= 1e-9 * max(best, 1.0):
            arg.append(t)
    return arg


def random_blob(rng, size=16):
    """Random ink raster: a few filled disks and thick segments, or sparse noise."""
    kind = rng.integers(3)
    yy, xx = np.mgrid[0:size, 0:size]
    if kind == 0:
        return rng.random((size, size)) < rng.uniform(0.2, 0.6)
    ink = np.zeros((size, size), dtype=bool)
    for _ in range(rng.integers(1, 5)):
        if kind == 1:
            cx, cy = rng.uniform(0, size, 2)
            r = rng.uniform(1, size / 3)
            ink |= (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r
        else:
            a, b = rng.uniform(0, size - 1, (2, 2))
            t = np.clip(((xx - a[0]) * (b[0] - a[0]) + (yy - a[1]) * (b[1] - a[1]))
                        / max(float((b - a) @ (b - a)), 1e-9), 0, 1)
            d = np.hypot(xx - a[0] - t * (b[0] - a[0]), yy - a[1] - t * (b[1] - a[1]))
            ink |= d <= rng.uniform(0.5, 2.0)
    return ink
