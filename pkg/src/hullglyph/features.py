"""The 125-value convex-hull bay-attribute feature vector.

Every region (the whole glyph, then the four sub-images cut at the hull
centroid) yields 25 values: six per scan direction, in the order top,
bottom, left, right, followed by the hull-perimeter count.

Per direction, each scanline that crosses the hull gets a distance ``d_cp``
from the pixel where the scan enters the hull to the first ink pixel.  The
six values are

    F1  maximum d_cp
    F2  number of scanlines with d_cp > 0
    F3  mean d_cp over those scanlines
    F4  mean scanline index over those scanlines
    F5  number of scanlines with d_cp == 0
    F6  number of distinct bays crossed by the scans' gap segments
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .deficiency import DeficiencyMap, analyze_deficiency
from .errors import EmptyGlyph
from .geometry import HullMask, Point, hull_center, hull_of_mask, rasterize_hull
from .imaging import BinaryImage

N_DIRECTIONAL = 6
REGION_SIZE = 4 * N_DIRECTIONAL + 1
N_REGIONS = 5
N_FEATURES = N_REGIONS * REGION_SIZE


class ScanDirection(enum.Enum):
    FROM_TOP = "top"
    FROM_BOTTOM = "bottom"
    FROM_LEFT = "left"
    FROM_RIGHT = "right"

    def orient(self, a: np.ndarray) -> np.ndarray:
        """View of ``a`` in which this scan runs along axis 1 from index 0."""
        if self is ScanDirection.FROM_LEFT:
            return a
        if self is ScanDirection.FROM_RIGHT:
            return a[:, ::-1]
        if self is ScanDirection.FROM_TOP:
            return a.T
        return a.T[:, ::-1]

    def to_point(self, line: int, pos: int, width: int, height: int) -> Point:
        if self is ScanDirection.FROM_LEFT:
            return Point(pos, line)
        if self is ScanDirection.FROM_RIGHT:
            return Point(width - 1 - pos, line)
        if self is ScanDirection.FROM_TOP:
            return Point(line, pos)
        return Point(line, height - 1 - pos)


DIRECTIONS = tuple(ScanDirection)


@dataclass(frozen=True)
class ScanEntry:
    """One scanline.  Positions count pixels along the scan from the image side."""

    index: int
    intersects_hull: bool
    d_cp: int | None = None
    entry_pixel: Point | None = None
    entry_pos: int | None = None
    exit_pos: int | None = None
    reaches_object: bool = False

    @property
    def gap_length(self) -> int:
        """Non-ink hull pixels traversed before the scan meets ink or leaves the hull."""
        if not self.intersects_hull:
            return 0
        return self.d_cp if self.reaches_object else self.d_cp + 1


@dataclass(frozen=True)
class DirectionalProfile:
    direction: ScanDirection
    entries: tuple[ScanEntry, ...]

    def intersecting(self):
        return [e for e in self.entries if e.intersects_hull]


def directional_profile(img, mask: HullMask, direction: ScanDirection) -> DirectionalProfile:
    """d_cp for every scanline of ``direction``.

    A scanline that crosses the hull without meeting ink records the hull
    chord (exit minus entry) as its d_cp and ``reaches_object=False``.
    """
    ink = _pixels(img)
    h, w = ink.shape
    region = direction.orient(mask.region)
    ink_o = direction.orient(ink)
    n_lines, n = region.shape
    has_hull = region.any(axis=1).tolist()
    has_ink = ink_o.any(axis=1).tolist()
    entry = region.argmax(axis=1).tolist()
    exit_ = (n - 1 - region[:, ::-1].argmax(axis=1)).tolist()
    first = ink_o.argmax(axis=1).tolist()

    entries = []
    for line in range(n_lines):
        if not has_hull[line]:
            entries.append(ScanEntry(line, False))
            continue
        e, x = entry[line], exit_[line]
        reaches = has_ink[line]
        d = first[line] - e if reaches else x - e
        entries.append(ScanEntry(line, True, d, direction.to_point(line, e, w, h),
                                 e, x, reaches))
    return DirectionalProfile(direction, tuple(entries))


def visible_bays(profile: DirectionalProfile, dmap: DeficiencyMap) -> set[int]:
    """Ids of bay components crossed by some scanline's gap segment."""
    ids = profile.direction.orient(dmap.bay_ids)
    seen = set()
    for e in profile.entries:
        if e.gap_length:
            seen.update(ids[e.index, e.entry_pos:e.entry_pos + e.gap_length].tolist())
    seen.discard(0)
    return seen


def directional_features(profile: DirectionalProfile, dmap: DeficiencyMap) -> list[float]:
    hits = profile.intersecting()
    positive = [e for e in hits if e.d_cp > 0]
    f1 = max((e.d_cp for e in positive), default=0)
    f2 = len(positive)
    f3 = sum(e.d_cp for e in positive) / f2 if f2 else 0.0
    f4 = sum(e.index for e in positive) / f2 if f2 else 0.0
    f5 = len(hits) - f2
    f6 = len(visible_bays(profile, dmap))
    return [float(f1), float(f2), f3, f4, float(f5), float(f6)]


def perimeter_feature(profiles) -> float:
    """Hull entry pixels with d_cp == 0, summed over the four sides."""
    return float(sum(
        sum(1 for e in p.entries if e.intersects_hull and e.d_cp == 0)
        for p in profiles))


def region_features(img) -> np.ndarray:
    """25 features of one region; all zeros when its hull is degenerate."""
    ink = _pixels(img)
    out = np.zeros(REGION_SIZE)
    if ink.size == 0 or not ink.any():
        return out
    hull = hull_of_mask(ink)
    if hull.degenerate:
        return out
    h, w = ink.shape
    mask = rasterize_hull(hull, w, h)
    dmap = analyze_deficiency(ink, mask)
    profiles = [directional_profile(ink, mask, d) for d in DIRECTIONS]
    for i, p in enumerate(profiles):
        out[i * N_DIRECTIONAL:(i + 1) * N_DIRECTIONAL] = directional_features(p, dmap)
    out[-1] = perimeter_feature(profiles)
    return out


def round_half_toward_zero(x: float) -> int:
    return int(math.copysign(math.ceil(abs(x) - 0.5), x))


def split_point(img) -> tuple[int, int] | None:
    """``(col, row)`` where the glyph is cut, or None for degenerate hulls."""
    ink = _pixels(img)
    if not ink.any():
        return None
    hull = hull_of_mask(ink)
    if hull.degenerate:
        return None
    cx, cy = hull_center(hull)
    return round_half_toward_zero(cx), round_half_toward_zero(cy)


def quadrant_split(img) -> list[BinaryImage]:
    """Cut at the rounded hull centroid into [top-left, top-right, bottom-left, bottom-right].

    Each sub-image is a crop with its own origin, so a cut on the first row
    or column can produce a zero-height or zero-width quadrant.  A glyph
    with a degenerate hull gives four blank images of the original size.
    """
    ink = _pixels(img)
    cut = split_point(ink)
    if cut is None:
        return [BinaryImage(np.zeros_like(ink)) for _ in range(4)]
    c, r = cut
    return [
        BinaryImage(ink[:r, :c]),
        BinaryImage(ink[:r, c:]),
        BinaryImage(ink[r:, :c]),
        BinaryImage(ink[r:, c:]),
    ]


def extract_features(img) -> np.ndarray:
    """125 values: the whole glyph, then the four quadrants."""
    ink = _pixels(img)
    if not ink.any():
        raise EmptyGlyph("feature extraction on an image with no object pixels")
    parts = [region_features(ink)]
    parts += [region_features(q) for q in quadrant_split(ink)]
    return np.concatenate(parts)


def feature_names() -> list[str]:
    names = []
    for region in ("whole", "q1", "q2", "q3", "q4"):
        for d in DIRECTIONS:
            names += [f"{region}.{d.value}.F{k}" for k in range(1, N_DIRECTIONAL + 1)]
        names.append(f"{region}.perimeter")
    return names


def _pixels(img) -> np.ndarray:
    return np.asarray(getattr(img, "pixels", img), dtype=bool)
