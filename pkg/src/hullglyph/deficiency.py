"""Bays and lakes: the convex deficiency of a binary glyph.

Deficiency pixels are the hull pixels (traced boundary plus interior) that
are not ink.  They are grouped into 4-connected components; a component
that contains a non-ink pixel of the traced hull boundary opens onto the
hull perimeter and is a bay, every other component is sealed off by ink
and is a lake.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .geometry import HullMask, Point

EXTERIOR, OBJECT, BAY, LAKE = 0, 1, 2, 3

_FOUR = ndimage.generate_binary_structure(2, 1)


@dataclass(frozen=True, eq=False)
class DeficiencyMap:
    """Per-pixel labels plus component indices.

    ``labels`` holds EXTERIOR/OBJECT/BAY/LAKE codes.  ``bay_ids`` and
    ``lake_ids`` number the components from 1 (0 where the pixel is not in
    a component of that kind).
    """

    labels: np.ndarray
    bay_ids: np.ndarray
    lake_ids: np.ndarray
    n_bays: int
    n_lakes: int

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def bay_components(self) -> list[set[Point]]:
        return _components(self.bay_ids, self.n_bays)

    @property
    def lake_components(self) -> list[set[Point]]:
        return _components(self.lake_ids, self.n_lakes)


def _components(ids, n):
    out = [set() for _ in range(n)]
    rows, cols = np.nonzero(ids)
    for r, c in zip(rows, cols):
        out[ids[r, c] - 1].add(Point(int(c), int(r)))
    return out


def analyze_deficiency(img, mask: HullMask) -> DeficiencyMap:
    """Label a BinaryImage (or boolean ink array) against its hull ``mask``."""
    ink = np.asarray(getattr(img, "pixels", img), dtype=bool)
    deficit = mask.region & ~ink
    comp, n = ndimage.label(deficit, structure=_FOUR)

    touching = np.unique(comp[mask.boundary & deficit])
    is_bay = np.zeros(n + 1, dtype=bool)
    is_bay[touching] = True
    is_bay[0] = False

    # renumber bays and lakes separately, keeping scan order of first pixel
    bay_num = np.zeros(n + 1, dtype=np.int32)
    lake_num = np.zeros(n + 1, dtype=np.int32)
    bay_num[1:][is_bay[1:]] = np.arange(1, int(is_bay[1:].sum()) + 1)
    lake_num[1:][~is_bay[1:]] = np.arange(1, int((~is_bay[1:]).sum()) + 1)
    bay_ids = bay_num[comp]
    lake_ids = lake_num[comp]

    labels = np.full(ink.shape, EXTERIOR, dtype=np.uint8)
    labels[ink] = OBJECT
    labels[bay_ids > 0] = BAY
    labels[lake_ids > 0] = LAKE
    return DeficiencyMap(labels, bay_ids, lake_ids,
                         int(bay_num.max()), int(lake_num.max()))


LEGEND = {EXTERIOR: "0", OBJECT: "2", BAY: "+", LAKE: "o"}


def render_ascii(dmap: DeficiencyMap, mask: HullMask) -> str:
    """ASCII label grid: '1' non-ink hull boundary, '2' ink, '+' bay, 'o' lake, '0' outside."""
    lines = []
    for r in range(dmap.height):
        row = []
        for c in range(dmap.width):
            code = dmap.labels[r, c]
            if code != OBJECT and mask.boundary[r, c]:
                row.append("1")
            else:
                row.append(LEGEND[int(code)])
        lines.append("".join(row))
    return "\n".join(lines)
