"""Binarization and center-of-gravity size normalization."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyGlyph
from .geometry import Point


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit intensities, shape ``(height, width)``; 0 is black."""

    intensities: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.intensities)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {a.shape}")
        object.__setattr__(self, "intensities", a.astype(np.uint8, copy=False))

    @property
    def width(self) -> int:
        return self.intensities.shape[1]

    @property
    def height(self) -> int:
        return self.intensities.shape[0]


@dataclass(frozen=True, eq=False)
class BinaryImage:
    """Boolean raster, shape ``(height, width)``; True marks ink."""

    pixels: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.pixels)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {a.shape}")
        object.__setattr__(self, "pixels", a.astype(bool, copy=False))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.pixels))

    def __eq__(self, other):
        if not isinstance(other, BinaryImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    __hash__ = None

    @classmethod
    def from_strings(cls, lines, ink="#"):
        """Build from rows of text, ``ink`` characters marking object pixels."""
        return cls(np.array([[ch == ink for ch in line] for line in lines], dtype=bool))


@dataclass(frozen=True)
class NormalizationSpec:
    target_size: int = 32
    margin: int = 2

    def __post_init__(self):
        if self.margin < 0 or self.target_size - 2 * self.margin < 8:
            raise ValueError(
                f"target_size {self.target_size} with margin {self.margin} "
                "leaves less than 8 pixels")


DIGITS = NormalizationSpec(32, 2)
CHARACTERS = NormalizationSpec(64, 2)


def otsu_threshold(img: GrayImage) -> int:
    """Threshold ``t`` in 1..255 maximizing between-class variance.

    Ink is ``intensity < t``.  Ties resolve to the smallest ``t``; a
    constant image returns 128.
    """
    hist = np.bincount(img.intensities.ravel(), minlength=256).astype(np.float64)
    total = hist.sum()
    levels = np.arange(256, dtype=np.float64)
    # class 0 = intensities < t for t = 1..255
    w0 = np.cumsum(hist)[:-1]
    s0 = np.cumsum(hist * levels)[:-1]
    w1 = total - w0
    s1 = s0[-1] + hist[255] * 255 - s0
    valid = (w0 > 0) & (w1 > 0)
    if not valid.any():
        return 128
    with np.errstate(divide="ignore", invalid="ignore"):
        between = w0 * w1 * (s0 / w0 - s1 / w1) ** 2
    between[~valid] = -1.0
    return int(np.argmax(between)) + 1


def binarize(img: GrayImage, threshold: int | None = None) -> BinaryImage:
    """Dark-ink thresholding; ``threshold=None`` selects Otsu."""
    t = otsu_threshold(img) if threshold is None else threshold
    return BinaryImage(img.intensities < t)


def object_points(img: BinaryImage) -> set[Point]:
    rows, cols = np.nonzero(img.pixels)
    return {Point(int(c), int(r)) for r, c in zip(rows, cols)}


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def normalize_cg(img: BinaryImage, spec: NormalizationSpec = DIGITS) -> BinaryImage:
    """Scale the glyph's bounding box into ``target - 2*margin`` and center its CG.

    Scaling is nearest-neighbor and maps the extreme pixel coordinates of
    the box: the longer side spans ``target - 2*margin`` pixels and the
    aspect ratio of the pixel extents is kept.  The scaled glyph is then
    shifted so its center of gravity lands on the raster center
    ``(target - 1) / 2`` (offsets round half up), clamped to keep the glyph
    inside the raster.
    """
    rows, cols = np.nonzero(img.pixels)
    if rows.size == 0:
        raise EmptyGlyph("normalization of an image with no object pixels")
    r0, r1 = rows.min(), rows.max()
    c0, c1 = cols.min(), cols.max()
    box = img.pixels[r0:r1 + 1, c0:c1 + 1]
    extent = max(r1 - r0, c1 - c0)
    fit = spec.target_size - 2 * spec.margin
    scale = (fit - 1) / extent if extent else 1.0

    def resample(n):
        m = _round_half_up((n - 1) * scale) + 1
        src = np.floor(np.arange(m) / scale + 0.5).astype(int)
        return np.minimum(src, n - 1)

    glyph = box[np.ix_(resample(box.shape[0]), resample(box.shape[1]))]

    gr, gc = np.nonzero(glyph)
    center = (spec.target_size - 1) / 2
    h, w = glyph.shape
    top = min(max(_round_half_up(center - gr.mean()), 0), spec.target_size - h)
    left = min(max(_round_half_up(center - gc.mean()), 0), spec.target_size - w)
    out = np.zeros((spec.target_size, spec.target_size), dtype=bool)
    out[top:top + h, left:left + w] = glyph
    return BinaryImage(out)
