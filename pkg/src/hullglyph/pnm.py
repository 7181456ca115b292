"""Netpbm reading (P1, P2, P4, P5) and writing (P4, P5)."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import FormatError
from .imaging import BinaryImage, GrayImage, binarize


def _tokens(data: bytes, start: int, count: int):
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    out = []
    i = start
    while len(out) < count:
        if i >= len(data):
            raise FormatError("truncated header")
        ch = data[i:i + 1]
        if ch == b"#":
            while i < len(data) and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
        elif ch.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
                j += 1
            out.append(data[i:j])
            i = j
    return out, i


def parse_pnm(data: bytes) -> GrayImage | BinaryImage:
    magic = data[:2]
    if magic not in (b"P1", b"P2", b"P4", b"P5"):
        raise FormatError(f"unsupported magic number {magic!r}")
    bitmap = magic in (b"P1", b"P4")
    try:
        header, pos = _tokens(data, 2, 2 if bitmap else 3)
        width, height = int(header[0]), int(header[1])
        maxval = 1 if bitmap else int(header[2])
    except ValueError as exc:
        raise FormatError(f"bad header: {exc}") from None
    if width <= 0 or height <= 0 or not 0 < maxval < 65536:
        raise FormatError(f"bad dimensions {width}x{height} or maxval {maxval}")

    if magic == b"P1":
        digits = [c for c in data[pos:] if c in b"01"]
        if len(digits) < width * height:
            raise FormatError("truncated P1 raster")
        bits = np.array(digits[:width * height], dtype=np.uint8) == ord("1")
        return BinaryImage(bits.reshape(height, width))
    if magic == b"P2":
        try:
            values = np.array(data[pos:].split()[:width * height], dtype=np.int64)
        except ValueError:
            raise FormatError("non-numeric P2 raster") from None
        if values.size < width * height:
            raise FormatError("truncated P2 raster")
        return GrayImage(_to_8bit(values.reshape(height, width), maxval))

    raw = data[pos + 1:]  # exactly one whitespace byte follows the header
    if magic == b"P4":
        stride = (width + 7) // 8
        if len(raw) < stride * height:
            raise FormatError("truncated P4 raster")
        packed = np.frombuffer(raw[:stride * height], dtype=np.uint8).reshape(height, stride)
        return BinaryImage(np.unpackbits(packed, axis=1)[:, :width].astype(bool))
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
    n = width * height * dtype.itemsize
    if len(raw) < n:
        raise FormatError("truncated P5 raster")
    values = np.frombuffer(raw[:n], dtype=dtype).reshape(height, width)
    return GrayImage(_to_8bit(values.astype(np.int64), maxval))


def _to_8bit(values, maxval):
    if maxval == 255:
        return values.astype(np.uint8)
    return np.clip(np.round(values * 255.0 / maxval), 0, 255).astype(np.uint8)


def read_pnm(path) -> GrayImage | BinaryImage:
    return parse_pnm(Path(path).read_bytes())


def read_binary(path, threshold=None) -> BinaryImage:
    """Read any supported file as a binary image, thresholding gray input."""
    img = read_pnm(path)
    if isinstance(img, GrayImage):
        return binarize(img, threshold)
    return img


def encode_pbm(img: BinaryImage) -> bytes:
    packed = np.packbits(img.pixels.astype(np.uint8), axis=1)
    return b"P4\n%d %d\n" % (img.width, img.height) + packed.tobytes()


def encode_pgm(img: GrayImage) -> bytes:
    return b"P5\n%d %d\n255\n" % (img.width, img.height) + img.intensities.tobytes()


def write_pnm(path, img: GrayImage | BinaryImage) -> None:
    data = encode_pbm(img) if isinstance(img, BinaryImage) else encode_pgm(img)
    Path(path).write_bytes(data)
