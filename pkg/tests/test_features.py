import numpy as np
import pytest

from hullglyph.deficiency import analyze_deficiency
from hullglyph.errors import EmptyGlyph
from hullglyph.features import (
    DIRECTIONS, N_FEATURES, REGION_SIZE, ScanDirection, directional_features,
    directional_profile, extract_features, feature_names, perimeter_feature,
    quadrant_split, region_features, round_half_toward_zero,
)
from hullglyph.geometry import convex_hull, hull_of_mask, rasterize_hull
from hullglyph.imaging import BinaryImage
from oracles import random_blob

C_SHAPE = ["###..", "#....", "#....", "#....", "###.."]
BLOCK = {d: i * 6 for i, d in enumerate(DIRECTIONS)}


def setup(img):
    ink = img.pixels
    mask = rasterize_hull(hull_of_mask(ink), img.width, img.height)
    return mask, analyze_deficiency(img, mask)


def test_c_shape_profile_from_right():
    img = BinaryImage.from_strings(C_SHAPE)
    mask, _ = setup(img)
    prof = directional_profile(img, mask, ScanDirection.FROM_RIGHT)
    assert [e.d_cp for e in prof.entries] == [0, 2, 2, 2, 0]
    assert all(e.entry_pixel.col == 2 for e in prof.entries)


def test_c_shape_features_from_right():
    img = BinaryImage.from_strings(C_SHAPE)
    mask, dmap = setup(img)
    prof = directional_profile(img, mask, ScanDirection.FROM_RIGHT)
    assert directional_features(prof, dmap) == [2.0, 3.0, 2.0, 2.0, 2.0, 1.0]


def test_c_shape_other_directions():
    img = BinaryImage.from_strings(C_SHAPE)
    mask, dmap = setup(img)
    left = directional_profile(img, mask, ScanDirection.FROM_LEFT)
    assert directional_features(left, dmap) == [0.0, 0.0, 0.0, 0.0, 5.0, 0.0]
    top = directional_profile(img, mask, ScanDirection.FROM_TOP)
    assert directional_features(top, dmap) == [0.0, 0.0, 0.0, 0.0, 3.0, 0.0]


def test_scanlines_missing_hull_have_no_distance():
    img = BinaryImage.from_strings(C_SHAPE)
    mask, _ = setup(img)
    prof = directional_profile(img, mask, ScanDirection.FROM_TOP)
    missing = [e.index for e in prof.entries if not e.intersects_hull]
    assert missing == [3, 4]
    assert all(prof.entries[i].d_cp is None for i in missing)


@pytest.mark.parametrize("direction", list(ScanDirection))
def test_solid_rectangle(direction):
    ink = np.zeros((10, 12), bool)
    ink[2:6, 3:10] = True
    img = BinaryImage(ink)
    mask, dmap = setup(img)
    f = directional_features(directional_profile(img, mask, direction), dmap)
    lines = 4 if direction in (ScanDirection.FROM_LEFT, ScanDirection.FROM_RIGHT) else 7
    assert f == [0.0, 0.0, 0.0, 0.0, float(lines), 0.0]


def test_chord_scanline_without_ink():
    # a V: the middle column crosses the hull but meets no ink from the top
    img = BinaryImage.from_strings([
        "#...#",
        ".#.#.",
        "..#..",
    ])
    mask, dmap = setup(img)
    prof = directional_profile(img, mask, ScanDirection.FROM_TOP)
    e = prof.entries[2]
    assert e.reaches_object and e.d_cp == 2
    bottom = directional_profile(img, mask, ScanDirection.FROM_BOTTOM)
    # from below, column 2 starts on ink
    assert bottom.entries[2].d_cp == 0


def test_hull_crossing_without_ink_uses_chord():
    ink = np.zeros((5, 5), bool)
    ink[0, 0] = ink[0, 4] = ink[4, 0] = ink[4, 4] = True
    img = BinaryImage(ink)
    mask, dmap = setup(img)
    prof = directional_profile(img, mask, ScanDirection.FROM_LEFT)
    mid = prof.entries[2]
    assert not mid.reaches_object
    assert mid.d_cp == 4
    f = directional_features(prof, dmap)
    assert f[:2] == [4.0, 3.0]
    assert f[5] == 1.0


def test_perimeter_examples():
    img = BinaryImage(np.ones((3, 3), bool))
    mask, _ = setup(img)
    assert perimeter_feature([directional_profile(img, mask, d) for d in DIRECTIONS]) == 12
    single = np.zeros((4, 4), bool)
    single[1, 2] = True
    img = BinaryImage(single)
    mask = rasterize_hull(convex_hull([(2, 1)]), 4, 4)
    assert perimeter_feature([directional_profile(img, mask, d) for d in DIRECTIONS]) == 4


def test_region_features_degenerate_and_empty():
    assert not region_features(BinaryImage(np.zeros((6, 6)))).any()
    line = np.zeros((6, 6), bool)
    line[2, :] = True
    assert not region_features(BinaryImage(line)).any()
    assert not region_features(BinaryImage(np.zeros((0, 4)))).any()


def test_region_features_solid_square():
    ink = np.zeros((12, 12), bool)
    ink[3:8, 4:9] = True
    f = region_features(BinaryImage(ink))
    assert f.shape == (REGION_SIZE,)
    for start in BLOCK.values():
        assert list(f[start:start + 6]) == [0, 0, 0, 0, 5, 0]
    assert f[-1] == 20


def test_region_invariants_on_random_blobs(rng):
    for _ in range(200):
        ink = random_blob(rng, size=int(rng.integers(6, 20)))
        img = BinaryImage(ink)
        if not ink.any() or hull_of_mask(ink).degenerate:
            continue
        mask, dmap = setup(img)
        assert not (ink & ~mask.region).any()
        profiles = [directional_profile(img, mask, d) for d in DIRECTIONS]
        total_f5 = 0
        for prof in profiles:
            f1, f2, f3, f4, f5, f6 = directional_features(prof, dmap)
            assert f2 + f5 == len(prof.intersecting())
            if f2:
                assert f1 >= f3 > 0
            else:
                assert f3 == 0
            assert f6 <= dmap.n_bays
            total_f5 += f5
            for e in prof.intersecting():
                assert e.d_cp >= 0
                if e.d_cp == 0:
                    assert ink[e.entry_pixel.row, e.entry_pixel.col]
        feats = region_features(img)
        assert feats[-1] == total_f5 == perimeter_feature(profiles)


def test_round_half_toward_zero():
    assert [round_half_toward_zero(x) for x in (2.5, 2.51, 2.49, -2.5, -2.51, 0.5, 3.0)] == \
        [2, 3, 2, -2, -3, 0, 3]


def test_quadrant_split_symmetric_saltire():
    ink = np.zeros((7, 7), bool)
    for i in range(7):
        ink[i, i] = ink[i, 6 - i] = True
    ink[3, 3] = False
    quads = quadrant_split(BinaryImage(ink))
    assert [q.count for q in quads] == [3, 3, 3, 3]
    assert [q.pixels.shape for q in quads] == [(3, 3), (3, 4), (4, 3), (4, 4)]


def test_quadrant_split_partition_and_determinism(rng):
    for _ in range(50):
        ink = random_blob(rng, size=20)
        if not ink.any() or hull_of_mask(ink).degenerate:
            continue
        quads = quadrant_split(BinaryImage(ink))
        assert sum(q.count for q in quads) == ink.sum()
        again = quadrant_split(BinaryImage(ink.copy()))
        assert all(a == b for a, b in zip(quads, again))


def test_quadrant_split_degenerate():
    ink = np.zeros((5, 5), bool)
    ink[1, 1:4] = True
    quads = quadrant_split(BinaryImage(ink))
    assert len(quads) == 4 and all(q.count == 0 for q in quads)


def test_extract_features_layout(rng):
    for _ in range(30):
        ink = np.zeros((32, 32), bool)
        ink[6:26, 6:26] = random_blob(rng, size=20)
        if not ink.any():
            continue
        vec = extract_features(BinaryImage(ink))
        assert vec.shape == (N_FEATURES,)
        assert np.isfinite(vec).all() and (vec >= 0).all()
        assert np.array_equal(vec, extract_features(BinaryImage(ink.copy())))
    assert len(feature_names()) == N_FEATURES == 125
    assert feature_names()[:7] == [f"whole.top.F{k}" for k in range(1, 7)] + ["whole.bottom.F1"]
    assert feature_names()[24] == "whole.perimeter"


def test_extract_features_empty():
    with pytest.raises(EmptyGlyph):
        extract_features(BinaryImage(np.zeros((32, 32))))


def test_c_shape_embedded_in_frame():
    ink = np.zeros((32, 32), bool)
    ink[10:15, 13:18] = BinaryImage.from_strings(C_SHAPE).pixels
    vec = extract_features(BinaryImage(ink))
    right = vec[BLOCK[ScanDirection.FROM_RIGHT]:BLOCK[ScanDirection.FROM_RIGHT] + 6]
    assert list(right) == [2.0, 3.0, 2.0, 12.0, 2.0, 1.0]
    # zero-d_cp scanlines: top 3, bottom 3, left 5, right 2
    assert vec[24] == 13
