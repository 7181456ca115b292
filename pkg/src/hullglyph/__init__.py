"""Convex-hull bay features and a momentum-trained MLP for isolated handwritten glyphs."""
from .classifier import MlpModel, TrainConfig, evaluate, forward, init_model, predict, train
from .deficiency import DeficiencyMap, analyze_deficiency
from .features import (
    N_FEATURES,
    ScanDirection,
    directional_features,
    directional_profile,
    extract_features,
    perimeter_feature,
    quadrant_split,
    region_features,
)
from .geometry import ConvexHull, HullMask, Point, centroid, convex_hull, polygon_area, rasterize_hull
from .imaging import BinaryImage, GrayImage, NormalizationSpec, binarize, normalize_cg, object_points

__version__ = "0.1.0"
