"""Analytic landmark positions, consistent with the renderer geometry."""
from __future__ import annotations

import numpy as np

from ..params import FaceParams
from .geometry import face_geometry, local_to_image

LANDMARK_NAMES = (
    "eye_center_l",
    "eye_center_r",
    "eye_outer_l",
    "eye_inner_l",
    "eye_inner_r",
    "eye_outer_r",
    "mouth_corner_l",
    "mouth_corner_r",
    "mouth_center",
    "nose_tip",
    "chin",
    "forehead",
)


def landmark_oracle(p: FaceParams) -> np.ndarray:
    """K=12 points in normalized [0,1]^2 image coordinates, (K, 2) array."""
    geom = face_geometry(p)
    f = geom.feats
    ew = f["eye_r"] * f["eye_w"]
    pts_local = [
        (-f["eye_u"], f["eye_v"]),
        (+f["eye_u"], f["eye_v"]),
        (-f["eye_u"] - ew, f["eye_v"]),
        (-f["eye_u"] + ew, f["eye_v"]),
        (+f["eye_u"] - ew, f["eye_v"]),
        (+f["eye_u"] + ew, f["eye_v"]),
        (f["mouth_shift"] - f["mouth_w"], f["mouth_v"] + f["mouth_curve"]),
        (f["mouth_shift"] + f["mouth_w"], f["mouth_v"] + f["mouth_curve"]),
        (f["mouth_shift"], f["mouth_v"]),
        (0.0, f["nose_v"]),
        (0.0, 1.0),
        (0.0, -1.0),
    ]
    out = np.empty((len(pts_local), 2), dtype=np.float64)
    for i, (u, v) in enumerate(pts_local):
        out[i] = local_to_image(geom, u, v)
    return out
