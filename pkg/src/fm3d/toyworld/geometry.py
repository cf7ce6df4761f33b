"""Analytic face geometry shared by the renderer and the landmark oracle.

The head is a superellipse in a local (u, v) frame. Pose maps that frame
into the image: yaw/pitch shift the head center and foreshorten the axes
by cos(yaw) / cos(pitch), roll rotates in-plane. Identity coefficients
drive skin tone and head/feature geometry through a fixed affine map;
expression coefficients drive eye openness, brows, and mouth shape the
same way. Every feature magnitude below is hard-bounded: the affine mixing
rows are L1-normalized so a clipped coefficient vector (|x| <= 3) can move
a feature by at most its stated span.

Coordinates: image positions live in [0, 1]^2 with y pointing down; local
(u, v) is the unit-superellipse frame of the head.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..params import CLIP_SIGMA, FaceParams

# pose-to-center displacement gains
CENTER_X_PER_YAW = 0.14
CENTER_Y_PER_PITCH = 0.12

_MIX_SEED_ID = 761204
_MIX_SEED_EXP = 918372

# name, neutral value, maximum span under clipped coefficients
ID_FEATURE_SPEC = (
    ("skin_r", 0.74, 0.14),
    ("skin_g", 0.60, 0.14),
    ("skin_b", 0.50, 0.14),
    ("head_a", 0.24, 0.035),  # horizontal semi-axis at zero yaw
    ("aspect", 1.30, 0.10),  # vertical semi-axis = head_a * aspect
    ("eye_u", 0.42, 0.06),
    ("eye_v", -0.28, 0.05),
    ("eye_r", 0.105, 0.022),
    ("iris", 0.20, 0.10),
    ("mouth_w", 0.40, 0.08),
    ("mouth_v", 0.46, 0.06),
    ("lip_tone", 0.50, 0.13),
    ("nose_v", 0.10, 0.05),
    ("nose_s", 0.10, 0.02),
    ("brow_gap", 0.13, 0.03),
    ("brow_tone", 0.28, 0.12),
    ("blush", 0.12, 0.09),
    ("jaw_exp", 2.10, 0.35),  # superellipse exponent of the head outline
)

EXP_FEATURE_SPEC = (
    ("eye_open_l", 0.60, 0.38),
    ("eye_open_r", 0.60, 0.38),
    ("mouth_curve", 0.0, 0.045),
    ("mouth_h", 0.055, 0.035),
    ("brow_raise_l", 0.0, 0.05),
    ("brow_raise_r", 0.0, 0.05),
    ("mouth_shift", 0.0, 0.04),
    ("eye_w", 1.0, 0.18),
)


def _mixing_matrix(seed, n_features, n_coeffs, spans):
    rng = np.random.default_rng(seed)
    mat = rng.standard_normal((n_features, n_coeffs))
    l1 = np.abs(mat).sum(axis=1, keepdims=True)
    return mat / l1 * (np.asarray(spans)[:, None] / CLIP_SIGMA)


@lru_cache(maxsize=8)
def _id_mixing(d_id):
    spans = [s for _, _, s in ID_FEATURE_SPEC]
    return _mixing_matrix(_MIX_SEED_ID, len(ID_FEATURE_SPEC), d_id, spans)


@lru_cache(maxsize=8)
def _exp_mixing(d_exp):
    spans = [s for _, _, s in EXP_FEATURE_SPEC]
    return _mixing_matrix(_MIX_SEED_EXP, len(EXP_FEATURE_SPEC), d_exp, spans)


def identity_features(alpha) -> dict:
    """Affine map from identity coefficients to named appearance features."""
    alpha = np.asarray(alpha, dtype=np.float64)
    base = np.array([b for _, b, _ in ID_FEATURE_SPEC])
    vals = base + _id_mixing(alpha.shape[0]) @ alpha
    return {name: float(v) for (name, _, _), v in zip(ID_FEATURE_SPEC, vals)}


def expression_features(beta) -> dict:
    beta = np.asarray(beta, dtype=np.float64)
    base = np.array([b for _, b, _ in EXP_FEATURE_SPEC])
    vals = base + _exp_mixing(beta.shape[0]) @ beta
    return {name: float(v) for (name, _, _), v in zip(EXP_FEATURE_SPEC, vals)}


@dataclass(frozen=True)
class FaceGeometry:
    """Resolved pose transform plus appearance features for one parameter set."""

    center: tuple
    semi_axes: tuple  # (a, b) after foreshortening
    roll: float
    feats: dict

    @property
    def jaw_exp(self) -> float:
        return self.feats["jaw_exp"]


def face_geometry(p: FaceParams) -> FaceGeometry:
    feats = identity_features(p.alpha)
    feats.update(expression_features(p.beta))
    yaw, pitch, roll = float(p.delta[0]), float(p.delta[1]), float(p.delta[2])
    a0 = feats["head_a"]
    b0 = a0 * feats["aspect"]
    center = (0.5 + CENTER_X_PER_YAW * np.sin(yaw), 0.5 + CENTER_Y_PER_PITCH * np.sin(pitch))
    axes = (a0 * np.cos(yaw), b0 * np.cos(pitch))
    return FaceGeometry(center=center, semi_axes=axes, roll=roll, feats=feats)


def local_to_image(geom: FaceGeometry, u, v):
    """Map local face coordinates to image coordinates."""
    a, b = geom.semi_axes
    c, s = np.cos(geom.roll), np.sin(geom.roll)
    du, dv = a * np.asarray(u), b * np.asarray(v)
    return geom.center[0] + c * du - s * dv, geom.center[1] + s * du + c * dv


def image_to_local(geom: FaceGeometry, x, y):
    """Inverse of `local_to_image`, vectorized over pixel grids."""
    a, b = geom.semi_axes
    c, s = np.cos(geom.roll), np.sin(geom.roll)
    dx, dy = np.asarray(x) - geom.center[0], np.asarray(y) - geom.center[1]
    return (c * dx + s * dy) / a, (-s * dx + c * dy) / b
