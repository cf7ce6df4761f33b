"""Procedural face renderer: parameters in, shaded face on black out.

The face is painted in the local superellipse frame resolved by
`face_geometry`, so pose rigidly moves/squashes every feature. Shading is
a two-band spherical-harmonics style term over a synthetic sphere normal
map, clamped to stay strictly positive so the face region never quantizes
to pure black.
"""
from __future__ import annotations

import numpy as np

from ..params import FaceParams
from .geometry import FaceGeometry, face_geometry, image_to_local

SHADE_MIN = 0.15
SHADE_BASE = 0.62
SHADE_BAND0 = 0.22
SHADE_BAND1_XY = 0.18
SHADE_BAND1_Z = 0.12
EDGE_GAIN = 0.125  # anti-alias transition gain, scaled by resolution


def _coverage(field, resolution, gain=1.0):
    """Soft inside/outside coverage from a signed field (positive inside)."""
    return np.clip(field * (EDGE_GAIN * resolution * gain), 0.0, 1.0)


def _pixel_grid(resolution):
    xs = (np.arange(resolution, dtype=np.float64) + 0.5) / resolution
    return np.meshgrid(xs, xs, indexing="xy")


def _shading(u, v, gamma):
    """Band-0/1 lighting over sphere normals built from the local frame."""
    g = np.zeros(4)
    n = min(4, gamma.shape[0])
    g[:n] = gamma[:n] / 3.0
    r2 = np.clip(u * u + v * v, 0.0, 1.0)
    nz = np.sqrt(1.0 - r2)
    shade = SHADE_BASE + SHADE_BAND0 * g[0] + SHADE_BAND1_XY * (g[1] * u + g[2] * v) + SHADE_BAND1_Z * g[3] * nz
    return np.clip(shade, SHADE_MIN, 1.0)


def _ellipse_cov(u, v, cu, cv, ru, rv, resolution, gain=1.0):
    d = ((u - cu) / ru) ** 2 + ((v - cv) / rv) ** 2
    return _coverage(1.0 - d, resolution, gain)


def render_layers(p: FaceParams, resolution: int = 64):
    """Return (face_rgb, coverage): premultiplication-ready face layer."""
    geom = face_geometry(p)
    f = geom.feats
    x, y = _pixel_grid(resolution)
    u, v = image_to_local(geom, x, y)

    jaw = f["jaw_exp"]
    head_field = 1.0 - (np.abs(u) ** jaw + np.abs(v) ** jaw)
    cov = _coverage(head_field, resolution)

    albedo = np.empty((resolution, resolution, 3), dtype=np.float64)
    albedo[..., 0] = f["skin_r"]
    albedo[..., 1] = f["skin_g"]
    albedo[..., 2] = f["skin_b"]

    # cheek blush: soft additive tint
    for side in (-1.0, 1.0):
        blob = np.exp(-(((u - side * f["eye_u"]) ** 2 + (v - 0.28) ** 2) / 0.05))
        albedo[..., 0] += f["blush"] * 0.5 * blob
        albedo[..., 1] -= f["blush"] * 0.2 * blob
        albedo[..., 2] -= f["blush"] * 0.2 * blob

    # nose: slightly darkened skin blob
    nose = _ellipse_cov(u, v, 0.0, f["nose_v"], f["nose_s"] * 0.7, f["nose_s"], resolution)
    albedo *= 1.0 - 0.22 * nose[..., None]

    # mouth: curved band
    t = (u - f["mouth_shift"]) / f["mouth_w"]
    vline = f["mouth_v"] + f["mouth_curve"] * t * t
    mouth_field = np.where(np.abs(t) <= 1.0, 1.0 - np.abs(v - vline) / f["mouth_h"], -1.0)
    mouth = _coverage(mouth_field, resolution, gain=f["mouth_h"])
    lip = np.array([f["lip_tone"] + 0.18, f["lip_tone"] * 0.55, f["lip_tone"] * 0.55])
    albedo = albedo * (1.0 - mouth[..., None]) + lip * mouth[..., None]

    # brows: thin dark arcs above the eyes
    for side, raise_key in ((-1.0, "brow_raise_l"), (1.0, "brow_raise_r")):
        bv = f["eye_v"] - f["brow_gap"] - f[raise_key]
        brow = _ellipse_cov(u, v, side * f["eye_u"], bv, f["eye_r"] * 1.5, 0.035, resolution, gain=0.3)
        albedo = albedo * (1.0 - brow[..., None]) + f["brow_tone"] * brow[..., None]

    # eyes: iris ellipses, vertical radius scales with openness
    iris = np.array([f["iris"] * 0.9, f["iris"] * 0.95, min(1.0, f["iris"] * 1.15)])
    for side, open_key in ((-1.0, "eye_open_l"), (1.0, "eye_open_r")):
        eye = _ellipse_cov(
            u, v, side * f["eye_u"], f["eye_v"], f["eye_r"] * f["eye_w"], f["eye_r"] * f[open_key], resolution, gain=0.5
        )
        albedo = albedo * (1.0 - eye[..., None]) + iris * eye[..., None]

    albedo = np.clip(albedo, 0.05, 1.0)
    shade = _shading(u, v, p.gamma)
    return (albedo * shade[..., None]).astype(np.float64), cov


def render(p: FaceParams, resolution: int = 64) -> np.ndarray:
    """Deterministic parameter-to-image rendering; background exactly zero."""
    face, cov = render_layers(p, resolution)
    return np.clip(face * cov[..., None], 0.0, 1.0).astype(np.float32)


def face_mask(img) -> np.ndarray:
    """Binary face region: pixels where any channel is non-zero."""
    arr = np.asarray(img)
    return (arr.max(axis=2) > 0).astype(np.uint8)
