"""Photo synthesizer: render plus identity-and-seed-keyed nuisance.

A photo is the rendered face composited over a procedural background with
a hair cap and torso band, followed by a mild photometric perturbation.
The nuisance layer depends only on (identity coefficients, noise seed,
domain), never on expression/lighting/pose, so photos of one identity
group share every pixel outside the union of their face regions. The
"real" domain draws from a wider nuisance family (extra texture type,
stronger amplitudes, mild blur) to create a domain gap against the
synthetic world.
"""
from __future__ import annotations

import hashlib

import numpy as np

from ..params import FaceParams
from .geometry import identity_features
from .render import render_layers

_HAIR_TONES = np.array(
    [[0.13, 0.10, 0.08], [0.30, 0.22, 0.12], [0.08, 0.08, 0.10], [0.35, 0.30, 0.28], [0.20, 0.12, 0.06]]
)


def _nuisance_seed(alpha, noise_seed: int, domain: str) -> int:
    h = hashlib.sha256()
    h.update(np.asarray(alpha, dtype=np.float64).tobytes())
    h.update(int(noise_seed).to_bytes(8, "little", signed=True))
    h.update(domain.encode())
    return int.from_bytes(h.digest()[:8], "little")


def _background(rng, resolution, real):
    xs = (np.arange(resolution) + 0.5) / resolution
    x, y = np.meshgrid(xs, xs, indexing="xy")
    kind = rng.integers(0, 4 if real else 3)
    base = rng.uniform(0.2, 0.6, size=3)
    amp_hi = 0.18 if real else 0.12
    img = np.broadcast_to(base, (resolution, resolution, 3)).copy()
    if kind == 0:  # plaid
        fmax = 7.0 if real else 4.0
        for c in range(3):
            f1, f2 = rng.uniform(1.0, fmax, size=2)
            p1, p2 = rng.uniform(0.0, 1.0, size=2)
            a1, a2 = rng.uniform(0.03, amp_hi, size=2)
            img[..., c] += a1 * np.sin(2 * np.pi * (f1 * x + p1)) + a2 * np.sin(2 * np.pi * (f2 * y + p2))
    elif kind == 1:  # radial gradient
        cx, cy = rng.uniform(0.0, 1.0, size=2)
        f = rng.uniform(0.5, 2.5 if real else 1.5)
        amp = rng.uniform(0.05, amp_hi, size=3)
        d = np.sqrt((x - cx) ** 2 + (y - cy) ** 2)
        img += amp * np.cos(np.pi * f * d)[..., None]
    elif kind == 2:  # smooth blobs
        nblob = 8 if real else 5
        for _ in range(nblob):
            cx, cy = rng.uniform(0.0, 1.0, size=2)
            w = rng.uniform(0.02, 0.12)
            amp = rng.uniform(-amp_hi, amp_hi, size=3)
            img += amp * np.exp(-((x - cx) ** 2 + (y - cy) ** 2) / w)[..., None]
    else:  # coarse speckle, real domain only
        coarse = rng.random((resolution // 4, resolution // 4, 3))
        up = np.repeat(np.repeat(coarse, 4, axis=0), 4, axis=1)
        k = np.ones(5) / 5.0
        for ax in (0, 1):
            up = np.apply_along_axis(lambda m: np.convolve(m, k, mode="same"), ax, up)
        img += (up - 0.5) * rng.uniform(0.15, 0.35)
    return np.clip(img, 0.05, 0.95)


def nuisance_layer(alpha, noise_seed: int, resolution: int = 64, domain: str = "synthetic") -> np.ndarray:
    """Background + hair + torso; a pure function of (alpha, seed, domain)."""
    real = domain == "real"
    rng = np.random.default_rng(_nuisance_seed(alpha, noise_seed, domain))
    img = _background(rng, resolution, real)

    f = identity_features(alpha)
    a0, b0 = f["head_a"], f["head_a"] * f["aspect"]
    xs = (np.arange(resolution) + 0.5) / resolution
    x, y = np.meshgrid(xs, xs, indexing="xy")
    u, v = (x - 0.5) / a0, (y - 0.5) / b0

    # hair cap: inflated head outline at the canonical (zero-pose) position
    scale = rng.uniform(1.08, 1.35 if real else 1.25)
    cut = rng.uniform(-0.1, 0.35 if real else 0.25)
    jaw = f["jaw_exp"]
    hair_field = 1.0 - ((np.abs(u) / scale) ** jaw + (np.abs(v) / scale) ** jaw)
    hair = np.clip(hair_field * resolution * 0.125, 0.0, 1.0) * (v < cut)
    tone = _HAIR_TONES[rng.integers(0, len(_HAIR_TONES))] * rng.uniform(0.7, 1.3)
    img = img * (1.0 - hair[..., None]) + tone * hair[..., None]

    # torso band along the bottom edge
    t = rng.uniform(0.10, 0.20)
    torso = np.clip((y - (1.0 - t)) * resolution * 0.25, 0.0, 1.0)
    tcol = rng.uniform(0.1, 0.8, size=3)
    img = img * (1.0 - torso[..., None]) + tcol * torso[..., None]
    return np.clip(img, 0.0, 1.0)


def _blur3(img, strength):
    k = np.array([strength, 1.0 - 2 * strength, strength])
    out = img.copy()
    for ax in (0, 1):
        padded = np.pad(out, [(1, 1) if a == ax else (0, 0) for a in range(3)], mode="edge")
        out = k[0] * np.take(padded, range(0, img.shape[ax]), axis=ax) + k[1] * np.take(
            padded, range(1, img.shape[ax] + 1), axis=ax
        ) + k[2] * np.take(padded, range(2, img.shape[ax] + 2), axis=ax)
    return out


def synth_photo(p: FaceParams, noise_seed: int, resolution: int = 64, domain: str = "synthetic") -> np.ndarray:
    """Photo with the same face attributes as render(p), plus nuisance."""
    real = domain == "real"
    face, cov = render_layers(p, resolution)
    bg = nuisance_layer(p.alpha, noise_seed, resolution, domain)
    photo = face * cov[..., None] + bg * (1.0 - cov[..., None])

    jrng = np.random.default_rng(_nuisance_seed(np.zeros(1), noise_seed, "jitter-" + domain))
    if real:
        strength = jrng.uniform(0.0, 0.22)
        if strength > 0.02:
            photo = _blur3(photo, strength)
        gain = 1.0 + 0.09 * jrng.uniform(-1.0, 1.0)
        bias = 0.06 * jrng.uniform(-1.0, 1.0)
    else:
        gain = 1.0 + 0.05 * jrng.uniform(-1.0, 1.0)
        bias = 0.04 * jrng.uniform(-1.0, 1.0)
    return np.clip(photo * gain + bias, 0.0, 1.0).astype(np.float32)
