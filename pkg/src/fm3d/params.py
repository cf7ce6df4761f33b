"""Disentangled face control vector: identity, expression, illumination, pose.

The vector splits into four blocks. Identity (alpha) is never editable;
expression (beta), illumination (gamma) and pose (delta) can be replaced
wholesale through `ParamEdit`. Pose is always 3 components (yaw, pitch,
roll in radians) bounded by `DELTA_MAX`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ShapeError

DELTA_MAX = 0.6  # |yaw|, |pitch|, |roll| bound in radians
CLIP_SIGMA = 3.0  # alpha/beta/gamma are standard normals clipped here


@dataclass(frozen=True)
class ParamDims:
    """Block sizes of the control vector. Desk defaults 16/8/4/3."""

    d_id: int = 16
    d_exp: int = 8
    d_light: int = 4
    d_pose: int = 3

    def __post_init__(self):
        if self.d_id < 1 or self.d_exp < 1 or self.d_light < 1:
            raise ShapeError("every parameter block needs at least one component")
        if self.d_pose != 3:
            raise ShapeError("pose block is fixed at 3 components (yaw, pitch, roll)")

    @property
    def total(self) -> int:
        return self.d_id + self.d_exp + self.d_light + self.d_pose

    def to_dict(self):
        return {"d_id": self.d_id, "d_exp": self.d_exp, "d_light": self.d_light, "d_pose": self.d_pose}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["d_id"]), int(d["d_exp"]), int(d["d_light"]), int(d.get("d_pose", 3)))


TOY_DIMS = ParamDims(16, 8, 4, 3)
FULL_DIMS = ParamDims(160, 64, 27, 3)  # full-scale morphable-model block sizes


def _frozen_block(values, length, name, pose_bound=False):
    arr = np.asarray(values, dtype=np.float64)
    if arr.shape != (length,):
        raise ShapeError(f"{name} must have shape ({length},), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    if pose_bound and np.any(np.abs(arr) > DELTA_MAX):
        raise ValueError(f"{name} components must lie in [-{DELTA_MAX}, {DELTA_MAX}]")
    if arr.flags.writeable:
        arr = arr.copy()
        arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FaceParams:
    """One point of the control space. Immutable; arrays are read-only."""

    dims: ParamDims
    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    delta: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alpha", _frozen_block(self.alpha, self.dims.d_id, "alpha"))
        object.__setattr__(self, "beta", _frozen_block(self.beta, self.dims.d_exp, "beta"))
        object.__setattr__(self, "gamma", _frozen_block(self.gamma, self.dims.d_light, "gamma"))
        object.__setattr__(self, "delta", _frozen_block(self.delta, 3, "delta", pose_bound=True))

    def __eq__(self, other):
        if not isinstance(other, FaceParams):
            return NotImplemented
        return (
            self.dims == other.dims
            and np.array_equal(self.alpha, other.alpha)
            and np.array_equal(self.beta, other.beta)
            and np.array_equal(self.gamma, other.gamma)
            and np.array_equal(self.delta, other.delta)
        )

    @property
    def yaw(self) -> float:
        return float(self.delta[0])

    @property
    def pitch(self) -> float:
        return float(self.delta[1])

    @property
    def roll(self) -> float:
        return float(self.delta[2])

    @classmethod
    def zeros(cls, dims: ParamDims = TOY_DIMS) -> "FaceParams":
        return cls(dims, np.zeros(dims.d_id), np.zeros(dims.d_exp), np.zeros(dims.d_light), np.zeros(3))

    def to_dict(self):
        return {"dims": self.dims.to_dict(), "values": [float(v) for v in flatten(self)]}

    @classmethod
    def from_dict(cls, d):
        return unflatten(np.asarray(d["values"], dtype=np.float64), ParamDims.from_dict(d["dims"]))


@dataclass(frozen=True)
class ParamEdit:
    """Replacement values for the editable blocks. Identity is untouchable."""

    beta: Optional[np.ndarray] = None
    gamma: Optional[np.ndarray] = None
    delta: Optional[np.ndarray] = None

    def is_empty(self) -> bool:
        return self.beta is None and self.gamma is None and self.delta is None

    def to_dict(self):
        out = {}
        for name in ("beta", "gamma", "delta"):
            val = getattr(self, name)
            if val is not None:
                out[name] = [float(v) for v in np.asarray(val, dtype=np.float64)]
        return out

    @classmethod
    def from_dict(cls, d):
        kw = {}
        for name in ("beta", "gamma", "delta"):
            if d.get(name) is not None:
                kw[name] = np.asarray(d[name], dtype=np.float64)
        return cls(**kw)


def sample_params(rng_seed: int, dims: ParamDims = TOY_DIMS) -> FaceParams:
    """Draw one control vector: clipped standard normals, uniform pose."""
    rng = np.random.default_rng(rng_seed)
    alpha = np.clip(rng.standard_normal(dims.d_id), -CLIP_SIGMA, CLIP_SIGMA)
    beta = np.clip(rng.standard_normal(dims.d_exp), -CLIP_SIGMA, CLIP_SIGMA)
    gamma = np.clip(rng.standard_normal(dims.d_light), -CLIP_SIGMA, CLIP_SIGMA)
    delta = rng.uniform(-DELTA_MAX, DELTA_MAX, size=3)
    return FaceParams(dims, alpha, beta, gamma, delta)


def edit_params(p: FaceParams, e: ParamEdit) -> FaceParams:
    """Apply an edit; alpha is carried over bit-for-bit."""
    beta = p.beta if e.beta is None else _frozen_block(e.beta, p.dims.d_exp, "beta")
    gamma = p.gamma if e.gamma is None else _frozen_block(e.gamma, p.dims.d_light, "gamma")
    delta = p.delta if e.delta is None else _frozen_block(e.delta, 3, "delta", pose_bound=True)
    return FaceParams(p.dims, p.alpha, beta, gamma, delta)


def resample_nonid(p: FaceParams, rng_seed: int, count: int) -> list[FaceParams]:
    """Fresh (beta, gamma, delta) draws around a fixed identity."""
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = np.random.default_rng(rng_seed)
    out = []
    for _ in range(count):
        beta = np.clip(rng.standard_normal(p.dims.d_exp), -CLIP_SIGMA, CLIP_SIGMA)
        gamma = np.clip(rng.standard_normal(p.dims.d_light), -CLIP_SIGMA, CLIP_SIGMA)
        delta = rng.uniform(-DELTA_MAX, DELTA_MAX, size=3)
        out.append(FaceParams(p.dims, p.alpha, beta, gamma, delta))
    return out


def flatten(p: FaceParams) -> np.ndarray:
    """Serialize to a single vector in alpha | beta | gamma | delta order."""
    return np.concatenate([p.alpha, p.beta, p.gamma, p.delta])


def unflatten(v, dims: ParamDims) -> FaceParams:
    arr = np.asarray(v, dtype=np.float64)
    if arr.shape != (dims.total,):
        raise ShapeError(f"expected a vector of length {dims.total}, got shape {arr.shape}")
    a = dims.d_id
    b = a + dims.d_exp
    c = b + dims.d_light
    return FaceParams(dims, arr[:a], arr[a:b], arr[b:c], arr[c:])


def clip_to_valid(v, dims: ParamDims) -> FaceParams:
    """Unflatten after clamping pose into range; used on regressor outputs."""
    arr = np.asarray(v, dtype=np.float64).copy()
    if arr.shape != (dims.total,):
        raise ShapeError(f"expected a vector of length {dims.total}, got shape {arr.shape}")
    arr[dims.total - 3 :] = np.clip(arr[dims.total - 3 :], -DELTA_MAX, DELTA_MAX)
    return unflatten(arr, dims)
