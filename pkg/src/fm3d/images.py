"""Image helpers: square float32 HxWx3 grids in [0, 1] and 8-bit PNG round trips.

All bit-exactness guarantees about stored images refer to the quantized
(uint8) form: values are quantized on write and dequantized to k/255 on read.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .errors import ShapeError


def validate_image(img, resolution=None):
    """Check that `img` is a square HxWx3 float array in [0, 1]."""
    if not isinstance(img, np.ndarray) or img.ndim != 3 or img.shape[2] != 3:
        raise ShapeError(f"expected HxWx3 array, got {getattr(img, 'shape', type(img))}")
    h, w, _ = img.shape
    if h != w:
        raise ShapeError(f"expected a square image, got {h}x{w}")
    if resolution is not None and h != resolution:
        raise ShapeError(f"expected resolution {resolution}, got {h}")
    if img.min() < 0.0 or img.max() > 1.0:
        raise ValueError("image values must lie in [0, 1]")
    return img


def to_uint8(img):
    return np.clip(np.rint(np.asarray(img, dtype=np.float64) * 255.0), 0, 255).astype(np.uint8)


def from_uint8(arr):
    return (arr.astype(np.float32) / 255.0).astype(np.float32)


def quantize(img):
    """Round-trip through uint8; the canonical stored form of an image."""
    return from_uint8(to_uint8(img))


def save_png(path, img):
    Image.fromarray(to_uint8(img), mode="RGB").save(Path(path), format="PNG")


def load_png(path):
    with Image.open(Path(path)) as im:
        arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    return from_uint8(arr)
