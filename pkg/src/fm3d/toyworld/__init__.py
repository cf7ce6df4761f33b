"""Deterministic procedural face world: renderer, photo synthesizer, datasets."""

from .geometry import FaceGeometry, face_geometry, identity_features, local_to_image
from .render import face_mask, render, render_layers
from .landmarks import LANDMARK_NAMES, landmark_oracle
from .photo import nuisance_layer, synth_photo
from .dataset import (
    DatasetManifest,
    ManifestEntry,
    build_real_analog_dataset,
    build_synthetic_dataset,
    load_manifest,
    save_manifest,
)

__all__ = [
    "FaceGeometry",
    "face_geometry",
    "identity_features",
    "local_to_image",
    "render",
    "render_layers",
    "face_mask",
    "landmark_oracle",
    "LANDMARK_NAMES",
    "synth_photo",
    "nuisance_layer",
    "DatasetManifest",
    "ManifestEntry",
    "build_synthetic_dataset",
    "build_real_analog_dataset",
    "save_manifest",
    "load_manifest",
]
