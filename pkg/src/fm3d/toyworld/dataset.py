"""Paired dataset builders and the JSON-lines manifest format.

Layout on disk:
    out_dir/manifest.jsonl   header line, then one line per sample
    out_dir/img/{identity:06d}_{variant:02d}_{photo|render}.png

Per-identity randomness is derived from SeedSequence([build_seed,
identity_index]), so builds are reproducible regardless of iteration
order or parallelism.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ShapeError
from ..images import load_png, save_png
from ..params import FaceParams, ParamDims, TOY_DIMS, flatten, resample_nonid, sample_params, unflatten
from .photo import synth_photo
from .render import render

MANIFEST_FORMAT = "fm3d-manifest-v1"


@dataclass
class ManifestEntry:
    identity_index: int
    variant_index: int
    params: FaceParams
    noise_seed: int
    photo_path: str
    render_path: str


@dataclass
class DatasetManifest:
    kind: str  # "synthetic" | "real_analog"
    dims: ParamDims
    resolution: int
    build_seed: int
    params_role: str  # "ground_truth" | "holdout_eval_only"
    entries: list = field(default_factory=list)

    def identity_groups(self) -> dict:
        groups: dict = {}
        for i, e in enumerate(self.entries):
            groups.setdefault(e.identity_index, []).append(i)
        return groups


def _identity_seeds(build_seed: int, identity_index: int):
    ss = np.random.SeedSequence([int(build_seed), int(identity_index)])
    s = ss.generate_state(3)
    return int(s[0]), int(s[1]), int(s[2])


def save_manifest(manifest: DatasetManifest, out_dir) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "manifest.jsonl"
    with open(path, "w") as fh:
        header = {
            "format": MANIFEST_FORMAT,
            "kind": manifest.kind,
            "dims": manifest.dims.to_dict(),
            "resolution": manifest.resolution,
            "build_seed": manifest.build_seed,
            "params_role": manifest.params_role,
        }
        fh.write(json.dumps(header) + "\n")
        for e in manifest.entries:
            row = {
                "identity_index": e.identity_index,
                "variant_index": e.variant_index,
                "params": [float(v) for v in flatten(e.params)],
                "noise_seed": e.noise_seed,
                "photo": e.photo_path,
                "render": e.render_path,
            }
            fh.write(json.dumps(row) + "\n")
    return path


def load_manifest(path) -> DatasetManifest:
    path = Path(path)
    if path.is_dir():
        path = path / "manifest.jsonl"
    with open(path) as fh:
        header = json.loads(fh.readline())
        if header.get("format") != MANIFEST_FORMAT:
            from ..errors import VersionError

            raise VersionError(f"unsupported manifest format: {header.get('format')!r}")
        dims = ParamDims.from_dict(header["dims"])
        manifest = DatasetManifest(
            kind=header["kind"],
            dims=dims,
            resolution=int(header["resolution"]),
            build_seed=int(header["build_seed"]),
            params_role=header["params_role"],
        )
        for line in fh:
            row = json.loads(line)
            manifest.entries.append(
                ManifestEntry(
                    identity_index=int(row["identity_index"]),
                    variant_index=int(row["variant_index"]),
                    params=unflatten(np.asarray(row["params"], dtype=np.float64), dims),
                    noise_seed=int(row["noise_seed"]),
                    photo_path=row["photo"],
                    render_path=row["render"],
                )
            )
    return manifest


def _paths(identity, variant):
    stem = f"img/{identity:06d}_{variant:02d}"
    return f"{stem}_photo.png", f"{stem}_render.png"


def build_synthetic_dataset(
    n_identities: int,
    variants_per_identity: int,
    seed: int,
    out_dir=None,
    dims: ParamDims = TOY_DIMS,
    resolution: int = 64,
    write_images: bool = True,
) -> DatasetManifest:
    """N identities x M variants of (photo, render) pairs sharing per-identity
    alpha and noise seed. `write_images=False` builds the manifest only."""
    if n_identities < 1 or variants_per_identity < 1:
        raise ValueError("need at least one identity and one variant")
    manifest = DatasetManifest(
        kind="synthetic", dims=dims, resolution=resolution, build_seed=seed, params_role="ground_truth"
    )
    if write_images:
        if out_dir is None:
            raise ValueError("out_dir required when writing images")
        (Path(out_dir) / "img").mkdir(parents=True, exist_ok=True)
    for ident in range(n_identities):
        param_seed, resample_seed, noise_seed = _identity_seeds(seed, ident)
        base = sample_params(param_seed, dims)
        variants = [base] + resample_nonid(base, resample_seed, variants_per_identity - 1)
        for vi, p in enumerate(variants):
            photo_path, render_path = _paths(ident, vi)
            if write_images:
                save_png(Path(out_dir) / photo_path, synth_photo(p, noise_seed, resolution))
                save_png(Path(out_dir) / render_path, render(p, resolution))
            manifest.entries.append(ManifestEntry(ident, vi, p, noise_seed, photo_path, render_path))
    if out_dir is not None:
        save_manifest(manifest, out_dir)
    return manifest


def build_real_analog_dataset(
    size: int,
    seed: int,
    out_dir=None,
    dims: ParamDims = TOY_DIMS,
    resolution: int = 64,
    write_images: bool = True,
) -> DatasetManifest:
    """One photo per identity with wide nuisance variation. Ground-truth
    params are stored for held-out evaluation only; training-time pairing
    must build renders from estimated parameters instead."""
    if size < 1:
        raise ValueError("need at least one image")
    manifest = DatasetManifest(
        kind="real_analog", dims=dims, resolution=resolution, build_seed=seed, params_role="holdout_eval_only"
    )
    if write_images:
        if out_dir is None:
            raise ValueError("out_dir required when writing images")
        (Path(out_dir) / "img").mkdir(parents=True, exist_ok=True)
    for ident in range(size):
        param_seed, _, noise_seed = _identity_seeds(seed, ident)
        p = sample_params(param_seed, dims)
        photo_path, _ = _paths(ident, 0)
        if write_images:
            save_png(Path(out_dir) / photo_path, synth_photo(p, noise_seed, resolution, domain="real"))
        manifest.entries.append(ManifestEntry(ident, 0, p, noise_seed, photo_path, ""))
    if out_dir is not None:
        save_manifest(manifest, out_dir)
    return manifest


def load_entry_images(manifest: DatasetManifest, root, index: int):
    """Load (photo, render) for one entry; render is None when not stored."""
    e = manifest.entries[index]
    root = Path(root)
    photo = load_png(root / e.photo_path)
    render_img = load_png(root / e.render_path) if e.render_path else None
    if photo.shape[0] != manifest.resolution:
        raise ShapeError("stored image resolution does not match manifest")
    return photo, render_img
