"""Pipeline orchestration: detector dispatch, stage runs, dumps, benchmark.

A detector id names the blending method: ``choquet:<fusion-id>[:<q>]`` for
the feature-fusion pipeline (e.g. ``choquet:copula_cf:0.8``), or one of the
baselines ``canny``, ``grav:sp``, ``grav:sm``, ``fmss``.  Conditioning is
shared by all methods (presets ``s1``..``s4`` or explicit parameters), as
is the scaling phase.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from . import baselines, image_io
from .aggregation import get_fusion, make_aggregator, power_measure
from .conditioning import (SMOOTHING_PRESETS, GaussianConfig, GravitationalConfig,
                           SmoothingConfig, smooth)
from .evaluation import (EvalTriplet, evaluate_dataset, evaluate_image,
                         tolerance_radius)
from .features import blend, extract_features
from .scaling import HysteresisParams, estimate_orientation, hysteresis, nms

__all__ = [
    "Detector",
    "PipelineConfig",
    "PipelineStages",
    "DEFAULT_EXPONENTS",
    "DEFAULT_SWEEP_HIGHS",
    "PRESET_METHODS",
    "resolve_detector",
    "resolve_smoothing",
    "run_stages",
    "run_pipeline",
    "run_benchmark",
    "write_report",
]

# Power-measure exponents paired with each bundled fusion function.
DEFAULT_EXPONENTS = {
    "copula_cf": 0.8,
    "overlap_ob": 1.0,
    "f_bpc": 0.4,
    "hamacher": 1.0,
}

PRESET_METHODS = (
    "choquet:copula_cf:0.8",
    "choquet:overlap_ob:1",
    "choquet:f_bpc:0.4",
    "choquet:hamacher:1",
    "canny",
    "grav:sp",
    "grav:sm",
    "fmss",
)

DEFAULT_SWEEP_HIGHS = (0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)


@dataclass(frozen=True)
class Detector:
    """A named blending method: conditioned image -> edge-cue image."""

    method_id: str
    blend_fn: Callable[[np.ndarray], np.ndarray]
    q: Optional[float] = None

    def __call__(self, conditioned: np.ndarray) -> np.ndarray:
        return self.blend_fn(conditioned)


def _resolve_fusion_spec(spec: str) -> tuple[str, float]:
    """Split ``<fusion-id>[:<q>]``, tolerating colons inside the fusion id."""
    parts = spec.split(":")
    if len(parts) >= 2:
        head = ":".join(parts[:-1])
        try:
            q = float(parts[-1])
            get_fusion(head)
        except ValueError:
            pass
        else:
            return head, q
    get_fusion(spec)
    return spec, DEFAULT_EXPONENTS.get(spec, 1.0)


def resolve_detector(method_id: str) -> Detector:
    """Build the blending stage for a method id; raises on unknown ids."""
    if method_id == "canny":
        return Detector(method_id, baselines.canny_gradient_blend)
    if method_id == "grav:sp":
        return Detector(method_id,
                        lambda img: baselines.gravitational_edge_blend(
                            img, get_fusion("prob_sum")))
    if method_id == "grav:sm":
        return Detector(method_id,
                        lambda img: baselines.gravitational_edge_blend(
                            img, get_fusion("max")))
    if method_id == "fmss":
        return Detector(method_id, baselines.fuzzy_morphology_blend)
    if method_id.startswith("choquet:"):
        fusion_id, q = _resolve_fusion_spec(method_id[len("choquet:"):])
        fusion = get_fusion(fusion_id)
        measure = power_measure(q, 8)
        kind = "ct" if fusion.is_tnorm else "cf"
        aggregate = make_aggregator(kind, measure, fusion)
        return Detector(method_id,
                        lambda img: blend(extract_features(img), aggregate),
                        q=q)
    raise ValueError(
        f"unknown method id {method_id!r} "
        "(expected choquet:<fusion>[:<q>], canny, grav:sp, grav:sm or fmss)")


def resolve_smoothing(spec) -> SmoothingConfig:
    """Turn a preset name or parameter string into a smoothing config.

    Accepts ``s1``..``s4``, ``gaussian:<sigma>`` and
    ``gravitational:<G>:<omega_c>:<iterations>[:<window-radius>]``.
    """
    if isinstance(spec, (GaussianConfig, GravitationalConfig)):
        return spec
    name = str(spec).strip().lower()
    if name in SMOOTHING_PRESETS:
        return SMOOTHING_PRESETS[name]
    parts = name.split(":")
    try:
        if parts[0] == "gaussian" and len(parts) == 2:
            return GaussianConfig(sigma=float(parts[1]))
        if parts[0] == "gravitational" and len(parts) in (4, 5):
            radius = int(parts[4]) if len(parts) == 5 else 5
            return GravitationalConfig(gravity=float(parts[1]),
                                       tonal_scale=float(parts[2]),
                                       iterations=int(parts[3]),
                                       window_radius=radius)
    except ValueError as exc:
        raise ValueError(f"bad smoothing parameters in {spec!r}: {exc}") from None
    raise ValueError(
        f"unknown smoothing {spec!r} (expected s1..s4, gaussian:<sigma> or "
        "gravitational:<G>:<omega_c>:<t>[:<w>])")


@dataclass(frozen=True)
class PipelineStages:
    conditioned: np.ndarray
    blended: np.ndarray
    orientation: np.ndarray
    thinned: np.ndarray
    edges: np.ndarray


def run_stages(img, detector: Detector, smoothing: SmoothingConfig,
               params: HysteresisParams) -> PipelineStages:
    """Run conditioning, blending and scaling on one image."""
    conditioned = smooth(img, smoothing)
    blended = detector(conditioned)
    orientation = estimate_orientation(conditioned)
    thinned = nms(blended, orientation)
    edges = hysteresis(thinned, params)
    return PipelineStages(conditioned=conditioned, blended=blended,
                          orientation=orientation, thinned=thinned, edges=edges)


@dataclass(frozen=True)
class PipelineConfig:
    """Everything a run or benchmark needs; see the CLI for the user surface."""

    inputs: tuple = ()
    method: str = "choquet:copula_cf:0.8"
    smoothing: str = "s1"
    hysteresis: HysteresisParams = field(default_factory=HysteresisParams)
    out_dir: Optional[Path] = None
    dumps: frozenset = frozenset()
    gt_dir: Optional[Path] = None
    methods: tuple = PRESET_METHODS
    smoothings: tuple = ("s1", "s2", "s3", "s4")
    sweep_highs: tuple = DEFAULT_SWEEP_HIGHS
    low_ratio: float = 0.4
    alpha: float = 0.5
    jobs: int = 1

    def __post_init__(self):
        unknown = set(self.dumps) - {"p1", "p2", "p3", "p4"}
        if unknown:
            raise ValueError(f"unknown dump stages: {sorted(unknown)}")


def _resolved_config_lines(cfg: PipelineConfig) -> list[str]:
    smoothing = resolve_smoothing(cfg.smoothing)
    lines = [
        f"method = {cfg.method}",
        f"smoothing = {cfg.smoothing}",
        f"smoothing-params = {smoothing}",
        f"threshold-mode = {cfg.hysteresis.mode}",
        f"low = {cfg.hysteresis.low}",
        f"high = {cfg.hysteresis.high}",
        f"dump = {','.join(sorted(cfg.dumps))}",
        f"inputs = {','.join(str(p) for p in cfg.inputs)}",
    ]
    if cfg.gt_dir is not None:
        lines.append(f"gt = {cfg.gt_dir}")
    return lines


def run_pipeline(cfg: PipelineConfig) -> list[dict]:
    """Process every input image, writing the edge map and requested dumps.

    Returns one record per image with the stage arrays and written paths.
    Outputs are deterministic functions of the config and inputs.
    """
    if cfg.out_dir is None:
        raise ValueError("run_pipeline needs an output directory")
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if not cfg.inputs:
        raise ValueError("no input images given")

    detector = resolve_detector(cfg.method)
    smoothing = resolve_smoothing(cfg.smoothing)

    (out_dir / "resolved-config.txt").write_text(
        "\n".join(_resolved_config_lines(cfg)) + "\n")

    records = []
    for path in cfg.inputs:
        path = Path(path)
        img = image_io.read_gray_image(path)
        stages = run_stages(img, detector, smoothing, cfg.hysteresis)
        written = {}
        if "p1" in cfg.dumps:
            written["p1"] = out_dir / f"{path.stem}-p1.png"
            image_io.write_gray_image(written["p1"], stages.conditioned)
        if "p2" in cfg.dumps:
            written["p2"] = out_dir / f"{path.stem}-p2.f64"
            image_io.write_feature_planes(written["p2"],
                                          extract_features(stages.conditioned))
        if "p3" in cfg.dumps:
            written["p3"] = out_dir / f"{path.stem}-p3.png"
            image_io.write_gray_image(written["p3"], stages.blended)
        written["p4"] = out_dir / f"{path.stem}-p4.png"
        image_io.write_edge_map(written["p4"], stages.edges)
        records.append({"input": path, "stages": stages, "written": written})
    return records


def _ground_truths_for(stem: str, gt_dir: Path) -> list[Path]:
    paths = sorted(p for p in gt_dir.iterdir()
                   if p.is_file() and p.stem.startswith(stem)
                   and p.suffix.lower() in (".png", ".pbm", ".pgm"))
    return paths


def _best_triplet(thinned, gts, cfg: PipelineConfig) -> EvalTriplet:
    tolerance = tolerance_radius(*thinned.shape)
    best = None
    for high in cfg.sweep_highs:
        params = HysteresisParams(low=cfg.low_ratio, high=high, mode="percentile")
        candidate = hysteresis(thinned, params)
        triplet = evaluate_image(candidate, gts, tolerance, cfg.alpha)
        if best is None or triplet.f > best.f:
            best = triplet
    return best


def _bench_one(task) -> dict:
    path_str, gt_paths, method, smoothing_spec, cfg = task
    img = image_io.read_gray_image(path_str)
    detector = resolve_detector(method)
    smoothing = resolve_smoothing(smoothing_spec)
    stages = run_stages(img, detector, smoothing, cfg.hysteresis)
    gts = [image_io.read_edge_map(p) for p in gt_paths]
    triplet = _best_triplet(stages.thinned, gts, cfg)
    return {"image": Path(path_str).stem, "method": method,
            "smoothing": smoothing_spec, "q": detector.q, "triplet": triplet}


def run_benchmark(cfg: PipelineConfig) -> list[dict]:
    """Evaluate every (method, smoothing) pair over the input set.

    Per image the hysteresis thresholds are swept and the best F triplet
    (over sweeps and ground truths) is kept; each block ends with the
    componentwise dataset average.  Returns the report rows.
    """
    if cfg.gt_dir is None:
        raise ValueError("benchmark needs a ground-truth directory")
    if not cfg.inputs:
        raise ValueError("no input images given")
    gt_dir = Path(cfg.gt_dir)

    gt_map = {}
    missing = []
    for path in cfg.inputs:
        stem = Path(path).stem
        gt_paths = _ground_truths_for(stem, gt_dir)
        if not gt_paths:
            missing.append(stem)
        gt_map[stem] = gt_paths
    if missing:
        raise FileNotFoundError(
            "missing ground truths for: " + ", ".join(sorted(missing)))

    tasks = [(str(path), [str(p) for p in gt_map[Path(path).stem]],
              method, smoothing_spec, cfg)
             for method in cfg.methods
             for smoothing_spec in cfg.smoothings
             for path in cfg.inputs]

    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_bench_one, tasks))
    else:
        results = [_bench_one(task) for task in tasks]

    rows = []
    for method in cfg.methods:
        for smoothing_spec in cfg.smoothings:
            block = [r for r in results
                     if r["method"] == method and r["smoothing"] == smoothing_spec]
            rows.extend(block)
            mean = evaluate_dataset([r["triplet"] for r in block])
            rows.append({"image": "average", "method": method,
                         "smoothing": smoothing_spec,
                         "q": block[0]["q"], "triplet": mean})
    return rows


def write_report(rows: Sequence[dict], path) -> None:
    """Write benchmark rows as CSV: image, method, smoothing, q, prec, rec, f."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["image", "method", "smoothing", "q", "prec", "rec", "f"])
        for row in rows:
            t = row["triplet"]
            q = "" if row["q"] is None else f"{row['q']:g}"
            writer.writerow([row["image"], row["method"], row["smoothing"], q,
                             f"{t.precision:.6f}", f"{t.recall:.6f}", f"{t.f:.6f}"])
