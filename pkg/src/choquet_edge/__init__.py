"""Grayscale edge detection with Choquet-integral feature fusion.

The pipeline runs in four phases: conditioning (Gaussian or gravitational
smoothing), 8-neighborhood difference features, fusion of the features with
a Choquet-style integral, and scaling to thin binary edges (non-maxima
suppression plus hysteresis).  Baseline detectors and a displacement-
tolerant precision/recall/F benchmark harness are included.
"""

from .aggregation import (CardinalityMeasure, FusionFunction, base_functions,
                          cf_integral, check_directional_monotonicity, choquet,
                          ct_integral, get_fusion, make_aggregator,
                          power_measure, schweizer_sklar_conorm,
                          schweizer_sklar_tnorm)
from .baselines import (canny_blend, canny_gradient_blend,
                        fuzzy_morphology_blend, gravitational_edge_blend)
from .conditioning import (SMOOTHING_PRESETS, GaussianConfig,
                           GravitationalConfig, as_gray_image, gaussian_smooth,
                           gravitational_smooth, smooth)
from .evaluation import (EvalTriplet, MatchResult, evaluate_dataset,
                         evaluate_image, f_measure, match_edges,
                         tolerance_radius, triplet_from_match)
from .features import blend, extract_features
from .pipeline import (Detector, PipelineConfig, resolve_detector,
                       resolve_smoothing, run_benchmark, run_pipeline,
                       run_stages)
from .scaling import HysteresisParams, estimate_orientation, hysteresis, nms

__version__ = "0.1.0"
