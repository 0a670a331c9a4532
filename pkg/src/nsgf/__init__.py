"""Painless nonstationary Gabor frames with companion decomposition spaces."""

from .approx import SweepResult, error_sweep, fit_decay, nterm_approx, rearrange
from .bapu import (
    Bapu,
    FrequencyGrid,
    PlateauBump,
    build_bapu,
    multiplier_apply,
)
from .configs import (
    chained_channels,
    dyadic_six_channel,
    flat_two_channel,
    irregular_eight_channel,
    named_config,
    toy_three_channel,
)
from .corpus import Corpus, generate_corpus
from .covering import (
    AffineMap,
    Covering,
    ValidationReport,
    besov_covering,
    covering_from_dict,
    covering_from_nsgf,
    covering_to_dict,
    modulation_covering,
    neighbor_sets,
    validate_structured,
)
from .frames import (
    Channel,
    CoefficientSet,
    FrameConditionError,
    NsgfSystem,
    analyze,
    decay_check,
    dense_frame_matrix,
    dual_windows,
    frame_apply,
    frame_bapu,
    make_windows,
    synthesize,
    validate_painless,
)
from .spaces import (
    EquivalenceReport,
    NormParams,
    coeff_norm,
    ds_norm,
    equivalence_report,
    lp_normalized_coeffs,
    seq_norm,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "Bapu",
    "Channel",
    "CoefficientSet",
    "Corpus",
    "Covering",
    "EquivalenceReport",
    "FrameConditionError",
    "FrequencyGrid",
    "NormParams",
    "NsgfSystem",
    "PlateauBump",
    "SweepResult",
    "ValidationReport",
    "analyze",
    "besov_covering",
    "build_bapu",
    "chained_channels",
    "coeff_norm",
    "covering_from_dict",
    "covering_from_nsgf",
    "covering_to_dict",
    "decay_check",
    "dense_frame_matrix",
    "ds_norm",
    "dual_windows",
    "dyadic_six_channel",
    "equivalence_report",
    "error_sweep",
    "fit_decay",
    "flat_two_channel",
    "frame_apply",
    "frame_bapu",
    "generate_corpus",
    "irregular_eight_channel",
    "lp_normalized_coeffs",
    "make_windows",
    "modulation_covering",
    "multiplier_apply",
    "named_config",
    "neighbor_sets",
    "nterm_approx",
    "rearrange",
    "seq_norm",
    "synthesize",
    "toy_three_channel",
    "validate_painless",
    "validate_structured",
]
