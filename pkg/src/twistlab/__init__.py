"""twistlab: Dehn-twist words, curve-graph length certificates, exact
Thurston representations, and a torus/Farey backend for end-to-end checks.
"""

__version__ = "0.1.0"

from .applications import (
    MinimalWordResult,
    RaagCertificate,
    RatioReport,
    minimal_word,
    raag_threshold,
    ratio_report,
    trace_bound,
    unit_alternating_trace,
)
from .bounds import (
    BoundResult,
    ConditionVerdict,
    best_bound,
    bounds_curve_cycle,
    bounds_multicurve_cycle,
    bounds_two_multicurve,
    exact_two_filling,
    penner_certificate,
)
from .config import (
    CurveSystem,
    SurfaceKind,
    dist_multicurve,
    filling_pair,
    load_curve_system,
    load_curve_system_file,
    proj_multicurve,
    validate,
)
from .exact import AlgebraicReal, log_enclosure, sqrt_enclosure
from .farey import (
    INFINITY,
    Slope,
    annular_distance,
    export_curve_system,
    farey_distance,
    farey_distance_bfs,
    farey_geodesic,
    intersection,
    parse_slope,
    twist_matrix,
    verify_main_theorem,
)
from .thurston import (
    IntersectionMatrix,
    RepMatrix,
    classify,
    is_penner_word,
    perron_eigenvalue,
    represent,
    stretch_factor,
)
from .words import (
    BlockDecomposition,
    Syllable,
    TwistWord,
    block_decompose,
    cyclic_reduce,
    normalize,
    parse_word,
    syllable_prefixes,
    word,
)
