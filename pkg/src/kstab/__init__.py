"""Exact relative K-stability computations for weight systems."""
from .errors import (
    InadmissibleK,
    InconsistentSamples,
    InsufficientSamples,
    InvalidConfig,
    KStabError,
    OrderOutOfRange,
    SingularGram,
    UnsupportedParameters,
    ZeroDenominator,
)
from .exactalg import (
    Polynomial,
    SampleSeries,
    as_rational,
    asymptotic_quotient_coefficient,
    count_real_roots,
    interpolate,
    isolate_real_roots,
    refine_root,
)
from .invariants import (
    HilbertData,
    InvariantReport,
    WeightBlock,
    WeightSystem,
    extremal_coeffs,
    fit_hilbert_data,
    futaki,
    inner_product,
    invariant_report,
    project_orthogonal,
    relative_futaki,
    tabulate,
)
from .ruledsurface import (
    RuledSurfaceConfig,
    StabilityVerdict,
    build_weight_system,
    closed_form_relative_futaki,
    critical_parameter,
    find_destabilizer,
    paper_expansion_coefficients,
    stability_quadratic,
    tf_equivalence_check,
)

__version__ = "0.1.0"
