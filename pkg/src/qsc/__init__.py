"""Quantum spherical codes: constellations of coherent states on a sphere,
their design and error-detection analysis, and an independent Fock oracle."""

from .constellation import (
    Constellation,
    PassiveUnitary,
    Point,
    QSCode,
    QscError,
    DimensionMismatchError,
    OrbitOverflowError,
    CodeFormatError,
    Violation,
    chordal_distance,
    code_from_json,
    code_to_json,
    min_separation,
    orbit,
    validate_code,
)
from .moments import (
    BudgetExceededError,
    DesignReport,
    MomentIndex,
    design_strength,
    moment,
    moment_indices,
    monte_carlo_sphere_average,
    sphere_average,
)
from .kl import (
    DetectionReport,
    DetectionRow,
    MonomialError,
    coherent_overlap,
    codeword_norm_sq,
    dephasing_kl_matrix,
    detection_report,
    kl_matrix,
    stirling2,
)
from .symmetries import (
    SymmetryAction,
    VanishingPolynomial,
    classify_symmetry,
    enumerate_phase_symmetries,
    vanishing_ideal,
    verify_jump_annihilates,
)
from .catalog import CatalogEntry, CatalogError, build, list_catalog, symmetry_generators
from .css import ClassicalCodeSpec, CssError, CssProperties, compile_css, css_properties
from .fock import (
    FockConfig,
    KrausCompletenessError,
    QuadratureConvergenceError,
    TruncationError,
    dephasing_channel_fidelity,
    embed_codewords,
    kl_matrix_fock,
    loss_channel_fidelity,
)

__version__ = "0.1.0"
