"""Bass numbers, Ext/Tor maps and stable cohomology over graded-local rings.

Rings are quotients k[x]/I of polynomial rings by homogeneous ideals inside
the square of the maximal ideal, over a prime field or Q.
"""

__version__ = "0.1.0"

from .errors import (
    AlgebraError,
    BadPrime,
    DegreeOverflow,
    FieldMismatch,
    HypothesisViolated,
    InputError,
    LinearRelation,
    MismatchedV,
    NonHomogeneous,
    NonUnitConstantTerm,
    NotFree,
    NotHypersurface,
    NotStabilized,
    NotWellDefined,
    Undetermined,
    Unsupported,
    WindowExhausted,
    WindowUnstable,
)
from .field import Field
from .groebner import groebner_basis, minimal_generators, normal_form, syzygies
from .rings import GradedRing, hilbert_series, krull_dimension, validate_ring
from .modules import (
    GradedModule,
    ModuleMap,
    cokernel,
    direct_sum,
    free_module,
    identity_map,
    image,
    intersect_max_ideal,
    kernel_of_map,
    max_ideal_times,
    minimal_presentation,
    quotient_module,
    residue_field,
    syzygies_over_R,
    top_quotient,
)
from .resolution import (
    FreeComplex,
    betti_numbers,
    graded_betti_numbers,
    koszul_complex,
    minimal_free_resolution,
    pd_certificate,
)
from .homology import (
    bass_numbers,
    epsilon_map,
    ext_k,
    free_summand_test,
    induced_ext_map,
    induced_tor_map,
    tor_k,
    window_settings,
)
from .stable import additivity_check, complete_resolution, eta_map, matrix_factorization, stable_ext
from .series import TruncatedSeries, bass_series, poincare_series
from .fiber import fiber_module, fiber_ring
from .checks import (
    CheckReport,
    check_bass_decomposition,
    check_closed_formula,
    check_fiber_bass,
    check_lescot_transfer,
    check_regular_remark,
    check_tor_corollary,
    check_zero_map_theorem,
    regularity_report,
)
