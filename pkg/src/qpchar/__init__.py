"""Characters of principal subspaces of rectangular-weight standard modules
for B_l, C_l, F4 and G2, computed by basis enumeration and by the fermionic sum."""

from .affine import AlgebraData, WeightSpec, delta_shift, make_algebra, make_weight
from .basis import BasisCensus, census_coefficient, enumerate_basis
from .errors import CoefficientOverflow, ConfigError, InternalInconsistency, UnsoundTruncation
from .fermionic import (
    QuadraticForm,
    build_quadratic_form,
    check_positive_definite,
    fermionic_character,
)
from .qseries import (
    TruncatedSeries,
    UniSeries,
    partition_count_oracle,
    pochhammer_inverse,
    series_add,
    series_scale_shift,
)
from .quasiparticle import (
    Monomial,
    compare,
    conjugate,
    conjugate_inverse,
    cross_term_dual,
    cross_term_min,
    energy_bound,
    identity_uvjet1,
    linear_term,
    minimal_energy,
    satisfies_difference_conditions,
    saturated_monomial,
)
from .verify import verify_character

__version__ = "0.1.0"
