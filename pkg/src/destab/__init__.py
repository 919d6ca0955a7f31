"""Exact toolkit for destabilizing one-parameter subgroups over the rationals.

Computes limits of points along cocharacters, membership in R-parabolic
subgroups and their Levi/radical decompositions, optimal destabilizing
cocharacters and parabolics for uniform instability into a stable
subvariety, and complete reducibility of matrix subgroups and Lie
subalgebras of split GL/SL products.  All arithmetic is exact rational.
"""

from .errors import (
    DestabError,
    DimensionError,
    DomainError,
    InvariantViolation,
    LimitMembershipError,
    ModeError,
    PreconditionError,
    SchemaError,
    UnsupportedError,
    UnsupportedGroupError,
    UnsupportedRepresentationError,
)
from .groups import (
    Character,
    Cocharacter,
    Factor,
    GroupSpec,
    Norm,
    TorusCocharacter,
    norm_sq,
    pairing,
    weyl_conjugate,
)
from .reps import (
    ConjugationTuples,
    DirectSum,
    Grading,
    Point,
    Polynomial,
    Representation,
    SymPower,
    adjoint,
    grade,
    isotypic_decompose,
    limit,
    support,
)
from .parabolic import (
    MembershipClass,
    ParabolicDescriptor,
    c_lambda,
    classify,
    combine,
    composition_threshold,
    find_ru_conjugator,
    lie_c_lambda,
    lie_classify,
)
from .instability import (
    NOT_WITNESSED,
    OPTIMAL,
    TRIVIAL,
    CocharClosedVerdict,
    OptimizationResult,
    SearchConfig,
    SubvarietyKind,
    SubvarietySpec,
    VanishingOrder,
    admits_limit_set,
    is_cochar_closed,
    nearest_point_interior,
    optimize,
    optimize_torus,
    vanishing_order,
)
from .gcr import (
    COMPLETELY_REDUCIBLE,
    NOT_COMPLETELY_REDUCIBLE,
    CentreSimplex,
    EnvelopingAlgebra,
    GcrVerdict,
    LieSubalgebra,
    SubgroupPresentation,
    building_centre,
    centralizer_dim,
    enveloping_algebra,
    is_gcr_algebra,
    is_gcr_search,
    is_generic_tuple,
    lie_is_gcr,
    optimal_parabolic_subgroup,
    radical_dim,
    reduce_to_gcr,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
