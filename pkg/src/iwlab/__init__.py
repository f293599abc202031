"""iwlab: exact desk-scale computational algebra for cyclotomic p-adic scalars,
Iwasawa series, finite-group characters, twisted evaluation maps, local
factors, Hom-space regulators, and determinant / relative-K0 identities."""

from .padic import (
    CycloPadic,
    DenominatorOverflow,
    PrecisionContext,
    PrecisionError,
    galois_apply,
    make_root_of_unity,
    valuation,
)
from .series import (
    INFINITY,
    DistinguishedPolynomial,
    SeriesQuotient,
    TruncatedSeries,
    cyclotomic_polys,
    evaluate_quotient,
    interpolate_uniqueness,
    reduce_quotient,
    substitute_twist,
    weierstrass_prepare,
)
from .iwmodules import ElementaryModuleDesc, coinvariant_ranks, elementary_invariants
from .groups import (
    FiniteGroup,
    SubgroupDesc,
    abelian_group,
    alternating_group,
    cyclic_group,
    dicyclic_group,
    dihedral_group,
    direct_product,
    quaternion_group,
    semidirect_product,
    symmetric_group,
)
from .characters import (
    Character,
    GroupAlgebraElement,
    brauer_decompose,
    character_table,
    character_transform,
    elementary_subgroups,
    idempotent,
    inner_product,
    project_idempotent,
)
from .tower import (
    ArtinCharacter,
    AttestedTower,
    LieTower,
    PlaceDatum,
    SplitTower,
    TypeWCharacter,
    coinvariant_kernel_order,
    e_chi,
    galois_transport,
    n_of_s,
    twisted_evaluate,
    uniqueness_from_twists,
    w_chi,
    w_equivalent,
    xy_modules,
)
from .lfactors import LocalDatum, euler_delta_at0, order_of_vanishing
from .regulators import (
    RegulatorProblem,
    RepresentationModule,
    hom_basis,
    irreducible_representation,
    regulator_det,
    regulator_layer_invariance,
)
from .ktheory import (
    DetGenerator,
    FreeModuleMap,
    FreeModuleRanks,
    ProductRing,
    RelK0Element,
    TrivializedComplex,
    additivity_iso,
    boundary_and_nr,
    det_of_map,
    dual_generator,
    dual_inverse_check,
    rec_class,
)
from .report import Report, SuiteConfig, emit_report
from .suites import run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
