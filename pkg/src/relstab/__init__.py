"""relstab: exact finite-field computations in stable module and chain-homotopy categories.

The package builds precovering-family resolutions of objects in two
Frobenius contexts (kG-modules and bounded complexes of F_p spaces), runs
the iterated-cone approximation ladder to a localization triangle
X_R -> X -> X_{R-perp}, and verifies the induced stable-hom isomorphisms
exactly, with independent oracles backing every computed quantity.
"""

from .linalg import (
    Mat,
    PrimeField,
    direct_sum_mat,
    kernel_basis,
    kronecker,
    mat_mul,
    rank,
    rref,
    solve_linear,
)
from .groups import (
    FiniteGroup,
    SubgroupEmbedding,
    build_named,
    check_cayley,
    cyclic,
    dihedral,
    direct_product,
    from_permutations,
    klein_four,
    subgroup_generated,
)
from .modctx import (
    GModule,
    GModuleHom,
    cokernel_with_projection,
    counit_hom,
    direct_sum_modules,
    hom_basis,
    induce,
    jordan_module,
    kernel_with_inclusion,
    module_from_action,
    named_module,
    random_module,
    regular_module,
    restrict,
    trivial_module,
)
from .chctx import (
    ChainMap,
    FComplex,
    chain_hom_basis,
    complex_from_data,
    disk,
    disk_embedding,
    homology_dims,
    nullhomotopy_solve,
    random_complex,
    shift,
    sphere,
    truncation_W,
)
from .contexts import ComplexContext, ModuleContext
from .stable import (
    FrobeniusContext,
    StableHomSpace,
    Triangle,
    cone_triangle,
    desuspend,
    induced_stable_matrix,
    is_stably_zero_map,
    is_stably_zero_object,
    les_exact_check,
    stable_hom,
    suspend,
)
from .precover import (
    AddListSystem,
    CapReached,
    FiniteDim,
    Resolution,
    SubgroupInducedSystem,
    TruncationSystem,
    build_resolution,
    check_hypotheses,
    is_member,
    precover_of,
)
from .localize import (
    Ladder,
    LocalizationTriangle,
    VerificationReport,
    adjoint_values,
    build_ladder,
    localization_triangle,
    remark_iii_check,
    synthetic_ladder,
    verify_localization,
)
from .oracle import (
    OracleReport,
    hom_basis_bruteforce,
    homology_stablehom_oracle,
    phom_dual_route,
)
from .rng import SplitMix64

__version__ = "0.1.0"
