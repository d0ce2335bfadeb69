"""Right transversals of finite groups, the right loops they induce, and
exhaustive checks of structural results about their group torsion."""

from .catalog import catalog, catalog_listing, parse_group_ref
from .groups import (
    FiniteGroup,
    PermGroup,
    Permutation,
    Subgroup,
    all_subgroups,
    core,
    is_core_free,
    is_elementary_abelian_2,
    make_group_from_permutations,
    make_group_from_table,
    normalizer,
    perm_group,
    perm_normalizer,
    right_cosets,
    stabilizer,
    subgroup_generated,
)
from .rightloop import (
    LoopRelation,
    RightLoop,
    TorsionData,
    congruences,
    f_map,
    invariant_subloops,
    is_associative,
    is_congruence,
    loop_isomorphic,
    quotient,
    sigma,
    torsion,
    validate_right_loop,
)
from .transversal import (
    Transversal,
    enumerate_transversals,
    find_generating_transversal,
    induced_loop,
    is_generating,
    stab_H,
    theta_action,
)

__version__ = "0.1.0"
