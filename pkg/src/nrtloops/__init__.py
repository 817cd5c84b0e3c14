"""Normalized right transversals of finite-group subgroups and the right
loops they induce, with classification up to isomorphism and isotopy.

The package builds finite groups from Cayley tables or standard
constructors, enumerates the normalized right transversals of a subgroup,
folds each one into a right loop on coset positions, and decides
isomorphism and isotopy of those loops with verified witnesses. The flips
and burnside modules specialize to reflection subgroups of dihedral
groups, where the isotopy classes are governed by affine maps on residues
and counted exactly by a cycle-index formula.
"""

from .burnside import (
    AffineMap,
    CycleIndex,
    affine_cycle_index,
    affine_maps,
    cycle_index_from_permutations,
    dihedral_isotopy_count,
    euler_phi,
    evaluate_cycle_index,
    format_cycle_index,
    is_prime,
    subset_orbit_count,
    subset_orbit_count_naive,
    subset_orbits,
)
from .checks import (
    CHECK_IDS,
    CatalogEntry,
    CheckReport,
    default_catalog,
    load_catalog,
    run_suite,
    suite_passed,
)
from .flips import (
    CensusResult,
    FlipSet,
    affine_families,
    affine_family,
    dihedral_transversal,
    flip_loop,
    loop_transversal_census,
    predicted_left_nonsingular,
)
from .groups import (
    CayleyFileError,
    CosetDecomposition,
    FiniteGroup,
    GroupError,
    Subgroup,
    alternating_group,
    build_named_group,
    center,
    core,
    cyclic_group,
    derived_subgroup,
    dihedral_group,
    dumps_cayley,
    element_index,
    generated_subgroup,
    is_nilpotent,
    is_normal,
    is_solvable,
    load_cayley_file,
    loads_cayley,
    parse_subgroup,
    quotient,
    right_cosets,
    subgroup,
    symmetric_group,
    trivial_subgroup,
)
from .isotopy import (
    AutotopyGroup,
    ClassPartition,
    IsotopyWitness,
    NotLeftNonsingularError,
    OrderTooLargeError,
    are_isomorphic,
    are_isotopic,
    autotopy_group,
    brute_force_isotopy_oracle,
    classify,
    isomorphisms,
    principal_isotope,
    principal_isotope_with_relabel,
    pseudo_automorphism_check,
    pseudo_autotopy_triple,
)
from .perms import (
    compose,
    cycle_decomposition,
    cycle_type,
    format_cycles,
    identity_perm,
    invert,
    parse_cycles,
    perm_order,
    perm_parity,
)
from .rightloops import (
    ColumnNotBijectiveError,
    NotIdentityError,
    PermutationGroup,
    RightLoop,
    RightLoopError,
    StructureFlags,
    group_torsion,
    is_associative,
    left_nonsingular_elements,
    loads_table,
    loop_from_json,
    loop_to_json,
    structure_flags,
    torsion_envelope,
    dumps_table,
    validate_right_loop,
)
from .transversals import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationTooLargeError,
    Transversal,
    coset_action,
    enumerate_transversals,
    induced_right_loop,
    make_transversal,
    project_transversal,
    transversal_count,
    transversal_from_elements,
)

__version__ = "0.1.0"
