"""Exact construction, validation and classification of complete flat affine tori."""

from .affine import (
    AffineMap,
    AffineVectorField,
    FixedPoint,
    NoFixedPoint,
    affine_exp,
    affine_log,
    compose,
    fixed_point,
    group_commutator,
    linearize,
    power_word,
)
from .linalg import (
    LinearStructure,
    Matrix,
    StructureKind,
    Vector,
    commute,
    is_nilpotent,
    is_structure_linear,
    is_unipotent,
    nilpotent_exp,
    nilpotent_log,
    nullspace,
    validate_structure,
)
from .obstruction import (
    PsiTensor,
    build_psi,
    constrained_tensor_space_dim,
    obata_uniqueness_dim,
    prove_trivial,
    psi_structure_linear,
    psi_symmetric,
)
from .torus import (
    FlatAffineTorusSpec,
    GalleryNegative,
    build_flag,
    check_free,
    check_lattice,
    classify,
    gallery,
    orbit_sample,
    validate_spec,
)

__version__ = "0.1.0"
