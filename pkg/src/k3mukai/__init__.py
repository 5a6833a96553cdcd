"""Exact Mukai-lattice arithmetic for K3 surfaces.

Integer-exact tools for the lattice side of moduli of sheaves on a K3:
Mukai vectors and their pairing, the Beauville-Bogomolov form on the
Hilbert scheme of points, isotropic-class search (the numerical fibration
criterion), the Mukai-dual surface's numeric data, and sound equivalence
testing of integral binary quadratic forms.
"""

from .bb import (
    BBClass,
    BBLattice,
    IsotropicSearch,
    bb_square,
    find_isotropic,
    fujiki_degree,
    isotropic_exists,
    perp_basis,
    vperp_gram,
)
from .checks import (
    CheckResult,
    brill_noether_data,
    double_dual_square,
    extension_square,
    kernel_square,
    tensor_degree_check,
    torsion_degree,
)
from .dual_surface import (
    ConstraintSolution,
    CriterionReport,
    DualSurfaceReport,
    FibrationHit,
    QuotientClass,
    TransformConstraintFamily,
    build_dual,
    general_fibration_criterion,
    quotient_lattice,
    solve_transform_constraints,
    unit_pairing,
    verify_solution,
)
from .mukai import (
    MukaiVector,
    NSGram,
    Polarization,
    dual,
    euler_characteristic,
    fineness_gcd,
    is_primitive,
    moduli_dimension,
    pairing,
    slope,
    square,
)
from .quadforms import (
    EquivalenceResult,
    PicardSchemeForm,
    QuadForm2,
    equivalent,
    gen_picard_determinant,
    hilb_picard_form,
    picard_scheme_form,
)

__version__ = "0.1.0"
