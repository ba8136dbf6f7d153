"""Exact obstruction calculus for group actions on pointed braided data.

Pure-Python, exact arithmetic throughout: Q/Z values are reduced fractions
and all linear algebra is over the integers (Smith normal form).
"""

from .qzlin import QZ, SmithSolver, smith_normal_form, invariant_factors
from .grp import (
    FinGroup,
    GModule,
    GroupHom,
    ModuleHom,
    ShortExactSeq,
    cyclic_group,
    direct_product,
    group_from_invariants,
    supergroup_extension,
)
from .cochain import (
    INT_COEFF,
    QZ_COEFF,
    Cochain,
    LazyCochain,
    ModuleCoeff,
    TrivialityVerdict,
    coboundary,
    cohomology_invariants,
    connecting_map,
    cup_product,
    cyclic_generator_3,
    in_image_upto_coboundary,
    is_cocycle,
    triviality_finite,
    triviality_qz,
)
from .lyndon import ProductSplit, alt_alt_certificate, component_class, lyndon_normalize
from .braidpt import (
    AbelianCocycle,
    check_abelian_cocycle,
    mueger_center,
    quadratic_form,
    rank_four_all,
    rank_four_family,
)
from .fermact import (
    BosonicActionData,
    FermionData,
    builtin_action,
    find_fermions,
    gamma_tilde,
    verify_bosonic_action,
    verify_fermionic_action,
    verify_fermionic_functor,
)
from .obstruct import (
    TwistCocycle,
    alpha_lifting_exists,
    anomaly_verdict,
    o3_fermionic,
    o3_pointed,
    o4_general,
    o4_twisted_identity,
    reproduce_paper,
)

__version__ = "0.1.0"

__all__ = [
    "FinGroup",
    "GModule",
    "GroupHom",
    "ModuleHom",
    "ShortExactSeq",
    "cyclic_group",
    "direct_product",
    "group_from_invariants",
    "supergroup_extension",
    "INT_COEFF",
    "QZ_COEFF",
    "Cochain",
    "LazyCochain",
    "ModuleCoeff",
    "TrivialityVerdict",
    "coboundary",
    "cohomology_invariants",
    "connecting_map",
    "cup_product",
    "cyclic_generator_3",
    "in_image_upto_coboundary",
    "is_cocycle",
    "triviality_finite",
    "triviality_qz",
    "AbelianCocycle",
    "check_abelian_cocycle",
    "mueger_center",
    "quadratic_form",
    "rank_four_all",
    "rank_four_family",
    "BosonicActionData",
    "FermionData",
    "builtin_action",
    "find_fermions",
    "gamma_tilde",
    "verify_bosonic_action",
    "verify_fermionic_action",
    "verify_fermionic_functor",
    "TwistCocycle",
    "alpha_lifting_exists",
    "anomaly_verdict",
    "o3_fermionic",
    "o3_pointed",
    "o4_general",
    "o4_twisted_identity",
    "reproduce_paper",
    "QZ",
    "SmithSolver",
    "smith_normal_form",
    "invariant_factors",
    "ProductSplit",
    "alt_alt_certificate",
    "component_class",
    "lyndon_normalize",
]
