"""Filtered representations attached to equivariant vector bundles on regular embeddings."""

from .catops import (
    classify_pgl2,
    hom_c,
    is_isomorphic,
    kostant_check,
    kostant_embedding,
    minimal_rep_dim,
    split_check,
)
from .fans import make_fan, sigma0, validate_fan
from .filtobj import (
    f_can,
    f_max,
    f_null,
    make_object,
    tangent_bundle,
    twist,
    validate,
)
from .picard import divisor_of_weight, kappa, pic_group
from .repcore import adjoint_rep, freudenthal, highest_weight_submodule, irrep, weyl_dim
from .rootdata import CartanType, build_root_datum

__version__ = "0.1.0"

__all__ = [
    "CartanType",
    "adjoint_rep",
    "build_root_datum",
    "classify_pgl2",
    "divisor_of_weight",
    "f_can",
    "f_max",
    "f_null",
    "freudenthal",
    "highest_weight_submodule",
    "hom_c",
    "irrep",
    "is_isomorphic",
    "kappa",
    "kostant_check",
    "kostant_embedding",
    "make_fan",
    "make_object",
    "minimal_rep_dim",
    "pic_group",
    "sigma0",
    "split_check",
    "tangent_bundle",
    "twist",
    "validate",
    "validate_fan",
    "weyl_dim",
]
