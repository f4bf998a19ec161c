"""Exact-arithmetic toolkit for finite-dimensional Leibniz algebras.

Submodules
----------
fields, linalg   exact scalars, matrices, subspaces
algebra          structure-constant Leibniz algebras and builders
bimodule         two-sided modules, axiom reports, constructions
chop             composition series and the brute-force subspace oracle
tensor           natural and truncated tensor products
envelope         degree-truncated presented enveloping algebras
groth            symbolic Grothendieck fusion rings and identity checkers
cli              command-line interface (``leibniz ...``)

The most commonly used names are re-exported here for interactive work.
"""

from .algebra import (
    LeibnizAlgebra,
    builtin_algebra,
    canonical_lie,
    hemi_semidirect,
    leibniz_kernel,
    make_A,
    make_N,
    make_S,
    make_abelian,
    make_e,
    make_sl2,
    products_and_series,
)
from .bimodule import (
    Bimodule,
    adjoint,
    antisymmetrize,
    dual,
    hom_bimodule,
    one_dim_bimodule,
    symmetrize,
    trivial_bimodule,
)
from .chop import bruteforce_invariant_subspaces, chop
from .fields import FF, QQ, Field
from .tensor import tensor_bimodule, trunc_bar, trunc_under, truncation_data

__version__ = "0.1.0"

__all__ = [
    "Bimodule",
    "FF",
    "Field",
    "LeibnizAlgebra",
    "QQ",
    "adjoint",
    "antisymmetrize",
    "bruteforce_invariant_subspaces",
    "builtin_algebra",
    "canonical_lie",
    "chop",
    "dual",
    "hemi_semidirect",
    "hom_bimodule",
    "leibniz_kernel",
    "make_A",
    "make_N",
    "make_S",
    "make_abelian",
    "make_e",
    "make_sl2",
    "one_dim_bimodule",
    "products_and_series",
    "symmetrize",
    "tensor_bimodule",
    "trivial_bimodule",
    "trunc_bar",
    "trunc_under",
    "truncation_data",
]
