"""Natural and truncated tensor products of (weak) bimodules.

The tensor space of factors of dimensions m and n carries the fixed basis
ordering (i, j) -> i*n + j.  On it the actions are

  lam_i = lam^M_i (x) I + I (x) lam^N_i
  rho_i = rho^M_i (x) I + I (x) rho^N_i

which always satisfy LLM and LML for weak factors.  For full factors the
MLL defect is measured by the span S of the vectors

  (x.m + m.x) (x) (n.y) + (m.y) (x) (x.n + n.x)

over basis quadruples; the product becomes a genuine bimodule after
factoring the action-closure T of S (bar truncation) or the coarser space
T0 = M0 (x) NL + ML (x) N0 (under truncation).  T is contained in T0 whenever
both factors are full; whether the two ever differ is unresolved, so the
strict-inclusion case is surfaced as a research finding, never assumed away.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LeibnizAlgebra, products_and_series
from .bimodule import (
    Bimodule,
    BimoduleError,
    BimoduleHomCandidate,
    antisymmetrize,
    classify_flags,
    direct_sum,
    kernels_and_invariants,
    quotient,
    subbimodule_closure,
    symmetrize,
    trivial_bimodule,
)
from .linalg import Matrix, Subspace, nullspace, rref_span, vec_add, vec_kron


@dataclass
class TensorBimodule:
    """Bimodule structure on M (x) N plus factor back-references."""

    module: Bimodule
    left: Bimodule
    right: Bimodule

    def flat_index(self, i: int, j: int) -> int:
        return i * self.right.dim + j


def tensor_bimodule(a: Bimodule, b: Bimodule) -> TensorBimodule:
    if a.algebra != b.algebra:
        raise BimoduleError("tensor product needs a common algebra")
    if not (a.is_weak() and b.is_weak()):
        raise BimoduleError("tensor product needs weak factors")
    f = a.field
    im = Matrix.identity(f, a.dim)
    jn = Matrix.identity(f, b.dim)
    lam = [la.kron(jn) + im.kron(lb) for la, lb in zip(a.lam, b.lam)]
    rho = [ra.kron(jn) + im.kron(rb) for ra, rb in zip(a.rho, b.rho)]
    return TensorBimodule(Bimodule(a.algebra, lam, rho), a, b)


def tensor_of_subspaces(u: Subspace, w: Subspace, ambient: int) -> Subspace:
    """Span of pairwise Kronecker products of basis vectors."""
    f = u.field
    vecs = [
        vec_kron(f, x, y) for x in u.basis_vectors() for y in w.basis_vectors()
    ]
    return rref_span(vecs, ambient, f)


def image_subspace(p: Matrix, s: Subspace) -> Subspace:
    return rref_span([p.apply(v) for v in s.basis_vectors()], p.nrows, p.field)


def mll_defect_span(a: Bimodule, b: Bimodule) -> Subspace:
    """S(M, N): generators from basis quadruples; bilinearity in each of
    x, y, m, n makes basis instances sufficient."""
    f = a.field
    alg = a.algebra
    ambient = a.dim * b.dim
    gens = []
    for i in range(alg.dim):
        sum_a = a.lam[i] + a.rho[i]
        sum_b = b.lam[i] + b.rho[i]
        for j in range(alg.dim):
            for va in range(a.dim):
                ma = sum_a.col(va)
                mya = a.rho[j].col(va)
                for vb in range(b.dim):
                    nyb = b.rho[j].col(vb)
                    nb = sum_b.col(vb)
                    gens.append(
                        vec_add(
                            f, vec_kron(f, ma, nyb), vec_kron(f, mya, nb)
                        )
                    )
    return rref_span(gens, ambient, f)


@dataclass
class TruncationData:
    s_span: Subspace
    t: Subspace
    t0: Subspace
    containment_verified: bool

    @property
    def t_equals_t0(self) -> bool:
        return self.t == self.t0


def truncation_kernel(a: Bimodule, b: Bimodule) -> Subspace:
    """T(M, N): action closure of the MLL defect span; defined for weak factors."""
    tensor = tensor_bimodule(a, b)
    s = mll_defect_span(a, b)
    return subbimodule_closure(tensor.module, s.basis_vectors())


def truncation_data(a: Bimodule, b: Bimodule) -> TruncationData:
    if not (a.is_full() and b.is_full()):
        raise BimoduleError("coarse truncation data needs full bimodules")
    ambient = a.dim * b.dim
    s = mll_defect_span(a, b)
    t = truncation_kernel(a, b)
    ka = kernels_and_invariants(a)
    kb = kernels_and_invariants(b)
    t0 = tensor_of_subspaces(ka["M0"], kb["MR"], ambient).sum(
        tensor_of_subspaces(ka["MR"], kb["M0"], ambient)
    )
    contained = t.contains_subspace(s) and t0.contains_subspace(t)
    return TruncationData(s_span=s, t=t, t0=t0, containment_verified=contained)


def trunc_bar(a: Bimodule, b: Bimodule) -> Bimodule:
    """(M (x) N) / T(M, N); available for any weak factors."""
    tensor = tensor_bimodule(a, b)
    return quotient(tensor.module, truncation_kernel(a, b))


def trunc_under(a: Bimodule, b: Bimodule) -> Bimodule:
    """(M (x) N) / T0(M, N); needs full factors."""
    tensor = tensor_bimodule(a, b)
    return quotient(tensor.module, truncation_data(a, b).t0)


def truncation_collapse_check(a: Bimodule, b: Bimodule) -> dict:
    """For a symmetric or anti-symmetric factor, T and T0 collapse to a
    single product subspace; verify the applicable equalities."""
    flags_a = classify_flags(a)
    flags_b = classify_flags(b)
    if not any(
        (flags_a["symmetric"], flags_a["anti_symmetric"],
         flags_b["symmetric"], flags_b["anti_symmetric"])
    ):
        raise BimoduleError("no symmetric or anti-symmetric factor: inapplicable")
    data = truncation_data(a, b)
    ka = kernels_and_invariants(a)
    kb = kernels_and_invariants(b)
    ambient = a.dim * b.dim
    cases = {}
    if flags_a["symmetric"]:
        expected = tensor_of_subspaces(ka["LM"], kb["M0"], ambient)
        cases["left_symmetric"] = data.t == expected and data.t0 == expected
    if flags_a["anti_symmetric"]:
        expected = tensor_of_subspaces(ka["LM"], kb["MR"], ambient)
        cases["left_anti_symmetric"] = data.t == expected and data.t0 == expected
    if flags_b["symmetric"]:
        expected = tensor_of_subspaces(ka["M0"], kb["LM"], ambient)
        cases["right_symmetric"] = data.t == expected and data.t0 == expected
    if flags_b["anti_symmetric"]:
        expected = tensor_of_subspaces(ka["MR"], kb["LM"], ambient)
        cases["right_anti_symmetric"] = data.t == expected and data.t0 == expected
    return {"cases": cases, "all_hold": all(cases.values()), "data": data}


# ---------------------------------------------------------------------------
# monoidal structure morphisms


def flip_matrix(a: Bimodule, b: Bimodule) -> Matrix:
    f = a.field
    m, n = a.dim, b.dim
    z, o = f.zero(), f.one()
    rows = [[z] * (m * n) for _ in range(m * n)]
    for i in range(m):
        for j in range(n):
            rows[j * m + i][i * n + j] = o
    return Matrix(f, rows)


def structural_checks(l: Bimodule, m: Bimodule, n: Bimodule) -> dict:
    """Flip/associator/unit equivariance plus truncation compatibility."""
    out = {}
    tmn = tensor_bimodule(m, n)
    tnm = tensor_bimodule(n, m)
    gamma = flip_matrix(m, n)
    out["flip_is_morphism"] = BimoduleHomCandidate(
        tmn.module, tnm.module, gamma
    ).intertwines()

    left_nested = tensor_bimodule(tensor_bimodule(l, m).module, n).module
    right_nested = tensor_bimodule(l, tensor_bimodule(m, n).module).module
    out["associator_is_morphism"] = (
        left_nested.lam == right_nested.lam and left_nested.rho == right_nested.rho
    )

    triv = trivial_bimodule(l.algebra, 1)
    left_unit = tensor_bimodule(triv, m).module
    right_unit = tensor_bimodule(m, triv).module
    out["units_are_morphisms"] = (
        left_unit.lam == m.lam
        and left_unit.rho == m.rho
        and right_unit.lam == m.lam
        and right_unit.rho == m.rho
    )

    if m.is_full() and n.is_full():
        dmn = truncation_data(m, n)
        dnm = truncation_data(n, m)
        out["flip_descends_to_truncations"] = (
            image_subspace(gamma, dmn.t) == dnm.t
            and image_subspace(gamma, dmn.t0) == dnm.t0
        )
    else:
        out["flip_descends_to_truncations"] = image_subspace(
            gamma, truncation_kernel(m, n)
        ) == truncation_kernel(n, m)

    sum_mn = direct_sum(m, n)
    dims_bar = (
        trunc_bar(l, sum_mn).dim,
        trunc_bar(l, m).dim + trunc_bar(l, n).dim,
    )
    out["distributivity_dims"] = {"bar": dims_bar, "bar_equal": dims_bar[0] == dims_bar[1]}
    if l.is_full() and m.is_full() and n.is_full():
        dims_under = (
            trunc_under(l, sum_mn).dim,
            trunc_under(l, m).dim + trunc_under(l, n).dim,
        )
        out["distributivity_dims"]["under"] = dims_under
        out["distributivity_dims"]["under_equal"] = dims_under[0] == dims_under[1]
    return out


# ---------------------------------------------------------------------------
# the non-associativity construction


def vanishing_functional(alg: LeibnizAlgebra):
    """A nonzero functional annihilating all products, as basis values."""
    info = products_and_series(alg)
    if info["is_perfect"]:
        raise BimoduleError(
            "algebra is perfect: no nonzero functional kills all products"
        )
    span = info["product_span"]
    if span.dim == 0:
        lam = [alg.field.zero()] * alg.dim
        lam[0] = alg.field.one()
        return tuple(lam)
    return nullspace(span.basis).basis_vectors()[0]


def nonassociativity_witness(alg: LeibnizAlgebra) -> dict:
    """Three 1-dimensional bimodules for which the two association orders
    of the truncated products have different dimensions (1 versus 0)."""
    f = alg.field
    lam = vanishing_functional(alg)
    neg = tuple(f.neg(x) for x in lam)
    mk = lambda vals: [Matrix(f, [[v]]) for v in vals]
    left = symmetrize(alg, mk(lam))
    middle = symmetrize(alg, mk(neg))
    right = antisymmetrize(alg, mk(lam))
    out = {"functional": lam, "modules": (left, middle, right)}
    for name, prod in (("bar", trunc_bar), ("under", trunc_under)):
        left_first = prod(prod(left, middle), right).dim
        right_first = prod(left, prod(middle, right)).dim
        out[name] = (left_first, right_first)
    return out
