"""Composition series of bimodules at desk scale, plus an exhaustive oracle.

Strategies, tried in order on each piece:

1. weight peeling: a common eigenvector of all action matrices spans a
   1-dimensional subbimodule; peel it and recurse on the quotient.
   Certified (each step is an explicit invariant line).
2. highest-weight decomposition when the algebra is the builtin sl2 (or
   its hemi-semidirect extension) and the bimodule is full: split off the
   anti-symmetric kernel, then peel irreducibles of the left module by
   maximal h-eigenvalue.  Certified.
3. generic spin: close probe vectors (basis vectors, eigenvectors and
   null vectors of seeded pseudorandom algebra elements, and transposed
   probes) under the actions and recurse on any proper invariant
   subspace found.  Over a small prime field the probe set is all lines,
   which makes a no-split outcome a proof of irreducibility; over Q a
   leaf of dimension > 1 stays uncertified.

``bruteforce_invariant_subspaces`` enumerates every subspace of F_p^m in
row-echelon normal form and filters for invariance; it is deliberately
independent of the spin machinery so the two can check each other.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .algebra import LeibnizAlgebra, make_S, make_sl2
from .bimodule import (
    Bimodule,
    BimoduleError,
    classify_flags,
    is_invariant,
    kernels_and_invariants,
    quotient,
    restrict,
    subbimodule_closure,
)
from .linalg import (
    Matrix,
    Subspace,
    determinant,
    eigenvalues_in_field,
    eigenspace,
    nullspace,
    rref_span,
    unit_vector,
)

EXHAUSTIVE_LINE_LIMIT = 1500  # lines (p^d - 1)/(p - 1) worth spinning exhaustively


@dataclass(frozen=True)
class FactorInfo:
    dim: int
    symmetric: bool
    anti_symmetric: bool
    trivial: bool
    left_traces: tuple
    right_traces: tuple
    left_scalars: tuple | None  # populated for 1-dimensional factors
    right_scalars: tuple | None
    certified: bool

    @property
    def signature(self) -> tuple:
        return (
            self.dim,
            self.symmetric,
            self.anti_symmetric,
            self.left_traces,
            self.right_traces,
        )


@dataclass
class CompositionReport:
    factors: list
    strategy: str
    certified: bool

    def signature_multiset(self):
        return sorted(
            (f.signature for f in self.factors), key=lambda s: repr(s)
        )

    @property
    def dims(self):
        return [f.dim for f in self.factors]


def factor_info(mod: Bimodule, certified: bool) -> FactorInfo:
    flags = classify_flags(mod)
    scalars = None
    rscalars = None
    if mod.dim == 1:
        scalars = tuple(m.rows[0][0] for m in mod.lam)
        rscalars = tuple(m.rows[0][0] for m in mod.rho)
    return FactorInfo(
        dim=mod.dim,
        symmetric=flags["symmetric"],
        anti_symmetric=flags["anti_symmetric"],
        trivial=flags["trivial"],
        left_traces=tuple(m.trace() for m in mod.lam),
        right_traces=tuple(m.trace() for m in mod.rho),
        left_scalars=scalars,
        right_scalars=rscalars,
        certified=certified,
    )


# ---------------------------------------------------------------------------
# strategy 1: common eigenvectors


def common_eigenvector(mats, field, ambient: int):
    """A vector that is an eigenvector of every matrix, or None.

    Depth-first over the eigenvalues each matrix has in the ground field,
    intersecting eigenspaces as we go.  A nonzero joint intersection at
    the end is exactly a line of common eigenvectors.
    """
    mats = list(mats)
    eigdata = [
        [(ev, eigenspace(m, ev)) for ev in eigenvalues_in_field(m)] for m in mats
    ]

    def search(space: Subspace, idx: int) -> Subspace | None:
        if space.dim == 0:
            return None
        if idx == len(mats):
            return space
        for _, espace in eigdata[idx]:
            found = search(space.intersect(espace), idx + 1)
            if found is not None:
                return found
        return None

    space = search(Subspace.full(field, ambient), 0)
    if space is None or space.dim == 0:
        return None
    return space.basis_vectors()[0]


# ---------------------------------------------------------------------------
# strategy 2: sl2 highest-weight peeling


def sl2_triple_indices(alg: LeibnizAlgebra):
    """Indices of an (e, h, f) triple when the algebra is the builtin sl2
    or its hemi-semidirect extension; None otherwise."""
    f = alg.field
    if f.characteristic == 2:
        return None
    try:
        if alg == make_sl2(f) or alg == make_S(f):
            return (0, 1, 2)
    except Exception:
        return None
    return None


def _left_module_highest_weights(e: Matrix, h: Matrix, fmat: Matrix, field):
    """Highest weights of a finite-dimensional sl2 left module, by peeling
    the irreducible generated by a maximal-weight vector."""
    weights = []
    while e.nrows > 0:
        d = e.nrows
        ident = Matrix.identity(field, d)
        n = None
        for k in range(d - 1, -1, -1):
            if determinant(h - ident.scale(field.from_int(k))) == field.zero():
                n = k
                break
        if n is None:
            raise BimoduleError(
                "h-action has no non-negative integer eigenvalue: "
                "not an sl2 module over this field"
            )
        v = eigenspace(h, field.from_int(n)).basis_vectors()[0]
        chain = [v]
        for _ in range(n):
            chain.append(fmat.apply(chain[-1]))
        space = rref_span(chain, d, field)
        if space.dim != n + 1:
            raise BimoduleError("highest-weight string collapsed unexpectedly")
        keep = space.complement_coords()

        def project(m: Matrix) -> Matrix:
            cols = [
                space.project_to_quotient(m.apply(unit_vector(field, d, j)))
                for j in keep
            ]
            return Matrix(
                field,
                [[cols[j][i] for j in range(len(keep))] for i in range(len(keep))],
            )

        weights.append(n)
        e, h, fmat = project(e), project(h), project(fmat)
    return weights


def _sl2_chop(mod: Bimodule, triple) -> list:
    field = mod.field
    flags = classify_flags(mod)
    ei, hi, fi = triple
    if flags["symmetric"] or flags["anti_symmetric"]:
        weights = _left_module_highest_weights(
            mod.lam[ei], mod.lam[hi], mod.lam[fi], field
        )
        factors = []
        from .algebra import sl2_module_matrices
        from .bimodule import antisymmetrize, symmetrize

        base = make_sl2(field) if mod.algebra == make_sl2(field) else None
        for n in weights:
            mats = sl2_module_matrices(field, n)
            if base is None:
                # hemi extension: pad with zero left action on the kernel part
                mats = mats + [Matrix.zeros(field, n + 1, n + 1)] * (
                    mod.algebra.dim - 3
                )
            if flags["anti_symmetric"] and not (
                flags["symmetric"] and flags["anti_symmetric"]
            ):
                factor = antisymmetrize(mod.algebra, mats)
            else:
                factor = symmetrize(mod.algebra, mats)
            factors.append(factor_info(factor, certified=True))
        return factors
    kernel = kernels_and_invariants(mod)["M0"]
    anti_part = restrict(mod, kernel)
    sym_part = quotient(mod, kernel)
    return _sl2_chop(anti_part, triple) + _sl2_chop(sym_part, triple)


# ---------------------------------------------------------------------------
# strategy 3: spinning probe vectors


def _all_lines(field, dim: int):
    """One representative per 1-dimensional subspace of F_p^dim."""
    p = field.characteristic
    nonzero = list(range(p))
    for first in range(dim):
        # first nonzero coordinate normalized to 1
        tail_len = dim - first - 1
        for tail in itertools.product(nonzero, repeat=tail_len):
            yield (0,) * first + (1,) + tail


def _proper_spin(mod: Bimodule, vectors) -> Subspace | None:
    for v in vectors:
        if all(x == mod.field.zero() for x in v):
            continue
        space = subbimodule_closure(mod, [v])
        if 0 < space.dim < mod.dim:
            return space
    return None


def _random_elements(mod: Bimodule, rng: random.Random, count: int):
    mats = list(mod.lam) + list(mod.rho)
    out = []
    for _ in range(count):
        acc = Matrix.zeros(mod.field, mod.dim, mod.dim)
        for m in mats:
            c = rng.randint(-2, 2)
            if c:
                acc = acc + m.scale(mod.field.from_int(c))
        if rng.random() < 0.4 and len(mats) >= 2:
            a, b = rng.sample(mats, 2)
            acc = acc + a * b
        out.append(acc)
    return out


def _spin_chop(mod: Bimodule, rng: random.Random) -> tuple[list, bool]:
    field = mod.field
    d = mod.dim
    if d == 0:
        return [], True
    if d == 1:
        return [factor_info(mod, certified=True)], True

    exhaustive = False
    probes = [unit_vector(field, d, i) for i in range(d)]
    p = field.characteristic
    if p > 0 and (p**d - 1) // (p - 1) <= EXHAUSTIVE_LINE_LIMIT:
        probes = list(_all_lines(field, d))
        exhaustive = True

    found = _proper_spin(mod, probes)

    if found is None and not exhaustive:
        extra = []
        for theta in _random_elements(mod, rng, 6):
            for ev in eigenvalues_in_field(theta):
                extra.extend(eigenspace(theta, ev).basis_vectors())
        found = _proper_spin(mod, extra)

    if found is None and not exhaustive:
        # look for invariant subspaces of the transposed actions; the
        # annihilator of such a subspace is invariant for the originals
        transposed = Bimodule(
            mod.algebra,
            [m.transpose() for m in mod.lam],
            [m.transpose() for m in mod.rho],
        )
        tprobes = [unit_vector(field, d, i) for i in range(d)]
        tfound = _proper_spin(transposed, tprobes)
        if tfound is not None:
            found = nullspace(tfound.basis)

    if found is None:
        return [factor_info(mod, certified=exhaustive)], exhaustive

    sub_factors, sub_cert = _spin_chop(restrict(mod, found), rng)
    quot_factors, quot_cert = _spin_chop(quotient(mod, found), rng)
    return sub_factors + quot_factors, sub_cert and quot_cert


# ---------------------------------------------------------------------------
# driver


def chop(mod: Bimodule, seed: int = 0) -> CompositionReport:
    """Composition factors of a bimodule, with a certification flag.

    Weak-but-not-full inputs are allowed but never certified.
    """
    if not mod.is_weak():
        raise BimoduleError("chop needs at least a weak bimodule")
    rng = random.Random(seed)
    strategies = []

    def recurse(m: Bimodule) -> tuple[list, bool]:
        if m.dim == 0:
            return [], True
        mats = list(m.lam) + list(m.rho)
        vec = common_eigenvector(mats, m.field, m.dim)
        if vec is not None:
            if "weight" not in strategies:
                strategies.append("weight")
            line = rref_span([vec], m.dim, m.field)
            head = factor_info(restrict(m, line), certified=True)
            tail, cert = recurse(quotient(m, line))
            return [head] + tail, cert
        triple = sl2_triple_indices(m.algebra)
        if triple is not None and m.is_full():
            if "sl2" not in strategies:
                strategies.append("sl2")
            return _sl2_chop(m, triple), True
        if "spin" not in strategies:
            strategies.append("spin")
        return _spin_chop(m, rng)

    factors, certified = recurse(mod)
    if not mod.is_full():
        certified = False
    if sum(f.dim for f in factors) != mod.dim:
        raise BimoduleError("factor dimensions fail to sum to the module dimension")
    return CompositionReport(
        factors=factors,
        strategy="+".join(strategies) if strategies else "trivial",
        certified=certified,
    )


# ---------------------------------------------------------------------------
# the exhaustive oracle


def bruteforce_invariant_subspaces(
    mod: Bimodule, max_dim: int = 4, max_p: int = 7
) -> list[Subspace]:
    """All subspaces of F_p^m invariant under every action matrix, found
    by enumerating every subspace in echelon normal form.  Bounded on
    purpose: the count grows like p^(dim^2/4)."""
    field = mod.field
    p = field.characteristic
    if p == 0:
        raise BimoduleError("subspace enumeration needs a prime field")
    if p > max_p or mod.dim > max_dim:
        raise BimoduleError(
            f"enumeration bounds exceeded (p <= {max_p}, dim <= {max_dim})"
        )
    d = mod.dim
    out = []
    for r in range(d + 1):
        for pivots in itertools.combinations(range(d), r):
            free_positions = [
                (i, j)
                for i in range(r)
                for j in range(d)
                if j > pivots[i] and j not in pivots
            ]
            for values in itertools.product(range(p), repeat=len(free_positions)):
                rows = [[field.zero()] * d for _ in range(r)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = field.one()
                for (i, j), val in zip(free_positions, values):
                    rows[i][j] = field.from_int(val)
                space = Subspace(
                    field, d, Matrix(field, rows) if rows else Matrix.zeros(field, 0, d), pivots
                )
                if is_invariant(mod, space):
                    out.append(space)
    return out


def oracle_composition_factors(mod: Bimodule, lattice=None) -> list[FactorInfo]:
    """Composition factors read off a maximal chain in the lattice of
    invariant subspaces (any maximal chain works, by Jordan-Hoelder)."""
    if lattice is None:
        lattice = bruteforce_invariant_subspaces(mod)
    factors = []
    current = Subspace.zero(mod.field, mod.dim)
    while current.dim < mod.dim:
        step = min(
            (
                w
                for w in lattice
                if w.dim > current.dim and w.contains_subspace(current)
            ),
            key=lambda w: w.dim,
        )
        quot = quotient(mod, current)
        image = rref_span(
            [current.project_to_quotient(v) for v in step.basis_vectors()],
            quot.dim,
            mod.field,
        )
        factors.append(factor_info(restrict(quot, image), certified=True))
        current = step
    return factors
