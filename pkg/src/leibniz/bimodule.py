"""Two-sided modules over a Leibniz algebra as matrix pairs.

A bimodule on F^m is a pair of families (lam_i, rho_i) of m x m matrices,
one per algebra basis element, acting on the left and right.  The three
compatibility axioms, as operator identities per basis pair (x, y):

  (LLM)  lam_{xy} = lam_x lam_y - lam_y lam_x
  (LML)  rho_{xy} = lam_x rho_y - rho_y lam_x
  (MLL)  rho_y rho_x = rho_{xy} - lam_x rho_y
  (ZD)   rho_y (lam_x + rho_x) = 0        (equivalent to MLL given LML)

"weak" means LLM + LML; "full" adds MLL.  Everything downstream (tensor
products, truncations, composition series, Grothendieck classes) builds on
the constructions in this module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import LeibnizAlgebra, mult_ops
from .fields import Field
from .linalg import (
    LinAlgError,
    Matrix,
    Subspace,
    invert,
    nullspace,
    rref_span,
    unit_vector,
)


class BimoduleError(ValueError):
    pass


@dataclass(frozen=True)
class AxiomReport:
    llm: bool
    lml: bool
    mll: bool
    zd: bool
    first_failure: tuple | None  # (axiom name, i, j)

    @property
    def kind(self) -> str:
        if self.llm and self.lml:
            return "full" if self.mll else "weak"
        return "left-only" if self.llm else "none"


class Bimodule:
    """Matrix realization of a two-sided module; immutable after creation."""

    def __init__(self, algebra: LeibnizAlgebra, lam, rho):
        self.algebra = algebra
        self.lam = tuple(lam)
        self.rho = tuple(rho)
        if len(self.lam) != algebra.dim or len(self.rho) != algebra.dim:
            raise BimoduleError("one action matrix per algebra basis element")
        dims = {m.shape for m in self.lam + self.rho}
        if len(dims) > 1:
            raise BimoduleError("action matrices of unequal sizes")
        shape = dims.pop() if dims else (0, 0)
        if shape[0] != shape[1]:
            raise BimoduleError("action matrices must be square")
        self.dim = shape[0]
        self._report: AxiomReport | None = None

    @property
    def field(self) -> Field:
        return self.algebra.field

    def axiom_report(self) -> AxiomReport:
        if self._report is None:
            self._report = axiom_report(self)
        return self._report

    @property
    def kind(self) -> str:
        return self.axiom_report().kind

    def is_weak(self) -> bool:
        r = self.axiom_report()
        return r.llm and r.lml

    def is_full(self) -> bool:
        r = self.axiom_report()
        return r.llm and r.lml and r.mll

    def left_action(self, x_coords, v):
        """Action of the algebra element with coordinates ``x_coords``."""
        f = self.field
        out = (f.zero(),) * self.dim
        for i, c in enumerate(x_coords):
            if c != f.zero():
                img = self.lam[i].apply(v)
                out = tuple(f.add(a, f.mul(c, b)) for a, b in zip(out, img))
        return out

    def right_action(self, v, x_coords):
        f = self.field
        out = (f.zero(),) * self.dim
        for i, c in enumerate(x_coords):
            if c != f.zero():
                img = self.rho[i].apply(v)
                out = tuple(f.add(a, f.mul(c, b)) for a, b in zip(out, img))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Bimodule)
            and self.algebra == other.algebra
            and self.lam == other.lam
            and self.rho == other.rho
        )

    def __repr__(self):
        return f"Bimodule(dim {self.dim} over {self.algebra!r})"

    def to_json(self) -> str:
        f = self.field
        fmt = lambda m: [[f.format(x) for x in row] for row in m.rows]
        doc = {
            "algebra": json.loads(self.algebra.to_json()),
            "dim": self.dim,
            "lambda": [fmt(m) for m in self.lam],
            "rho": [fmt(m) for m in self.rho],
        }
        return json.dumps(doc, indent=2)

    @staticmethod
    def from_json(text: str, algebra: LeibnizAlgebra | None = None) -> "Bimodule":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise BimoduleError(f"bimodule JSON parse error: {exc}") from None
        if algebra is None:
            alg_doc = doc.get("algebra")
            if alg_doc is None:
                raise BimoduleError("bimodule document carries no algebra")
            if isinstance(alg_doc, str):
                # the algebra entry may be a path to an algebra file
                try:
                    with open(alg_doc, encoding="utf-8") as fh:
                        algebra = LeibnizAlgebra.from_json(fh.read())
                except OSError as exc:
                    raise BimoduleError(
                        f"cannot read referenced algebra {alg_doc!r}: {exc}"
                    ) from None
            else:
                algebra = LeibnizAlgebra.from_json(json.dumps(alg_doc))
        f = algebra.field
        try:
            parse = lambda rows: Matrix(f, [[f.parse(x) for x in r] for r in rows])
            lam = [parse(m) for m in doc["lambda"]]
            rho = [parse(m) for m in doc["rho"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise BimoduleError(f"bad bimodule document: {exc}") from None
        mod = Bimodule(algebra, lam, rho)
        if doc.get("dim") != mod.dim:
            raise BimoduleError("declared dim disagrees with matrices")
        return mod


@dataclass
class BimoduleHomCandidate:
    """A linear map between bimodules, checked for equivariance on demand."""

    domain: Bimodule
    codomain: Bimodule
    matrix: Matrix  # codomain.dim x domain.dim

    def intertwines(self) -> bool:
        if self.domain.algebra != self.codomain.algebra:
            return False
        b = self.matrix
        for ls, lt in zip(self.domain.lam, self.codomain.lam):
            if b * ls != lt * b:
                return False
        for rs, rt in zip(self.domain.rho, self.codomain.rho):
            if b * rs != rt * b:
                return False
        return True


def axiom_report(mod: Bimodule) -> AxiomReport:
    alg = mod.algebra
    f = mod.field
    n = alg.dim

    def expand(mats, i, j):
        acc = Matrix.zeros(f, mod.dim, mod.dim)
        for k in range(n):
            c = alg.table[i][j][k]
            if c != f.zero():
                acc = acc + mats[k].scale(c)
        return acc

    llm = lml = mll = zd = True
    first = None

    def fail(name, i, j):
        nonlocal first
        if first is None:
            first = (name, i, j)

    for i in range(n):
        for j in range(n):
            li, lj = mod.lam[i], mod.lam[j]
            ri, rj = mod.rho[i], mod.rho[j]
            if llm and expand(mod.lam, i, j) != li * lj - lj * li:
                llm = False
                fail("llm", i, j)
            if lml and expand(mod.rho, i, j) != li * rj - rj * li:
                lml = False
                fail("lml", i, j)
            if mll and rj * ri != expand(mod.rho, i, j) - li * rj:
                mll = False
                fail("mll", i, j)
            if zd and not (rj * (li + ri)).is_zero():
                zd = False
                fail("zd", i, j)
    return AxiomReport(llm=llm, lml=lml, mll=mll, zd=zd, first_failure=first)


def classify_flags(mod: Bimodule) -> dict:
    symmetric = all(r == -l for l, r in zip(mod.lam, mod.rho))
    anti = all(r.is_zero() for r in mod.rho)
    return {
        "symmetric": symmetric,
        "anti_symmetric": anti,
        "trivial": symmetric and anti,
    }


# ---------------------------------------------------------------------------
# constructions


def _check_llm(algebra: LeibnizAlgebra, lam) -> None:
    probe = Bimodule(algebra, lam, [Matrix.zeros(algebra.field, m.nrows, m.nrows) for m in lam])
    if not probe.axiom_report().llm:
        raise BimoduleError(
            f"left action is not a module: LLM fails at {probe.axiom_report().first_failure}"
        )


def symmetrize(algebra: LeibnizAlgebra, lam) -> Bimodule:
    """Left module made into a bimodule with m.x = -x.m; always full."""
    _check_llm(algebra, lam)
    return Bimodule(algebra, lam, [-m for m in lam])


def antisymmetrize(algebra: LeibnizAlgebra, lam) -> Bimodule:
    """Left module made into a bimodule with trivial right action; always full."""
    _check_llm(algebra, lam)
    z = [Matrix.zeros(algebra.field, m.nrows, m.nrows) for m in lam]
    return Bimodule(algebra, lam, z)


def adjoint(algebra: LeibnizAlgebra) -> Bimodule:
    left, right = mult_ops(algebra)
    return Bimodule(algebra, left, right)


def trivial_bimodule(algebra: LeibnizAlgebra, dim: int = 1) -> Bimodule:
    z = [Matrix.zeros(algebra.field, dim, dim) for _ in range(algebra.dim)]
    return Bimodule(algebra, list(z), list(z))


def one_dim_bimodule(algebra: LeibnizAlgebra, left_values, right_values) -> Bimodule:
    """Dim-1 bimodule from two linear functionals; axioms reported, not assumed."""
    f = algebra.field
    if len(left_values) != algebra.dim or len(right_values) != algebra.dim:
        raise BimoduleError("one functional value per basis element")
    lam = [Matrix(f, [[f.coerce(a)]]) for a in left_values]
    rho = [Matrix(f, [[f.coerce(c)]]) for c in right_values]
    return Bimodule(algebra, lam, rho)


def conjugate(mod: Bimodule, p: Matrix) -> Bimodule:
    """Isomorphic copy through an invertible change of basis."""
    pinv = invert(p)
    return Bimodule(
        mod.algebra,
        [p * m * pinv for m in mod.lam],
        [p * m * pinv for m in mod.rho],
    )


def direct_sum(a: Bimodule, b: Bimodule) -> Bimodule:
    if a.algebra != b.algebra:
        raise BimoduleError("direct sum needs a common algebra")
    f = a.field
    m, n = a.dim, b.dim

    def block(x: Matrix, y: Matrix) -> Matrix:
        z = f.zero()
        rows = [list(r) + [z] * n for r in x.rows]
        rows += [[z] * m + list(r) for r in y.rows]
        return Matrix(f, rows)

    return Bimodule(
        a.algebra,
        [block(x, y) for x, y in zip(a.lam, b.lam)],
        [block(x, y) for x, y in zip(a.rho, b.rho)],
    )


# ---------------------------------------------------------------------------
# kernels, invariants, sub- and quotient structure


def column_span(field: Field, mats, dim: int) -> Subspace:
    vecs = []
    for m in mats:
        vecs.extend(m.columns())
    return rref_span(vecs, dim, field)


def is_invariant(mod: Bimodule, space: Subspace, side: str = "both") -> bool:
    mats = []
    if side in ("left", "both"):
        mats += list(mod.lam)
    if side in ("right", "both"):
        mats += list(mod.rho)
    red = space.reducer()
    return all(
        red.contains(m.apply(v)) for m in mats for v in space.basis_vectors()
    )


def kernels_and_invariants(mod: Bimodule) -> dict:
    """The four canonical subspaces together with invariance flags.

    M0   span{x.m + m.x}     (anti-symmetric kernel)
    MR   span{m.x}           (right translates)
    LM   span{x.m}           (left translates)
    Minv {m : m.x = 0 all x} (right invariants)

    Whether M0 is invariant under the right action is reported, not
    assumed: for merely weak bimodules this can genuinely fail.
    """
    if not mod.is_weak():
        raise BimoduleError("kernel data needs at least a weak bimodule")
    f = mod.field
    m0 = column_span(f, [l + r for l, r in zip(mod.lam, mod.rho)], mod.dim)
    mr = column_span(f, mod.rho, mod.dim)
    lm = column_span(f, mod.lam, mod.dim)
    minv = Subspace.full(f, mod.dim)
    for r in mod.rho:
        minv = minv.intersect(nullspace(r))
    return {
        "M0": m0,
        "MR": mr,
        "LM": lm,
        "Minv": minv,
        "M0_left_invariant": is_invariant(mod, m0, "left"),
        "M0_right_invariant": is_invariant(mod, m0, "right"),
        "MR_invariant": is_invariant(mod, mr),
        "Minv_invariant": is_invariant(mod, minv),
    }


def subbimodule_closure(mod: Bimodule, seeds) -> Subspace:
    """Smallest subspace containing the seeds and stable under every
    action matrix; computed by sweeping until a fixed point."""
    f = mod.field
    for s in seeds:
        if len(s) != mod.dim:
            raise BimoduleError("seed length mismatch")
    space = rref_span(seeds, mod.dim, f)
    mats = list(mod.lam) + list(mod.rho)
    frontier = space.basis_vectors()
    while frontier:
        red = space.reducer()
        new = []
        for v in frontier:
            for m in mats:
                w = m.apply(v)
                if red.insert(w):
                    new.append(w)
        if not new:
            break
        space = Subspace(f, mod.dim, red.basis(), tuple(red.pivots))
        frontier = new
    return space


def restrict(mod: Bimodule, space: Subspace) -> Bimodule:
    """Induced actions on an invariant subspace, in its RREF basis."""
    if not is_invariant(mod, space):
        raise BimoduleError("subspace is not invariant under both actions")
    f = mod.field
    rows = space.basis_vectors()

    def induced(m: Matrix) -> Matrix:
        red = space.reducer()
        cols = [red.coords(m.apply(v)) for v in rows]
        return Matrix(
            f, [[cols[j][i] for j in range(len(rows))] for i in range(len(rows))]
        )

    return Bimodule(
        mod.algebra, [induced(m) for m in mod.lam], [induced(m) for m in mod.rho]
    )


def quotient(mod: Bimodule, space: Subspace) -> Bimodule:
    """Induced actions on M/S, in the complement coordinates of S."""
    if not is_invariant(mod, space):
        raise BimoduleError("subspace is not invariant under both actions")
    f = mod.field
    keep = space.complement_coords()

    def induced(m: Matrix) -> Matrix:
        cols = [
            space.project_to_quotient(m.apply(unit_vector(f, mod.dim, j)))
            for j in keep
        ]
        return Matrix(
            f, [[cols[j][i] for j in range(len(keep))] for i in range(len(keep))]
        )

    return Bimodule(
        mod.algebra, [induced(m) for m in mod.lam], [induced(m) for m in mod.rho]
    )


# ---------------------------------------------------------------------------
# hom spaces and duals


def hom_bimodule(src: Bimodule, dst: Bimodule) -> Bimodule:
    """Linear maps src -> dst with (x.f) = lam' f - f lam and
    (f.x) = rho' f - f rho; weak whenever both inputs are weak.

    Maps are flattened row-major as dst.dim x src.dim matrices, so the
    operator of f -> A f B is kron(A, B^T).
    """
    if src.algebra != dst.algebra:
        raise BimoduleError("hom needs a common algebra")
    if not (src.is_weak() and dst.is_weak()):
        raise BimoduleError("hom needs weak bimodules")
    f = src.field
    im = Matrix.identity(f, src.dim)
    iN = Matrix.identity(f, dst.dim)
    lam = [
        lt.kron(im) - iN.kron(ls.transpose()) for ls, lt in zip(src.lam, dst.lam)
    ]
    rho = [
        rt.kron(im) - iN.kron(rs.transpose()) for rs, rt in zip(src.rho, dst.rho)
    ]
    return Bimodule(src.algebra, lam, rho)


def dual(mod: Bimodule) -> Bimodule:
    """Linear dual: hom into the trivial 1-dim bimodule, i.e. actions
    -lam^T and -rho^T in the dual basis."""
    return hom_bimodule(mod, trivial_bimodule(mod.algebra, 1))


def duality_morphism_checks(mod: Bimodule) -> dict:
    """Evaluation/coevaluation contractions and the double-dual map.

    Each flag records whether the canonical linear map intertwines both
    actions (with tensor-product actions on the paired spaces); the two
    scalar identities ev . coev' = dim = ev' . coev are checked exactly.
    """
    from .tensor import tensor_bimodule

    if not mod.is_weak():
        raise BimoduleError("duality checks need a weak bimodule")
    f = mod.field
    d = mod.dim
    if d == 0:
        return {
            "ev": True,
            "ev_prime": True,
            "coev": True,
            "coev_prime": True,
            "double_dual": True,
            "contraction_scalar": True,
        }
    dmod = dual(mod)
    triv = trivial_bimodule(mod.algebra, 1)
    z, o = f.zero(), f.one()

    # pairing index conventions: dual basis is the standard basis of F^d
    ev_rows = [[o if (a % d) == (a // d) else z for a in range(d * d)]]
    ev = Matrix(f, ev_rows)  # on M* (x) M and equally on M (x) M*
    coev_col = Matrix(f, [[o] if (a % d) == (a // d) else [z] for a in range(d * d)])

    checks = {}
    checks["ev"] = BimoduleHomCandidate(
        tensor_bimodule(dmod, mod).module, triv, ev
    ).intertwines()
    checks["ev_prime"] = BimoduleHomCandidate(
        tensor_bimodule(mod, dmod).module, triv, ev
    ).intertwines()
    checks["coev"] = BimoduleHomCandidate(
        triv, tensor_bimodule(mod, dmod).module, coev_col
    ).intertwines()
    checks["coev_prime"] = BimoduleHomCandidate(
        triv, tensor_bimodule(dmod, mod).module, coev_col
    ).intertwines()
    ddual = dual(dmod)
    checks["double_dual"] = BimoduleHomCandidate(
        mod, ddual, Matrix.identity(f, d)
    ).intertwines()
    scalar = (ev * coev_col).rows[0][0] if d else f.zero()
    checks["contraction_scalar"] = scalar == f.from_int(d)
    return checks
