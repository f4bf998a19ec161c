"""Finite-dimensional left Leibniz algebras via structure constants.

An algebra is given by a table ``c[i][j][k]`` meaning
``b_i b_j = sum_k c[i][j][k] b_k``.  Validity means every left
multiplication operator is a derivation: x(yz) = (xy)z + y(xz) on all
basis triples, or equivalently L_{xy} = [L_x, L_y] on all basis pairs.

Builders cover the worked examples used everywhere downstream: the
2-dimensional solvable algebra ``A`` (h e = e), the 2-dimensional
nilpotent algebra ``N`` (e e = c), the 1-dimensional Lie algebra ``e``,
abelian algebras, sl2 with basis (e, h, f), and hemi-semidirect products
g x M with product (x, m)(y, n) = (xy, x.n).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .fields import Field, FieldError
from .linalg import (
    LinAlgError,
    Matrix,
    Subspace,
    commutator,
    rref_span,
    unit_vector,
    vec_add,
    vec_scale,
)


class AlgebraError(ValueError):
    pass


class LeibnizAlgebra:
    """Structure-constant algebra over an exact field; immutable."""

    def __init__(self, field: Field, basis_names, table, check: bool = True):
        self.field = field
        self.dim = len(basis_names)
        self.basis_names = tuple(basis_names)
        self.table = tuple(
            tuple(tuple(field.coerce(c) for c in cell) for cell in row)
            for row in table
        )
        n = self.dim
        if len(self.table) != n or any(
            len(row) != n or any(len(cell) != n for cell in row)
            for row in self.table
        ):
            raise AlgebraError("structure constant table shape mismatch")
        if check:
            failure = validate_left_leibniz(self)
            if failure is not None:
                i, j, k = failure
                names = self.basis_names
                raise AlgebraError(
                    "left Leibniz identity fails at "
                    f"({names[i]}, {names[j]}, {names[k]})"
                )

    def product(self, u, v) -> tuple:
        """Bilinear product of coordinate vectors."""
        f = self.field
        out = [f.zero()] * self.dim
        for i, a in enumerate(u):
            if a == f.zero():
                continue
            for j, b in enumerate(v):
                if b == f.zero():
                    continue
                ab = f.mul(a, b)
                cell = self.table[i][j]
                for k in range(self.dim):
                    if cell[k] != f.zero():
                        out[k] = f.add(out[k], f.mul(ab, cell[k]))
        return tuple(out)

    def index(self, name: str) -> int:
        try:
            return self.basis_names.index(name)
        except ValueError:
            raise AlgebraError(f"no basis element named {name!r}") from None

    def __eq__(self, other):
        return (
            isinstance(other, LeibnizAlgebra)
            and self.field == other.field
            and self.basis_names == other.basis_names
            and self.table == other.table
        )

    def __repr__(self):
        return f"LeibnizAlgebra(dim {self.dim}, basis {list(self.basis_names)})"

    def to_json(self) -> str:
        f = self.field
        doc = {
            "field": f.spec,
            "dim": self.dim,
            "basis": list(self.basis_names),
            "table": [
                [[f.format(c) for c in cell] for cell in row] for row in self.table
            ],
        }
        return json.dumps(doc, indent=2)

    @staticmethod
    def from_json(text: str) -> "LeibnizAlgebra":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"algebra JSON parse error: {exc}") from None
        try:
            field = Field.from_spec(doc["field"])
            names = doc["basis"]
            table = [
                [[field.parse(c) for c in cell] for cell in row]
                for row in doc["table"]
            ]
        except (KeyError, TypeError, ValueError, FieldError) as exc:
            raise AlgebraError(f"bad algebra document: {exc}") from None
        if doc.get("dim") != len(names):
            raise AlgebraError("declared dim disagrees with basis length")
        return LeibnizAlgebra(field, names, table)


@dataclass
class AlgebraMorphismData:
    """A linear map between algebras, with an optional multiplicativity check."""

    domain: LeibnizAlgebra
    codomain: LeibnizAlgebra
    matrix: Matrix  # codomain.dim x domain.dim

    def is_homomorphism(self) -> bool:
        dom, cod = self.domain, self.codomain
        for i in range(dom.dim):
            for j in range(dom.dim):
                img_prod = self.matrix.apply(
                    dom.product(
                        unit_vector(dom.field, dom.dim, i),
                        unit_vector(dom.field, dom.dim, j),
                    )
                )
                prod_img = cod.product(
                    self.matrix.apply(unit_vector(dom.field, dom.dim, i)),
                    self.matrix.apply(unit_vector(dom.field, dom.dim, j)),
                )
                if img_prod != prod_img:
                    return False
        return True

    def kernel(self) -> Subspace:
        from .linalg import nullspace

        return nullspace(self.matrix)


def validate_left_leibniz(alg: LeibnizAlgebra):
    """None if valid; else the first failing (i, j, k).

    Checked as the operator identity L_{b_i b_j} = [L_i, L_j] per basis
    pair (i, j); k is the first coordinate where the identity breaks.
    """
    left, _ = mult_ops(alg)
    f = alg.field
    n = alg.dim
    for i in range(n):
        for j in range(n):
            # L_{b_i b_j} expanded through the table
            acc = Matrix.zeros(f, n, n)
            for m in range(n):
                c = alg.table[i][j][m]
                if c != f.zero():
                    acc = acc + left[m].scale(c)
            diff = acc - commutator(left[i], left[j])
            for k in range(n):
                if any(diff.rows[k][col] != f.zero() for col in range(n)):
                    return (i, j, k)
    return None


def mult_ops(alg: LeibnizAlgebra):
    """Left and right multiplication matrices: (L_i)_{k,j} = c_{ij}^k."""
    f = alg.field
    n = alg.dim
    left = [
        Matrix(f, [[alg.table[i][j][k] for j in range(n)] for k in range(n)])
        for i in range(n)
    ]
    right = [
        Matrix(f, [[alg.table[j][i][k] for j in range(n)] for k in range(n)])
        for i in range(n)
    ]
    return left, right


def leibniz_kernel(alg: LeibnizAlgebra) -> Subspace:
    """Span of all squares; computed from the polarized generating set
    {b_i^2} and {b_i b_j + b_j b_i : i < j}, which equals span{x^2} over
    every field including characteristic 2."""
    f = alg.field
    gens = []
    for i in range(alg.dim):
        gens.append(alg.table[i][i])
        for j in range(i + 1, alg.dim):
            gens.append(vec_add(f, alg.table[i][j], alg.table[j][i]))
    return rref_span(gens, alg.dim, f)


def _quotient_table(alg: LeibnizAlgebra, ideal: Subspace):
    """Structure constants induced on the complement coordinates."""
    f = alg.field
    keep = ideal.complement_coords()
    names = [alg.basis_names[j] for j in keep]
    m = len(keep)
    table = [[[f.zero()] * m for _ in range(m)] for _ in range(m)]
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            prod = alg.product(
                unit_vector(f, alg.dim, i), unit_vector(f, alg.dim, j)
            )
            table[a][b] = list(ideal.project_to_quotient(prod))
    return names, table


def is_lie(alg: LeibnizAlgebra):
    """None if antisymmetric + Jacobi hold on all basis triples, else a witness."""
    f = alg.field
    n = alg.dim
    for i in range(n):
        for j in range(n):
            s = vec_add(f, alg.table[i][j], alg.table[j][i])
            if any(x != f.zero() for x in s):
                return ("antisymmetry", i, j)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                ei, ej, ek = (unit_vector(f, n, t) for t in (i, j, k))
                jac = vec_add(
                    f,
                    vec_add(
                        f,
                        alg.product(alg.product(ei, ej), ek),
                        alg.product(alg.product(ej, ek), ei),
                    ),
                    alg.product(alg.product(ek, ei), ej),
                )
                if any(x != f.zero() for x in jac):
                    return ("jacobi", i, j, k)
    return None


def canonical_lie(alg: LeibnizAlgebra):
    """Quotient by the span of squares, plus the projection morphism."""
    f = alg.field
    ker = leibniz_kernel(alg)
    names, table = _quotient_table(alg, ker)
    quot = LeibnizAlgebra(f, names, table)
    witness = is_lie(quot)
    if witness is not None:
        raise AlgebraError(f"quotient failed Lie check: {witness}")
    cols = [
        ker.project_to_quotient(unit_vector(f, alg.dim, j)) for j in range(alg.dim)
    ]
    proj = Matrix(
        f, [[cols[j][i] for j in range(alg.dim)] for i in range(quot.dim)]
    )
    return quot, AlgebraMorphismData(alg, quot, proj)


def products_and_series(alg: LeibnizAlgebra) -> dict:
    """Product span, perfectness, derived series dims, solvability."""
    f = alg.field
    n = alg.dim

    def span_of_products(sub: Subspace) -> Subspace:
        vecs = []
        rows = sub.basis_vectors()
        for u in rows:
            for v in rows:
                vecs.append(alg.product(u, v))
        return rref_span(vecs, n, f)

    full = Subspace.full(f, n)
    product_span = span_of_products(full)
    series = [full]
    dims = [n]
    while True:
        nxt = span_of_products(series[-1])
        if nxt.dim == series[-1].dim:
            series.append(nxt)
            dims.append(nxt.dim)
            break
        series.append(nxt)
        dims.append(nxt.dim)
        if nxt.dim == 0:
            break
    return {
        "product_span": product_span,
        "is_perfect": product_span.dim == n,
        "derived_series_dims": dims,
        "is_solvable": dims[-1] == 0,
    }


# ---------------------------------------------------------------------------
# builders


def make_e(field: Field) -> LeibnizAlgebra:
    """One-dimensional (abelian) Lie algebra."""
    return make_abelian(field, 1, names=["e"])


def make_abelian(field: Field, n: int, names=None) -> LeibnizAlgebra:
    if names is None:
        names = [f"a{i}" for i in range(n)] if n != 1 else ["e"]
    z = field.zero()
    table = [[[z] * n for _ in range(n)] for _ in range(n)]
    return LeibnizAlgebra(field, names, table)


def make_A(field: Field) -> LeibnizAlgebra:
    """Solvable 2-dimensional algebra with h e = e and all other products 0."""
    z, o = field.zero(), field.one()
    table = [
        [[z, z], [z, o]],  # h*h = 0, h*e = e
        [[z, z], [z, z]],  # e*h = 0, e*e = 0
    ]
    return LeibnizAlgebra(field, ["h", "e"], table)


def make_N(field: Field) -> LeibnizAlgebra:
    """Nilpotent 2-dimensional algebra with e e = c and all other products 0."""
    z, o = field.zero(), field.one()
    table = [
        [[z, o], [z, z]],  # e*e = c, e*c = 0
        [[z, z], [z, z]],  # c*e = 0, c*c = 0
    ]
    return LeibnizAlgebra(field, ["e", "c"], table)


def make_sl2(field: Field) -> LeibnizAlgebra:
    """sl2 with basis (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    if field.characteristic == 2:
        raise AlgebraError("sl2 is degenerate in characteristic 2")
    f = field
    z = f.zero()
    two = f.from_int(2)
    n2 = f.from_int(-2)
    one = f.one()
    neg1 = f.neg(one)
    # order: e=0, h=1, f=2
    table = [
        [[z, z, z], [f.neg(two), z, z], [z, one, z]],  # e*e, e*h=-2e, e*f=h
        [[two, z, z], [z, z, z], [z, z, n2]],  # h*e=2e, h*h, h*f=-2f
        [[z, neg1, z], [z, z, two], [z, z, z]],  # f*e=-h, f*h=2f, f*f
    ]
    return LeibnizAlgebra(f, ["e", "h", "f"], table)


def sl2_module_matrices(field: Field, n: int):
    """Action of (e, h, f) on the (n+1)-dimensional irreducible sl2 module.

    Basis v_0..v_n with h v_k = (n-2k) v_k, e v_k = (n-k+1) v_{k-1},
    f v_k = (k+1) v_{k+1}.
    """
    f = field
    d = n + 1
    z = f.zero()
    e_rows = [[z] * d for _ in range(d)]
    h_rows = [[z] * d for _ in range(d)]
    f_rows = [[z] * d for _ in range(d)]
    for k in range(d):
        h_rows[k][k] = f.from_int(n - 2 * k)
        if k >= 1:
            e_rows[k - 1][k] = f.from_int(n - k + 1)
        if k + 1 < d:
            f_rows[k + 1][k] = f.from_int(k + 1)
    return [Matrix(f, e_rows), Matrix(f, h_rows), Matrix(f, f_rows)]


def hemi_semidirect(g: LeibnizAlgebra, action: list[Matrix], module_names=None):
    """Leibniz algebra on g + M with (x, m)(y, n) = (xy, x.n).

    Requires g to be a Lie algebra and ``action`` to be a Lie module:
    action_{xy} = [action_x, action_y] on basis pairs.
    """
    f = g.field
    if is_lie(g) is not None:
        raise AlgebraError("hemi-semidirect product needs a Lie algebra on the left")
    if len(action) != g.dim:
        raise AlgebraError("one action matrix per algebra basis element required")
    m = action[0].nrows
    for a in action:
        if a.shape != (m, m):
            raise AlgebraError("action matrices must be square of equal size")
    for i in range(g.dim):
        for j in range(g.dim):
            acc = Matrix.zeros(f, m, m)
            for k in range(g.dim):
                c = g.table[i][j][k]
                if c != f.zero():
                    acc = acc + action[k].scale(c)
            if acc != commutator(action[i], action[j]):
                raise AlgebraError(
                    "action matrices do not define a Lie module "
                    f"(pair {g.basis_names[i]}, {g.basis_names[j]})"
                )
    if module_names is None:
        module_names = [f"m{i}" for i in range(m)]
    n = g.dim + m
    z = f.zero()
    table = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i in range(g.dim):
        for j in range(g.dim):
            for k in range(g.dim):
                table[i][j][k] = g.table[i][j][k]
        for j in range(m):
            col = action[i].col(j)
            for k in range(m):
                table[i][g.dim + j][g.dim + k] = col[k]
    return LeibnizAlgebra(f, list(g.basis_names) + list(module_names), table)


def make_S(field: Field) -> LeibnizAlgebra:
    """Simple 5-dimensional Leibniz algebra: sl2 acting hemi-semidirectly
    on its 2-dimensional irreducible module."""
    return hemi_semidirect(
        make_sl2(field), sl2_module_matrices(field, 1), module_names=["u", "v"]
    )


BUILDERS = {
    "A": make_A,
    "N": make_N,
    "e": make_e,
    "sl2": make_sl2,
    "hemi-sl2-L1": make_S,
}


def builtin_algebra(name: str, field: Field) -> LeibnizAlgebra:
    """Resolve a builder name: A | N | e | sl2 | hemi-sl2-L1 | abelian:<n>."""
    if name in BUILDERS:
        return BUILDERS[name](field)
    if name.startswith("abelian:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise AlgebraError(f"bad abelian dimension in {name!r}") from None
        return make_abelian(field, n)
    raise AlgebraError(f"unknown builtin algebra {name!r}")
