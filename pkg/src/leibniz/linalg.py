"""Exact dense linear algebra over Q and F_p.

Everything here is pure and value-semantic: matrices are tuples of tuples
of scalars, subspaces are row-reduced basis matrices.  Reduced row echelon
form is the canonical representative of a subspace, so two spanning sets
of the same space always produce equal ``Subspace`` objects.

The fixed tensor basis convention used throughout the package: the basis
vector ``u_i (x) w_j`` of ``U (x) W`` has flat index ``i*dim(W) + j``
(left factor major).  ``kron`` realizes operators in exactly these
coordinates, i.e. ``kron(A, B) @ (u (x) w) == (A u) (x) (B w)``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .fields import Field


class LinAlgError(ValueError):
    pass


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Iterable[Iterable]):
        self.field = field
        self.rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise LinAlgError("ragged rows")

    @staticmethod
    def zeros(field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero()
        return Matrix(field, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return Matrix(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_ints(field: Field, rows: Sequence[Sequence[int]]) -> "Matrix":
        return Matrix(field, [[field.from_int(x) for x in r] for r in rows])

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.format(x) for x in row) for row in self.rows
        )
        return f"Matrix[{body}]"

    def __add__(self, other: "Matrix") -> "Matrix":
        f = self.field
        self._same_shape(other)
        return Matrix(
            f,
            [
                [f.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        f = self.field
        self._same_shape(other)
        return Matrix(
            f,
            [
                [f.sub(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.neg(a) for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.mul(c, a) for a in r] for r in self.rows])

    def __mul__(self, other: "Matrix") -> "Matrix":
        f = self.field
        if self.ncols != other.nrows:
            raise LinAlgError(f"shape mismatch {self.shape} * {other.shape}")
        cols = other.ncols
        zero = f.zero()
        out = []
        for r in self.rows:
            row = [zero] * cols
            for k, a in enumerate(r):
                if a == zero:
                    continue
                orow = other.rows[k]
                for j in range(cols):
                    b = orow[j]
                    if b != zero:
                        row[j] = f.add(row[j], f.mul(a, b))
            out.append(row)
        return Matrix(f, out)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector (given and returned as a flat tuple)."""
        f = self.field
        if len(vec) != self.ncols:
            raise LinAlgError("vector length mismatch")
        zero = f.zero()
        out = []
        for r in self.rows:
            s = zero
            for a, x in zip(r, vec):
                if a != zero and x != zero:
                    s = f.add(s, f.mul(a, x))
            out.append(s)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, zip(*self.rows)) if self.rows else Matrix(self.field, [])

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product in the left-factor-major basis ordering."""
        f = self.field
        out = []
        for arow in self.rows:
            for brow in other.rows:
                out.append([f.mul(a, b) for a in arow for b in brow])
        if not out:
            return Matrix.zeros(f, self.nrows * other.nrows, self.ncols * other.ncols)
        return Matrix(f, out)

    def is_zero(self) -> bool:
        z = self.field.zero()
        return all(x == z for r in self.rows for x in r)

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def trace(self):
        f = self.field
        t = f.zero()
        for i in range(min(self.nrows, self.ncols)):
            t = f.add(t, self.rows[i][i])
        return t

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def _same_shape(self, other: "Matrix"):
        if self.shape != other.shape:
            raise LinAlgError(f"shape mismatch {self.shape} vs {other.shape}")


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a * b - b * a


class RowReducer:
    """Incremental reduced row echelon form.

    Rows are kept fully reduced (each pivot is 1 and is the only nonzero
    entry in its column) and sorted by pivot, so ``basis()`` is canonical
    for the span regardless of insertion order.
    """

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, vec: Sequence) -> list:
        """Residual of ``vec`` after eliminating all current pivots."""
        f = self.field
        v = [f.coerce(x) for x in vec]
        if len(v) != self.width:
            raise LinAlgError("vector length mismatch")
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != f.zero():
                for j in range(p, self.width):
                    v[j] = f.sub(v[j], f.mul(c, row[j]))
        return v

    def coords(self, vec: Sequence) -> list | None:
        """Coefficients of ``vec`` over the current basis, or None."""
        f = self.field
        v = [f.coerce(x) for x in vec]
        cs = []
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            cs.append(c)
            if c != f.zero():
                for j in range(p, self.width):
                    v[j] = f.sub(v[j], f.mul(c, row[j]))
        if any(x != f.zero() for x in v):
            return None
        return cs

    def contains(self, vec: Sequence) -> bool:
        z = self.field.zero()
        return all(x == z for x in self.reduce(vec))

    def insert(self, vec: Sequence) -> bool:
        """Add ``vec`` to the span; True if the rank grew."""
        f = self.field
        v = self.reduce(vec)
        pivot = next((j for j, x in enumerate(v) if x != f.zero()), None)
        if pivot is None:
            return False
        c = f.inv(v[pivot])
        v = [f.mul(c, x) for x in v]
        # clear the new pivot column in existing rows
        for row in self.rows:
            c = row[pivot]
            if c != f.zero():
                for j in range(pivot, self.width):
                    row[j] = f.sub(row[j], f.mul(c, v[j]))
        at = next(
            (k for k, p in enumerate(self.pivots) if p > pivot), len(self.pivots)
        )
        self.rows.insert(at, v)
        self.pivots.insert(at, pivot)
        return True

    def insert_all(self, vecs: Iterable[Sequence]) -> None:
        for v in vecs:
            self.insert(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def basis(self) -> Matrix:
        return (
            Matrix(self.field, self.rows)
            if self.rows
            else Matrix.zeros(self.field, 0, self.width)
        )


class Subspace:
    """A subspace of F^n, stored as its canonical RREF basis matrix."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis: Matrix, pivots: tuple):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @staticmethod
    def span(field: Field, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        red = RowReducer(field, ambient_dim)
        for v in vectors:
            if len(v) != ambient_dim:
                raise LinAlgError(
                    f"vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
            red.insert(v)
        return Subspace(field, ambient_dim, red.basis(), tuple(red.pivots))

    @staticmethod
    def zero(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace.span(field, ambient_dim, [])

    @staticmethod
    def full(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(
            field,
            ambient_dim,
            Matrix.identity(field, ambient_dim),
            tuple(range(ambient_dim)),
        )

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def basis_vectors(self) -> list[tuple]:
        return list(self.basis.rows)

    def reducer(self) -> RowReducer:
        red = RowReducer(self.field, self.ambient_dim)
        red.rows = [list(r) for r in self.basis.rows]
        red.pivots = list(self.pivots)
        return red

    def contains(self, vec: Sequence) -> bool:
        return self.reducer().contains(vec)

    def coordinates(self, vec: Sequence) -> list | None:
        """Coefficients over the RREF basis reconstructing ``vec``, or None."""
        return self.reducer().coords(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        red = self.reducer()
        return all(red.contains(v) for v in other.basis.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        red = self.reducer()
        red.insert_all(other.basis.rows)
        return Subspace(self.field, self.ambient_dim, red.basis(), tuple(red.pivots))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: reduce [[U U],[V 0]]; rows with zero left half give
        the intersection in the right half."""
        self._check_ambient(other)
        f, n = self.field, self.ambient_dim
        z = f.zero()
        red = RowReducer(f, 2 * n)
        for r in self.basis.rows:
            red.insert(list(r) + list(r))
        for r in other.basis.rows:
            red.insert(list(r) + [z] * n)
        out = [row[n:] for row in red.rows if all(x == z for x in row[:n])]
        return Subspace.span(f, n, out)

    def complement_coords(self) -> list[int]:
        """Indices of standard basis vectors spanning a complement."""
        return [j for j in range(self.ambient_dim) if j not in self.pivots]

    def project_to_quotient(self, vec: Sequence) -> tuple:
        """Coordinates of ``vec + self`` on the complement basis."""
        residual = self.reducer().reduce(vec)
        return tuple(residual[j] for j in self.complement_coords())

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise LinAlgError("ambient space mismatch")


def rref_span(vectors: Iterable[Sequence], ambient_dim: int, field: Field) -> Subspace:
    return Subspace.span(field, ambient_dim, vectors)


def nullspace(m: Matrix) -> Subspace:
    """Right kernel {v : M v = 0}."""
    f = m.field
    red = RowReducer(f, m.ncols)
    red.insert_all(m.rows)
    pivots = set(red.pivots)
    free = [j for j in range(m.ncols) if j not in pivots]
    basis = []
    one, zero = f.one(), f.zero()
    for j in free:
        v = [zero] * m.ncols
        v[j] = one
        for row, p in zip(red.rows, red.pivots):
            v[p] = f.neg(row[j])
        basis.append(v)
    return Subspace.span(f, m.ncols, basis)


def rank(m: Matrix) -> int:
    red = RowReducer(m.field, m.ncols)
    red.insert_all(m.rows)
    return red.rank


def solve_membership(space: Subspace, vec: Sequence):
    """Coordinates of ``vec`` in the subspace basis, or None if outside."""
    if len(vec) != space.ambient_dim:
        raise LinAlgError("vector length mismatch")
    return space.coordinates(vec)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return a.kron(b)


def invert(m: Matrix) -> Matrix:
    """Inverse via Gauss-Jordan on [M | I]; raises if singular."""
    f = m.field
    if m.nrows != m.ncols:
        raise LinAlgError("only square matrices invert")
    n = m.nrows
    red = RowReducer(f, 2 * n)
    ident = Matrix.identity(f, n)
    for i in range(n):
        red.insert(list(m.rows[i]) + list(ident.rows[i]))
    if red.pivots[:n] != list(range(n)) or red.rank != n:
        raise LinAlgError("matrix is singular")
    return Matrix(f, [row[n:] for row in red.rows])


def determinant(m: Matrix):
    """Gaussian elimination with exact division."""
    f = m.field
    if m.nrows != m.ncols:
        raise LinAlgError("determinant of non-square matrix")
    n = m.nrows
    a = [list(r) for r in m.rows]
    det = f.one()
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != f.zero()), None)
        if piv is None:
            return f.zero()
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = f.neg(det)
        det = f.mul(det, a[col][col])
        inv = f.inv(a[col][col])
        for i in range(col + 1, n):
            c = f.mul(a[i][col], inv)
            if c != f.zero():
                for j in range(col, n):
                    a[i][j] = f.sub(a[i][j], f.mul(c, a[col][j]))
    return det


def charpoly(m: Matrix) -> list:
    """Coefficients [c_0, ..., c_n] of det(tI - M), c_n = 1.

    Faddeev-LeVerrier; the integer divisions it needs are exact over Q.
    Over F_p this is only valid for p > n, which is all we use it for.
    """
    f = m.field
    n = m.nrows
    if n != m.ncols:
        raise LinAlgError("characteristic polynomial of non-square matrix")
    if 0 < f.characteristic <= n:
        raise LinAlgError("charpoly needs characteristic 0 or > matrix size")
    coeffs = [f.one()]  # leading coefficient, built downwards
    mk = Matrix.identity(f, n)
    for k in range(1, n + 1):
        mk = m * mk
        c = f.neg(f.div(mk.trace(), f.from_int(k)))
        coeffs.append(c)
        for i in range(n):
            mk_rows = [list(r) for r in mk.rows]
            mk_rows[i][i] = f.add(mk_rows[i][i], c)
            mk = Matrix(f, mk_rows)
    return list(reversed(coeffs))


def eigenvalues_in_field(m: Matrix) -> list:
    """Eigenvalues of M that lie in the ground field, without multiplicity.

    Over F_p every residue is tried; over Q candidates come from the
    rational root theorem applied to the characteristic polynomial.
    """
    f = m.field
    n = m.nrows
    if n == 0:
        return []
    if f.characteristic > 0:
        ident = Matrix.identity(f, n)
        out = []
        for c in f.elements():
            if determinant(m - ident.scale(c)) == f.zero():
                out.append(c)
        return out
    coeffs = charpoly(m)  # Fractions
    # clear denominators to integer coefficients
    from math import lcm

    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[0] == 0:
        ints = ints[1:]  # factor out t; eigenvalue 0 handled below
    out = []
    ident = Matrix.identity(f, n)
    if determinant(m) == f.zero():
        out.append(f.zero())
    if not ints:
        return out
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 == 0:
        return out

    def divisors(n: int) -> list[int]:
        out, i = [], 1
        while i * i <= n:
            if n % i == 0:
                out.append(i)
                if i != n // i:
                    out.append(n // i)
            i += 1
        return sorted(out)

    ps = divisors(a0)
    qs = divisors(an)
    from fractions import Fraction

    seen = set(out)
    for p in ps:
        for q in qs:
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in seen:
                    continue
                if determinant(m - ident.scale(cand)) == f.zero():
                    seen.add(cand)
                    out.append(cand)
    return out


def eigenspace(m: Matrix, eigenvalue) -> Subspace:
    return nullspace(m - Matrix.identity(m.field, m.nrows).scale(eigenvalue))


def vec_add(field: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(field.add(field.coerce(a), field.coerce(b)) for a, b in zip(u, v))


def vec_sub(field: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(field.sub(field.coerce(a), field.coerce(b)) for a, b in zip(u, v))


def vec_scale(field: Field, c, v: Sequence) -> tuple:
    c = field.coerce(c)
    return tuple(field.mul(c, field.coerce(a)) for a in v)


def vec_kron(field: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(
        field.mul(field.coerce(a), field.coerce(b)) for a in u for b in v
    )


def unit_vector(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one() if j == i else field.zero() for j in range(n))
