"""Degree-truncated computations in presented associative algebras.

A presentation is a free associative algebra on generators ell_1..ell_n,
r_1..r_n (or the images x_1..x_m of a basis in the Lie quotient) together
with relations of lead degree 2 and degree <= 1 tails:

  full envelope      (llm) + (lml) + (zd)
  weak envelope      (llm) + (lml)
  Lie envelope       commutator relations of the quotient algebra

Everything is computed inside the slice of words of bounded length.  The
degree-d ideal slice is spanned by u * rel * v with |u| + 2 + |v| <= d;
for inhomogeneous ideals this can undercount the true slice, so the
filtered dimensions are documented as upper bounds on the quotient
dimensions and are asserted only where a closed form pins them down.

Monomial order: degree-lexicographic, left-action generators first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import LeibnizAlgebra, canonical_lie
from .bimodule import Bimodule, BimoduleError
from .linalg import RowReducer, unit_vector


class EnvelopeError(ValueError):
    pass


Word = tuple  # tuple of generator indices
NCPoly = dict  # Word -> scalar


def poly_add(field, a: NCPoly, b: NCPoly) -> NCPoly:
    out = dict(a)
    for w, c in b.items():
        s = field.add(out.get(w, field.zero()), c)
        if s == field.zero():
            out.pop(w, None)
        else:
            out[w] = s
    return out


def poly_scale(field, c, a: NCPoly) -> NCPoly:
    if c == field.zero():
        return {}
    return {w: field.mul(c, x) for w, x in a.items()}


def poly_mul(field, a: NCPoly, b: NCPoly) -> NCPoly:
    out: NCPoly = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            s = field.add(out.get(w, field.zero()), field.mul(ca, cb))
            if s == field.zero():
                out.pop(w, None)
            else:
                out[w] = s
    return out


def poly_degree(a: NCPoly) -> int:
    return max((len(w) for w in a), default=0)


class PresentedAlgebra:
    """Free algebra modulo lead-degree-2 relations, sliced by word length."""

    def __init__(self, field, gen_names, relations, cutoff: int = 3, which: str = "free",
                 algebra: LeibnizAlgebra | None = None, lie_data=None):
        if cutoff < 2:
            raise EnvelopeError("cutoff must be at least 2")
        self.field = field
        self.gen_names = tuple(gen_names)
        self.relations = [dict(r) for r in relations if r]
        self.cutoff = cutoff
        self.which = which
        self.algebra = algebra
        self.lie_data = lie_data  # (quotient algebra, projection morphism) for envelopes
        for rel in self.relations:
            if poly_degree(rel) > 2:
                raise EnvelopeError("relations must have degree at most 2")
        self._words: dict[int, list[Word]] = {}
        self._index: dict[int, dict[Word, int]] = {}
        self._reducers: dict[int, RowReducer] = {}

    @property
    def ngens(self) -> int:
        return len(self.gen_names)

    def gen_index(self, name) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.ngens:
                raise EnvelopeError(f"generator index {name} out of range")
            return name
        try:
            return self.gen_names.index(name)
        except ValueError:
            raise EnvelopeError(f"no generator named {name!r}") from None

    def slice_words(self, d: int) -> list[Word]:
        if d not in self._words:
            words: list[Word] = []
            level = [()]
            words.extend(level)
            for _ in range(d):
                level = [w + (g,) for w in level for g in range(self.ngens)]
                words.extend(level)
            self._words[d] = words
            self._index[d] = {w: i for i, w in enumerate(words)}
        return self._words[d]

    def word_index(self, d: int) -> dict[Word, int]:
        self.slice_words(d)
        return self._index[d]

    def poly_to_vec(self, poly: NCPoly, d: int) -> list:
        idx = self.word_index(d)
        vec = [self.field.zero()] * len(self.slice_words(d))
        for w, c in poly.items():
            if len(w) > d:
                raise EnvelopeError(f"word of length {len(w)} above slice degree {d}")
            vec[idx[w]] = c
        return vec

    def vec_to_poly(self, vec, d: int) -> NCPoly:
        words = self.slice_words(d)
        return {
            words[i]: c for i, c in enumerate(vec) if c != self.field.zero()
        }

    def ideal_reducer(self, d: int) -> RowReducer:
        """Span of u * rel * v with |u| + 2 + |v| <= d, row-reduced."""
        if d > self.cutoff:
            raise EnvelopeError(f"degree {d} above cutoff {self.cutoff}")
        if d not in self._reducers:
            red = RowReducer(self.field, len(self.slice_words(d)))
            idx = self.word_index(d)
            zero = self.field.zero()
            for rel in self.relations:
                budget = d - 2
                for la in range(budget + 1):
                    for u in (
                        w for w in self.slice_words(d) if len(w) == la
                    ):
                        for lb in range(budget - la + 1):
                            for v in (
                                w for w in self.slice_words(d) if len(w) == lb
                            ):
                                vec = [zero] * len(self.slice_words(d))
                                for w, c in rel.items():
                                    vec[idx[u + w + v]] = self.field.add(
                                        vec[idx[u + w + v]], c
                                    )
                                red.insert(vec)
            self._reducers[d] = red
        return self._reducers[d]

    def low_degree_ideal_dims(self, top: int) -> list[int]:
        """dim(computed ideal slice at degree ``top``, intersected with the
        words of degree <= d) for d = 0..top.

        Re-reduce the ideal basis with coordinates ordered by descending
        degree; rows whose pivot sits in the degree <= d tail are exactly a
        basis of the intersection.
        """
        top = max(top, 2)
        base = self.ideal_reducer(top)
        width = len(self.slice_words(top))
        rev = RowReducer(self.field, width)
        for row in base.rows:
            rev.insert(list(reversed(row)))
        dims = []
        for d in range(top + 1):
            cut = width - len(self.slice_words(d))
            dims.append(sum(1 for p in rev.pivots if p >= cut))
        return dims

    def filtered_dims(self, up_to: int) -> list[int]:
        """Upper bounds on the dimensions of the degree <= d quotient
        slices, using all ideal elements visible up to degree ``up_to``."""
        low = self.low_degree_ideal_dims(up_to)
        return [
            len(self.slice_words(d)) - low[d] for d in range(up_to + 1)
        ]

    def reduce_poly(self, poly: NCPoly, d: int) -> NCPoly:
        residual = self.ideal_reducer(d).reduce(self.poly_to_vec(poly, d))
        return self.vec_to_poly(residual, d)

    def in_ideal(self, poly: NCPoly, d: int | None = None) -> bool:
        if d is None:
            d = max(2, poly_degree(poly))
        return not self.reduce_poly(poly, d)

    def __repr__(self):
        return (
            f"PresentedAlgebra({self.which}, {self.ngens} generators, "
            f"{len(self.relations)} relations)"
        )


def _envelope_relations(alg: LeibnizAlgebra, include_zd: bool):
    """Relation families on generators l_0..l_{n-1}, r_0..r_{n-1}."""
    f = alg.field
    n = alg.dim
    rels = []
    l = lambda i: (i,)
    r = lambda i: (n + i,)
    for i in range(n):
        for j in range(n):
            cell = alg.table[i][j]
            # (llm): l_i l_j - l_j l_i - l_{b_i b_j}
            rel: NCPoly = {}
            rel = poly_add(f, rel, {l(i) + l(j): f.one()})
            rel = poly_add(f, rel, {l(j) + l(i): f.neg(f.one())})
            for k in range(n):
                if cell[k] != f.zero():
                    rel = poly_add(f, rel, {l(k): f.neg(cell[k])})
            if rel:
                rels.append(rel)
            # (lml): l_i r_j - r_j l_i - r_{b_i b_j}
            rel = {}
            rel = poly_add(f, rel, {l(i) + r(j): f.one()})
            rel = poly_add(f, rel, {r(j) + l(i): f.neg(f.one())})
            for k in range(n):
                if cell[k] != f.zero():
                    rel = poly_add(f, rel, {r(k): f.neg(cell[k])})
            if rel:
                rels.append(rel)
            if include_zd:
                # (zd): r_i l_j + r_i r_j
                rels.append({r(i) + l(j): f.one(), r(i) + r(j): f.one()})
    return rels


def build_presentation(alg: LeibnizAlgebra, which: str, cutoff: int = 3) -> PresentedAlgebra:
    """Presentations: ``ul`` (full), ``ulweak`` (no zero-divisor family),
    ``ulie`` (enveloping algebra of the canonical Lie quotient)."""
    f = alg.field
    lie = canonical_lie(alg)
    if which in ("ul", "ulweak"):
        names = [f"l_{nm}" for nm in alg.basis_names] + [
            f"r_{nm}" for nm in alg.basis_names
        ]
        rels = _envelope_relations(alg, include_zd=(which == "ul"))
        return PresentedAlgebra(
            f, names, rels, cutoff, which, algebra=alg, lie_data=lie
        )
    if which == "ulie":
        quot, _ = lie
        names = [f"x_{nm}" for nm in quot.basis_names]
        rels = []
        m = quot.dim
        for i in range(m):
            for j in range(m):
                rel: NCPoly = poly_add(
                    f, {(i, j): f.one()}, {(j, i): f.neg(f.one())}
                )
                cell = quot.table[i][j]
                for k in range(m):
                    if cell[k] != f.zero():
                        rel = poly_add(f, rel, {(k,): f.neg(cell[k])})
                if rel:
                    rels.append(rel)
        return PresentedAlgebra(
            f, names, rels, cutoff, which, algebra=alg, lie_data=lie
        )
    raise EnvelopeError(f"unknown presentation kind {which!r}")


def free_presentation(field, names, cutoff: int = 3) -> PresentedAlgebra:
    return PresentedAlgebra(field, names, [], cutoff, "free")


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass
class AlgebraHom:
    """Generator images of degree <= 1 between presented algebras."""

    source: PresentedAlgebra
    target: PresentedAlgebra
    images: list  # NCPoly in the target per source generator
    name: str = ""

    def __post_init__(self):
        if len(self.images) != self.source.ngens:
            raise EnvelopeError("one image per source generator required")
        for img in self.images:
            if poly_degree(img) > 1:
                raise EnvelopeError("generator images must have degree <= 1")

    def substitute(self, poly: NCPoly) -> NCPoly:
        f = self.target.field
        out: NCPoly = {}
        for w, c in poly.items():
            term: NCPoly = {(): c}
            for g in w:
                term = poly_mul(f, term, self.images[g])
            out = poly_add(f, out, term)
        return out

    def verify(self, degree: int | None = None) -> bool:
        """Every source relation maps into the target's ideal span."""
        for rel in self.source.relations:
            image = self.substitute(rel)
            d = degree if degree is not None else max(2, poly_degree(image))
            if not self.target.in_ideal(image, d):
                return False
        return True


def _lie_generator_images(alg: LeibnizAlgebra, lie_pres: PresentedAlgebra):
    """Image polynomials of the original basis in the Lie presentation."""
    quot, morph = lie_pres.lie_data
    f = alg.field
    out = []
    for i in range(alg.dim):
        col = morph.matrix.apply(unit_vector(f, alg.dim, i))
        out.append({(k,): c for k, c in enumerate(col) if c != f.zero()})
    return out


def hom_d0(ul: PresentedAlgebra, ulie: PresentedAlgebra) -> AlgebraHom:
    """l_x -> image of x, r_x -> 0."""
    alg = ul.algebra
    bars = _lie_generator_images(alg, ulie)
    images = list(bars) + [{} for _ in range(alg.dim)]
    return AlgebraHom(ul, ulie, images, name="d0")


def hom_d1(ul: PresentedAlgebra, ulie: PresentedAlgebra) -> AlgebraHom:
    """l_x -> image of x, r_x -> minus the image of x."""
    alg = ul.algebra
    f = alg.field
    bars = _lie_generator_images(alg, ulie)
    negs = [poly_scale(f, f.neg(f.one()), b) for b in bars]
    return AlgebraHom(ul, ulie, list(bars) + negs, name="d1")


def hom_s0(ulie: PresentedAlgebra, ul: PresentedAlgebra) -> AlgebraHom:
    """Section: the class of x -> l_(representative of x)."""
    alg = ul.algebra
    quot, _ = ulie.lie_data
    from .algebra import leibniz_kernel

    ker = leibniz_kernel(alg)
    reps = ker.complement_coords()
    if len(reps) != quot.dim:
        raise EnvelopeError("quotient dimension mismatch")
    f = alg.field
    images = [{(reps[j],): f.one()} for j in range(quot.dim)]
    return AlgebraHom(ulie, ul, images, name="s0")


def hom_omega(ulweak: PresentedAlgebra, ul: PresentedAlgebra) -> AlgebraHom:
    """Quotient map from the weak envelope: identity on generator names."""
    f = ul.field
    images = [{(i,): f.one()} for i in range(ulweak.ngens)]
    return AlgebraHom(ulweak, ul, images, name="omega")


def standard_homs(alg: LeibnizAlgebra, cutoff: int = 3) -> dict:
    ul = build_presentation(alg, "ul", cutoff)
    ulweak = build_presentation(alg, "ulweak", cutoff)
    ulie = build_presentation(alg, "ulie", cutoff)
    return {
        "ul": ul,
        "ulweak": ulweak,
        "ulie": ulie,
        "d0": hom_d0(ul, ulie),
        "d1": hom_d1(ul, ulie),
        "s0": hom_s0(ulie, ul),
        "omega": hom_omega(ulweak, ul),
    }


def check_section_identities(alg: LeibnizAlgebra, cutoff: int = 3) -> dict:
    """d0 . s0 = id and d1 . s0 = id on degree <= 1 normal forms, and the
    products r_x (l_y + r_y) vanish in the full envelope."""
    data = standard_homs(alg, cutoff)
    ulie = data["ulie"]
    f = alg.field
    out = {}
    for name in ("d0", "d1"):
        ok = True
        for j in range(ulie.ngens):
            composed = data[name].substitute(data["s0"].images[j])
            diff = poly_add(
                f, composed, {(j,): f.neg(f.one())}
            )
            if diff and not ulie.in_ideal(diff, 2):
                ok = False
                break
        out[f"{name}_s0"] = ok
    out["kernel_product"] = kernel_products_vanish(data["ul"])
    return out


def kernel_products_vanish(pres: PresentedAlgebra) -> bool:
    """Do all products r_x (l_y + r_y) reduce to zero at degree 2?"""
    alg = pres.algebra
    if alg is None or pres.which not in ("ul", "ulweak"):
        raise EnvelopeError("kernel products are defined for envelope presentations")
    f = pres.field
    n = alg.dim
    for i in range(n):
        for j in range(n):
            poly = {(n + i, j): f.one(), (n + i, n + j): f.one()}
            if not pres.in_ideal(poly, 2):
                return False
    return True


def degree_one_primitive_dim(pres: PresentedAlgebra) -> int:
    """Dimension of the generator span modulo the degree <= 1 part of the
    computed ideal slice.  Relations carry no constant terms, so the
    intersection lies inside the generator span."""
    return pres.ngens - pres.low_degree_ideal_dims(2)[1]


# ---------------------------------------------------------------------------
# Hopf structure of the weak envelope


def _coproduct(field, poly: NCPoly) -> dict:
    """Delta with all generators primitive: sum over subsets of positions,
    both parts keeping their original order.  Returns {(wa, wb): coeff}."""
    out: dict = {}
    for w, c in poly.items():
        k = len(w)
        for mask in range(1 << k):
            wa = tuple(w[t] for t in range(k) if mask >> t & 1)
            wb = tuple(w[t] for t in range(k) if not mask >> t & 1)
            key = (wa, wb)
            s = field.add(out.get(key, field.zero()), c)
            if s == field.zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def _antipode(field, poly: NCPoly, signs) -> NCPoly:
    """Antihomomorphism with S(g) = signs[g] * g."""
    out: NCPoly = {}
    for w, c in poly.items():
        coeff = c
        for g in w:
            coeff = field.mul(coeff, signs[g])
        rev = tuple(reversed(w))
        s = field.add(out.get(rev, field.zero()), coeff)
        if s == field.zero():
            out.pop(rev, None)
        else:
            out[rev] = s
    return out


def hopf_check(pres: PresentedAlgebra, antipode_signs=None) -> dict:
    """Counit/coideal/antipode compatibility of the relation ideal.

    Exact finite checks in the degree <= 2 slice: for each relation rho,
    eps(rho) = 0, Delta(rho) lies in J (x) T + T (x) J (verified through
    the projection to the complement of the relation span, applied to both
    tensor legs), and S(rho) lies back in the relation span.

    Refuses the full envelope: its zero-divisor relations are not
    compatible with the primitive coproduct, which is exactly why only
    the weak envelope carries the Hopf structure.
    """
    if pres.which == "ul":
        raise EnvelopeError(
            "the full envelope is only augmented, not a Hopf algebra; "
            "run the check on the weak presentation"
        )
    if pres.which not in ("ulweak", "ulie", "free"):
        raise EnvelopeError(f"unsupported presentation kind {pres.which!r}")
    f = pres.field
    if antipode_signs is None:
        antipode_signs = [f.neg(f.one())] * pres.ngens
    else:
        antipode_signs = [f.coerce(s) for s in antipode_signs]

    red = pres.ideal_reducer(2)
    counit_ok = all((() not in rel) for rel in pres.relations)

    def pi(word: Word) -> dict:
        vec = red.reduce(pres.poly_to_vec({word: f.one()}, 2))
        return {i: c for i, c in enumerate(vec) if c != f.zero()}

    coideal_ok = True
    for rel in pres.relations:
        acc: dict = {}
        for (wa, wb), c in _coproduct(f, rel).items():
            for ia, va in pi(wa).items():
                cva = f.mul(c, va)
                for ib, vb in pi(wb).items():
                    key = (ia, ib)
                    s = f.add(acc.get(key, f.zero()), f.mul(cva, vb))
                    if s == f.zero():
                        acc.pop(key, None)
                    else:
                        acc[key] = s
        if acc:
            coideal_ok = False
            break

    antipode_ok = all(
        pres.in_ideal(_antipode(f, rel, antipode_signs), 2)
        for rel in pres.relations
    )
    return {"counit": counit_ok, "coideal": coideal_ok, "antipode": antipode_ok}


# ---------------------------------------------------------------------------
# actions on bimodules


def act(pres: PresentedAlgebra, word, mod: Bimodule, vec) -> tuple:
    """Apply a generator word: l_i by the left action, r_i by the right
    action, concatenation by composition (rightmost factor first)."""
    alg = pres.algebra
    if alg is None or pres.which not in ("ul", "ulweak"):
        raise EnvelopeError("actions are defined for envelope presentations")
    if mod.algebra != alg:
        raise BimoduleError("bimodule is over a different algebra")
    if pres.which == "ulweak" and not mod.is_weak():
        raise BimoduleError("weak envelope acts on weak bimodules only")
    if pres.which == "ul" and not mod.is_full():
        raise BimoduleError("full envelope acts on full bimodules only")
    n = alg.dim
    out = tuple(vec)
    for g in reversed([pres.gen_index(g) for g in word]):
        mat = mod.lam[g] if g < n else mod.rho[g - n]
        out = mat.apply(out)
    return out


def act_poly(pres: PresentedAlgebra, poly: NCPoly, mod: Bimodule, vec) -> tuple:
    f = pres.field
    out = (f.zero(),) * mod.dim
    for w, c in poly.items():
        img = act(pres, w, mod, vec)
        out = tuple(f.add(a, f.mul(c, b)) for a, b in zip(out, img))
    return out
