"""Symbolic Grothendieck rings of bimodule categories via fusion rules.

Irreducible classes carry three shapes of label: the shared unit, and
sym/anti-tagged classes (symmetrized and anti-symmetrized irreducibles of
the quotient Lie algebra).  Products follow the truncated tensor product:
same-side products multiply inside a copy of the Lie Grothendieck ring
(with unit coefficients redirected to the shared unit), cross-side
products vanish, and the unit is neutral.  The same shape is produced by
``star_product`` from two arbitrary commutative base rings, and agreement
of the two constructions is a checkable theorem, not an assumption.

Identity checkers probe commutativity, associativity, the alternative and
Jordan laws, and fourth-power associativity on finite windows plus seeded
random integer combinations; verdicts carry explicit counterexamples.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Callable

from .fields import Field


class GrothError(ValueError):
    pass


@dataclass(frozen=True)
class Label:
    kind: str  # "unit" | "sym" | "anti"
    tag: object = None

    def __post_init__(self):
        if self.kind not in ("unit", "sym", "anti"):
            raise GrothError(f"bad label kind {self.kind!r}")
        if self.kind == "unit" and self.tag is not None:
            raise GrothError("the unit label carries no tag")

    def sort_key(self):
        return (self.kind, repr(self.tag))

    def __repr__(self):
        if self.kind == "unit":
            return "U"
        prefix = "S" if self.kind == "sym" else "A"
        if isinstance(self.tag, tuple):
            return f"{prefix}({','.join(str(t) for t in self.tag)})"
        return f"{prefix}({self.tag})"


UNIT = Label("unit")


class GrElement:
    """Integer combination of labels in canonical form (no zero terms)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {l: c for l, c in (terms or {}).items() if c != 0}

    @staticmethod
    def of(label: Label, coeff: int = 1) -> "GrElement":
        return GrElement({label: coeff})

    @staticmethod
    def zero() -> "GrElement":
        return GrElement({})

    def __add__(self, other: "GrElement") -> "GrElement":
        out = dict(self.terms)
        for l, c in other.terms.items():
            out[l] = out.get(l, 0) + c
        return GrElement(out)

    def __sub__(self, other: "GrElement") -> "GrElement":
        out = dict(self.terms)
        for l, c in other.terms.items():
            out[l] = out.get(l, 0) - c
        return GrElement(out)

    def scale(self, n: int) -> "GrElement":
        return GrElement({l: n * c for l, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, GrElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for l in sorted(self.terms, key=lambda x: x.sort_key()):
            c = self.terms[l]
            if c == 1:
                bits.append(f"+{l!r}")
            elif c == -1:
                bits.append(f"-{l!r}")
            else:
                bits.append(f"{c:+d}*{l!r}")
        text = "".join(bits)
        return text[1:] if text.startswith("+") else text


@dataclass
class FusionRule:
    """Finite description of products of irreducible-class labels."""

    name: str
    mul: Callable[[Label, Label], GrElement]
    window: Callable[[int], list]
    default_window: int
    known_labels: Callable[[Label], bool]

    def mul_labels(self, a: Label, b: Label) -> GrElement:
        for l in (a, b):
            if not self.known_labels(l):
                raise GrothError(f"label {l!r} does not belong to rule {self.name}")
        return self.mul(a, b)


def gr_mul(rule: FusionRule, a: GrElement, b: GrElement) -> GrElement:
    out = GrElement.zero()
    for la, ca in a.terms.items():
        for lb, cb in b.terms.items():
            out = out + rule.mul_labels(la, lb).scale(ca * cb)
    return out


# ---------------------------------------------------------------------------
# builtin rules


def _zero_tag(tag: tuple) -> bool:
    return all(x == 0 for x in tag)


def weight_rule(field: Field, k: int) -> FusionRule:
    """Classes tagged by weight vectors in F^k: same-side tags add,
    cross-side products vanish."""
    if k < 0:
        raise GrothError("weight space dimension must be non-negative")

    def norm(kind: str, tag: tuple) -> Label:
        tag = tuple(field.coerce(t) for t in tag)
        return UNIT if _zero_tag(tag) else Label(kind, tag)

    def mul(a: Label, b: Label) -> GrElement:
        if a.kind == "unit":
            return GrElement.of(b)
        if b.kind == "unit":
            return GrElement.of(a)
        if a.kind != b.kind:
            return GrElement.zero()
        s = tuple(field.add(x, y) for x, y in zip(a.tag, b.tag))
        return GrElement.of(norm(a.kind, s))

    def window(radius: int) -> list:
        import itertools

        tags = [
            tuple(field.from_int(t) for t in tag)
            for tag in itertools.product(range(-radius, radius + 1), repeat=k)
        ]
        labels = [UNIT]
        for tag in tags:
            if not _zero_tag(tag):
                labels.append(Label("sym", tag))
        for tag in tags:
            if not _zero_tag(tag):
                labels.append(Label("anti", tag))
        return labels

    def known(l: Label) -> bool:
        return l.kind == "unit" or (
            isinstance(l.tag, tuple) and len(l.tag) == k and not _zero_tag(l.tag)
        )

    return FusionRule(f"weight:{k}", mul, window, 2, known)


def clebsch_gordan(m: int, n: int) -> list[int]:
    """Highest weights of the product of irreducibles with highest weights
    m and n: m+n, m+n-2, ..., |m-n| (min(m, n) + 1 of them)."""
    if m < 0 or n < 0:
        raise GrothError("highest weights are non-negative")
    return list(range(m + n, abs(m - n) - 1, -2))


def sl2_rule() -> FusionRule:
    """Classes tagged by sl2 highest weights, fused by Clebsch-Gordan."""

    def norm(kind: str, n: int) -> Label:
        return UNIT if n == 0 else Label(kind, n)

    def mul(a: Label, b: Label) -> GrElement:
        if a.kind == "unit":
            return GrElement.of(b)
        if b.kind == "unit":
            return GrElement.of(a)
        if a.kind != b.kind:
            return GrElement.zero()
        out = GrElement.zero()
        for w in clebsch_gordan(a.tag, b.tag):
            out = out + GrElement.of(norm(a.kind, w))
        return out

    def window(max_tag: int) -> list:
        labels = [UNIT]
        labels += [Label("sym", n) for n in range(1, max_tag + 1)]
        labels += [Label("anti", n) for n in range(1, max_tag + 1)]
        return labels

    def known(l: Label) -> bool:
        return l.kind == "unit" or (isinstance(l.tag, int) and l.tag >= 1)

    return FusionRule("sl2", mul, window, 6, known)


# ---------------------------------------------------------------------------
# the unital commutative product of two base rings


@dataclass
class BaseRing:
    """A commutative unital ring on a distinguished free basis."""

    name: str
    unit: object
    mul: Callable[[object, object], dict]
    window: Callable[[int], list]


def integer_base() -> BaseRing:
    return BaseRing("Z", "1", lambda a, b: {"1": 1}, lambda size: ["1"])


def group_base(field: Field, k: int) -> BaseRing:
    """Group ring of the additive group of F^k on its canonical basis."""
    unit = tuple(field.zero() for _ in range(k))

    def mul(a, b):
        return {tuple(field.add(x, y) for x, y in zip(a, b)): 1}

    def window(radius):
        import itertools

        return [
            tuple(field.from_int(t) for t in tag)
            for tag in itertools.product(range(-radius, radius + 1), repeat=k)
        ]

    return BaseRing(f"grouplike:{k}", unit, mul, window)


def cg_base() -> BaseRing:
    """The representation ring with basis the sl2 highest weights."""

    def mul(a, b):
        out: dict = {}
        for w in clebsch_gordan(a, b):
            out[w] = out.get(w, 0) + 1
        return out

    return BaseRing("cg", 0, mul, lambda size: list(range(size + 1)))


def star_product(a: BaseRing, b: BaseRing) -> FusionRule:
    """Unital commutative product: adjoin a shared unit to the non-unit
    basis labels of both rings; same-side products redirect their unit
    coefficient to the shared unit, cross-side products vanish."""

    def push(side: str, base: BaseRing, product: dict) -> GrElement:
        out = GrElement.zero()
        for label, coeff in product.items():
            target = UNIT if label == base.unit else Label(side, label)
            out = out + GrElement.of(target, coeff)
        return out

    def mul(x: Label, y: Label) -> GrElement:
        if x.kind == "unit":
            return GrElement.of(y)
        if y.kind == "unit":
            return GrElement.of(x)
        if x.kind != y.kind:
            return GrElement.zero()
        base = a if x.kind == "sym" else b
        return push(x.kind, base, base.mul(x.tag, y.tag))

    def window(size: int) -> list:
        labels = [UNIT]
        labels += [Label("sym", l) for l in a.window(size) if l != a.unit]
        labels += [Label("anti", l) for l in b.window(size) if l != b.unit]
        return labels

    def known(l: Label) -> bool:
        return True  # base rings are open-ended; trust their mul

    return FusionRule(f"star({a.name},{b.name})", mul, window, 2, known)


# ---------------------------------------------------------------------------
# identity checkers


@dataclass
class Verdict:
    identity: str
    holds: bool
    tested: int
    counterexample: dict | None = None


def _random_element(rule: FusionRule, labels, rng: random.Random) -> GrElement:
    support = rng.sample(labels, k=min(len(labels), rng.randint(1, 3)))
    out = GrElement.zero()
    for l in support:
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        out = out + GrElement.of(l, c)
    return out


def identity_checkers(
    rule: FusionRule,
    window: list | None = None,
    trials: int = 200,
    seed: int = 0,
) -> dict:
    """Exact identity verdicts on a finite window plus random combinations.

    commutative   uv = vu
    associative   (uv)w = u(vw)
    alternative   (uu)v = u(uv)
    jordan        (u^2 v)u = u^2 (vu)
    power_associative   u^2 u^2 = (u^2 u)u
    """
    if window is None:
        window = rule.window(rule.default_window)
    if not window:
        raise GrothError("empty label window")
    rng = random.Random(seed)
    singles = [GrElement.of(l) for l in window]
    pairsums = (
        [singles[i] + singles[j] for i in range(len(singles)) for j in range(i + 1, len(singles))]
        if len(singles) <= 20
        else []
    )
    combos = [_random_element(rule, window, rng) for _ in range(trials)]
    mul = lambda x, y: gr_mul(rule, x, y)

    def verdict(name, cases, lhs_fn, rhs_fn) -> Verdict:
        tested = 0
        for case in cases:
            tested += 1
            lhs, rhs = lhs_fn(*case), rhs_fn(*case)
            if lhs != rhs:
                witness = {
                    "elements": case,
                    "lhs": lhs,
                    "rhs": rhs,
                }
                return Verdict(name, False, tested, witness)
        return Verdict(name, True, tested)

    def pair_cases():
        for u in singles:
            for v in singles:
                yield (u, v)
        for u in pairsums:
            for v in singles:
                yield (u, v)
        for i in range(0, len(combos) - 1, 2):
            yield (combos[i], combos[i + 1])

    def triple_cases():
        n = len(singles)
        if n**3 <= 30000:
            for u in singles:
                for v in singles:
                    for w in singles:
                        yield (u, v, w)
        else:
            for _ in range(3000):
                yield tuple(rng.choice(singles) for _ in range(3))
        for i in range(0, len(combos) - 2, 3):
            yield (combos[i], combos[i + 1], combos[i + 2])

    def single_cases():
        for u in singles:
            yield (u,)
        for u in pairsums:
            yield (u,)
        for u in combos:
            yield (u,)

    out = {}
    out["commutative"] = verdict(
        "commutative", pair_cases(), lambda u, v: mul(u, v), lambda u, v: mul(v, u)
    )
    out["associative"] = verdict(
        "associative",
        triple_cases(),
        lambda u, v, w: mul(mul(u, v), w),
        lambda u, v, w: mul(u, mul(v, w)),
    )
    out["alternative"] = verdict(
        "alternative",
        pair_cases(),
        lambda u, v: mul(mul(u, u), v),
        lambda u, v: mul(u, mul(u, v)),
    )
    out["jordan"] = verdict(
        "jordan",
        pair_cases(),
        lambda u, v: mul(mul(mul(u, u), v), u),
        lambda u, v: mul(mul(u, u), mul(v, u)),
    )
    out["power_associative"] = verdict(
        "power_associative",
        single_cases(),
        lambda u: mul(mul(u, u), mul(u, u)),
        lambda u: mul(mul(mul(u, u), u), u),
    )
    return out


def criterion_scan(rule: FusionRule, window: list | None = None) -> list[dict]:
    """Predict associativity/alternativity/Jordan failures from the shape
    of same-side squares and products, then confirm each prediction by
    replaying the corresponding counterexample expression.

    Patterns, for sides X != Y with labels a, a' on side X and b on Y:
      (a) unit coefficient in a*a' nonzero and Y nonempty: not associative,
          replayed as (a a') b != a (a' b);
      (b) pattern (a) with a = a': not alternative;
      (c) a^2 has a non-unit same-side term and b^2 has a nonzero unit
          coefficient: not a Jordan ring, replayed as (a^2 b) b != a^2 (b b).
    """
    if window is None:
        window = rule.window(rule.default_window)
    for l in window:
        if l.kind not in ("unit", "sym", "anti"):
            raise GrothError("rule window is not star-shaped; refusing to scan")
    sides = {
        "sym": [l for l in window if l.kind == "sym"],
        "anti": [l for l in window if l.kind == "anti"],
    }
    findings = []
    mul = lambda x, y: gr_mul(rule, x, y)

    def replay(prop, a, a2, b):
        ea, ea2, eb = (GrElement.of(x) for x in (a, a2, b))
        if prop in ("associative", "alternative"):
            lhs = mul(mul(ea, ea2), eb)
            rhs = mul(ea, mul(ea2, eb))
            expr = "(a a') b vs a (a' b)"
        else:
            sq = mul(ea, ea)
            lhs = mul(mul(sq, eb), eb)
            rhs = mul(sq, mul(eb, eb))
            expr = "(a^2 b) b vs a^2 (b b)"
        return {
            "property": prop,
            "labels": (a, a2, b),
            "expression": expr,
            "lhs": lhs,
            "rhs": rhs,
            "confirmed": lhs != rhs,
        }

    for side, other in (("sym", "anti"), ("anti", "sym")):
        if not sides[other]:
            continue
        b = sides[other][0]
        for a in sides[side]:
            for a2 in sides[side]:
                prod = rule.mul_labels(a, a2)
                if prod.terms.get(UNIT, 0) != 0:
                    prop = "alternative" if a == a2 else "associative"
                    findings.append(replay(prop, a, a2, b))
        for a in sides[side]:
            square = rule.mul_labels(a, a)
            has_nonunit = any(l.kind != "unit" for l in square.terms)
            if not has_nonunit:
                continue
            for b2 in sides[other]:
                bsq = rule.mul_labels(b2, b2)
                if bsq.terms.get(UNIT, 0) != 0:
                    findings.append(replay("jordan", a, a, b2))
                    break
    # deduplicate per property, keeping the first (deterministic) witness
    seen = set()
    unique = []
    for f in findings:
        if f["property"] not in seen:
            seen.add(f["property"])
            unique.append(f)
    return unique


# ---------------------------------------------------------------------------
# classes of concrete bimodules


@dataclass
class ClassRegistry:
    """How to read irreducible-class labels off composition factors."""

    kind: str  # "weight" | "sl2"
    algebra: object

    def rule(self) -> FusionRule:
        if self.kind == "sl2":
            return sl2_rule()
        from .algebra import products_and_series

        span = products_and_series(self.algebra)["product_span"]
        k = self.algebra.dim - span.dim
        return weight_rule(self.algebra.field, k)


def class_of_bimodule(mod, registry: ClassRegistry, seed: int = 0) -> GrElement:
    """Sum of factor labels of a certified composition series."""
    from .algebra import products_and_series
    from .chop import chop

    if mod.algebra != registry.algebra:
        raise GrothError("bimodule algebra does not match the registry")
    report = chop(mod, seed=seed)
    if not report.certified:
        raise GrothError(
            "composition series is not certified; refusing to assign a class"
        )
    field = mod.field
    out = GrElement.zero()
    if registry.kind == "weight":
        span = products_and_series(registry.algebra)["product_span"]
        keep = span.complement_coords()
        for f in report.factors:
            if f.dim != 1:
                raise GrothError(
                    "weight registry expects 1-dimensional factors only"
                )
            a, c = f.left_scalars, f.right_scalars
            tag = tuple(a[j] for j in keep)
            if f.trivial:
                out = out + GrElement.of(UNIT)
            elif all(x == field.neg(y) for x, y in zip(c, a)):
                out = out + GrElement.of(Label("sym", tag))
            elif all(x == field.zero() for x in c):
                out = out + GrElement.of(Label("anti", tag))
            else:
                raise GrothError(
                    "factor is neither symmetric nor anti-symmetric: "
                    "not a class of the full-bimodule category"
                )
        return out
    if registry.kind == "sl2":
        for f in report.factors:
            n = f.dim - 1
            if f.trivial:
                out = out + GrElement.of(UNIT)
            elif f.symmetric:
                out = out + GrElement.of(Label("sym", n))
            elif f.anti_symmetric:
                out = out + GrElement.of(Label("anti", n))
            else:
                raise GrothError("sl2 factor with a mixed action pattern")
        return out
    raise GrothError(f"unknown registry kind {registry.kind!r}")


def verify_ring_vs_modules(rule: FusionRule, registry: ClassRegistry, pairs) -> dict:
    """For each pair (M, N): the class of both truncated products must
    equal the fusion product of the classes."""
    from .tensor import trunc_bar, trunc_under

    results = []
    for m, n in pairs:
        cm = class_of_bimodule(m, registry)
        cn = class_of_bimodule(n, registry)
        expected = gr_mul(rule, cm, cn)
        got_bar = class_of_bimodule(trunc_bar(m, n), registry)
        got_under = class_of_bimodule(trunc_under(m, n), registry)
        results.append(
            {
                "left": cm,
                "right": cn,
                "expected": expected,
                "bar": got_bar,
                "under": got_under,
                "ok": got_bar == expected == got_under,
            }
        )
    return {"ok": all(r["ok"] for r in results), "cases": results}


# ---------------------------------------------------------------------------
# element expressions (CLI surface)

_TERM_RE = re.compile(
    r"^(?P<sign>[+-])?(?P<coeff>\d+)?\*?(?P<label>U|[SA]\([^)]*\))$"
)


def _split_terms(text: str) -> list[str]:
    """Split on top-level +/- only, so tags like A(-1) stay intact."""
    s = text.replace(" ", "")
    terms: list[str] = []
    cur = ""
    depth = 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur not in ("", "+", "-"):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur:
        terms.append(cur)
    return terms


def parse_element(rule: FusionRule, text: str, field: Field | None = None) -> GrElement:
    """Parse e.g. ``2*S(1) + A(-1) - U`` (weight tags may be rationals)."""
    out = GrElement.zero()
    terms = _split_terms(text)
    if not terms:
        raise GrothError("empty element expression")
    for chunk in terms:
        m = _TERM_RE.match(chunk)
        if not m:
            raise GrothError(f"cannot parse term {chunk!r}")
        coeff = int(m.group("coeff") or 1)
        if m.group("sign") == "-":
            coeff = -coeff
        body = m.group("label")
        if body == "U":
            label = UNIT
        else:
            kind = "sym" if body[0] == "S" else "anti"
            parts = body[2:-1].split(",")
            if field is None:
                if len(parts) != 1:
                    raise GrothError(f"expected a single integer tag in {chunk!r}")
                n = int(parts[0])
                label = UNIT if n == 0 else Label(kind, n)
            else:
                tag = tuple(field.parse(p) for p in parts)
                label = UNIT if all(x == field.zero() for x in tag) else Label(kind, tag)
        if not rule.known_labels(label):
            raise GrothError(f"label {label!r} is foreign to rule {rule.name}")
        out = out + GrElement.of(label, coeff)
    return out
