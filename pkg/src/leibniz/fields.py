"""Exact ground fields: the rationals and prime fields F_p.

Scalars are plain Python values: ``fractions.Fraction`` over Q (always in
lowest terms with positive denominator) and ints in ``[0, p)`` over F_p.
All arithmetic is routed through a field object so that matrix code never
has to branch on the field kind.

Serialization: rationals print as ``a/b`` (gcd(a,b)=1, b>0, just ``a`` when
b=1); prime-field residues print as their decimal value.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Malformed scalar strings, bad moduli, division by zero."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """Common interface; instances are immutable and compare by value."""

    characteristic: int

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def coerce(self, x):
        """Bring an int (or already-exact scalar) into this field."""
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def elements(self):
        """All field elements; only available for prime fields."""
        raise FieldError("cannot enumerate an infinite field")

    @property
    def spec(self) -> str:
        raise NotImplementedError

    @staticmethod
    def from_spec(spec: str) -> "Field":
        """Parse a field tag: ``"Q"`` or ``"Fp:<p>"``."""
        if spec == "Q":
            return QQ
        if spec.startswith("Fp:"):
            try:
                p = int(spec[3:])
            except ValueError:
                raise FieldError(f"bad field spec {spec!r}") from None
            return PrimeField(p)
        raise FieldError(f"bad field spec {spec!r}")


class Rationals(Field):
    characteristic = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise FieldError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        return 1 / a

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            d = int(den)
            if d == 0:
                raise FieldError(f"zero denominator in {text!r}")
            return Fraction(int(num), d)
        return Fraction(int(text))

    def format(self, a):
        return str(a)

    @property
    def spec(self):
        return "Q"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def from_int(self, n):
        return n % self.p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator % self.p
        raise FieldError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise FieldError("division by zero")
        return pow(a, self.p - 2, self.p)

    def parse(self, text):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.div(self.from_int(int(num)), self.from_int(int(den)))
        return int(text) % self.p

    def format(self, a):
        return str(a % self.p)

    def elements(self):
        return list(range(self.p))

    @property
    def spec(self):
        return f"Fp:{self.p}"

    def __repr__(self):
        return f"FF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = Rationals()


def FF(p: int) -> PrimeField:
    return PrimeField(p)
