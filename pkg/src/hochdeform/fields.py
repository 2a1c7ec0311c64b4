"""Exact scalar fields: the rationals and the prime fields GF(p).

Elements of ``QQ`` are ``gmpy2.mpq`` rationals.  Elements of
``GF(p)`` are :class:`ModP` residues.  Both support the usual arithmetic
operators, so the rest of the package never needs to know which field it is
working over; it only asks the field for ``zero``, ``one`` and conversions.
"""

from fractions import Fraction
import re

from gmpy2 import mpq

_RATIONAL = (Fraction, type(mpq()))


class ModP:
    """A residue class modulo a prime ``p``."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"cannot mix GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, _RATIONAL):
            return other.numerator * _inverse(other.denominator, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * _inverse(o, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o * _inverse(self.v, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if k < 0:
            return ModP(pow(_inverse(self.v, self.p), -k, self.p), self.p)
        return ModP(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _inverse(v, p):
    if v % p == 0:
        raise ZeroDivisionError(f"division by zero in GF({p})")
    return pow(v, -1, p)


class Rationals:
    """The field of rational numbers."""

    name = "Q"
    characteristic = 0
    zero = mpq(0)
    one = mpq(1)

    def __call__(self, x):
        if isinstance(x, str):
            # Fraction does the parsing so that malformed text raises ValueError
            return mpq(Fraction(x.strip()))
        if isinstance(x, ModP):
            raise TypeError("cannot lift a GF(p) residue to Q")
        if isinstance(x, float):
            raise TypeError("floats are not exact; pass an int or a 'p/q' string")
        return mpq(x)

    def format(self, x):
        return str(mpq(x))

    def random(self, rng, bound=3):
        return mpq(rng.randint(-bound, bound))

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The finite field GF(p); ``p`` must be prime."""

    def __init__(self, p):
        from sympy import isprime

        p = int(p)
        if not isprime(p):
            raise ValueError(f"GF(p) requires p prime, got {p}")
        self.p = p
        self.name = f"F{p}"
        self.characteristic = p
        self.zero = ModP(0, p)
        self.one = ModP(1, p)

    def __call__(self, x):
        if isinstance(x, ModP):
            if x.p != self.p:
                raise ValueError(f"cannot mix GF({self.p}) and GF({x.p})")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, _RATIONAL):
            return ModP(x.numerator * _inverse(x.denominator, self.p), self.p)
        return ModP(int(x), self.p)

    def format(self, x):
        return str(self(x).v)

    def random(self, rng, bound=None):
        return ModP(rng.randrange(self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = Rationals()


def GF(p):
    return PrimeField(p)


_FIELD_RE = re.compile(r"^(?:F|GF|Fp)\(?(\d+)\)?$")


def field_from_name(name):
    """Parse ``Q``, ``QQ``, ``F7``, ``GF(7)`` or ``Fp(7)`` into a field."""
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    m = _FIELD_RE.match(name)
    if m is None:
        raise ValueError(f"unknown field {name!r}; expected Q or F<p>")
    return GF(int(m.group(1)))
