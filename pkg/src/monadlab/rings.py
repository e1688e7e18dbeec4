"""Coefficient fields and the ambient polynomial ring S = k[x,y,z,w].

Monomials are packed into single integers so that comparison under the
active monomial order is plain integer comparison and multiplication is a
single addition.  Layout (17-bit fields, guard at total degree 2**16):

    grevlex:  deg << 51 | (OFF-ew) << 34 | (OFF-ez) << 17 | (OFF-ey)
    grlex:    deg << 51 |      ex  << 34 |      ey  << 17 |      ez

with OFF = 2**16.  In both encodings the product of two monomials is
``a + b - one`` where ``one`` is the encoding of the monomial 1.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DegreeOverflowError, MonadLabError

VARIABLES = ("x", "y", "z", "w")

_OFF = 1 << 16
_FM = (1 << 17) - 1
_DEG_GUARD = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldQQ:
    """Arbitrary-precision rationals; values are ``fractions.Fraction``."""

    name = "QQ"
    p = 0
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of_int(n):
        return Fraction(n)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return 1 / Fraction(a)

    @staticmethod
    def int_repr(a):
        if a.denominator != 1:
            raise MonadLabError(f"non-integer rational {a} has no integer representation")
        return a.numerator

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, FieldQQ)

    def __hash__(self):
        return hash("QQ")


class FieldFp:
    """Prime field F_p; values are ints in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise MonadLabError(f"{p} is not prime")
        self.p = p
        self.name = f"Fp({p})"
        self.zero = 0
        self.one = 1 % p

    def of_int(self, n):
        return n % self.p

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
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def int_repr(self, a):
        # symmetric representative, so -x prints as -x and reparses equal
        a %= self.p
        return a if a <= self.p // 2 else a - self.p

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, FieldFp) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = FieldQQ()


def Fp(p: int) -> FieldFp:
    return FieldFp(p)


class _CodecBase:
    """Packed-monomial operations; subclasses fix the order semantics."""

    one = 0

    def mul(self, a: int, b: int) -> int:
        m = a + b - self.one
        if (m >> 51) >= _DEG_GUARD:
            raise DegreeOverflowError("total degree exceeds 2**16")
        return m

    def lcm(self, a: int, b: int) -> int:
        ea = self.exps(a)
        eb = self.exps(b)
        return self.make(tuple(max(u, v) for u, v in zip(ea, eb)))

    def div(self, a: int, b: int):
        """Quotient a/b, or None when b does not divide a."""
        if not self.divides(b, a):
            return None
        return a - b + self.one

    @staticmethod
    def deg(a: int) -> int:
        return a >> 51


class GrevlexCodec(_CodecBase):
    """Graded reverse lexicographic with x > y > z > w."""

    name = "grevlex"
    one = (_OFF << 34) | (_OFF << 17) | _OFF

    @staticmethod
    def make(exps) -> int:
        ex, ey, ez, ew = exps
        d = ex + ey + ez + ew
        if d >= _DEG_GUARD or min(exps) < 0:
            raise DegreeOverflowError(f"exponents {exps} out of range")
        return (d << 51) | ((_OFF - ew) << 34) | ((_OFF - ez) << 17) | (_OFF - ey)

    @staticmethod
    def exps(m: int):
        d = m >> 51
        ew = _OFF - ((m >> 34) & _FM)
        ez = _OFF - ((m >> 17) & _FM)
        ey = _OFF - (m & _FM)
        return (d - ey - ez - ew, ey, ez, ew)

    @staticmethod
    def divides(a: int, b: int) -> bool:
        """Does monomial a divide monomial b."""
        da = a >> 51
        db = b >> 51
        if da > db:
            return False
        fa = (a >> 34) & _FM
        fb = (b >> 34) & _FM
        if fa < fb:  # ew(a) > ew(b)
            return False
        ga = (a >> 17) & _FM
        gb = (b >> 17) & _FM
        if ga < gb:
            return False
        ha = a & _FM
        hb = b & _FM
        if ha < hb:
            return False
        # x-exponent: da - sum(e) vs db - sum(e)
        return da + fa + ga + ha <= db + fb + gb + hb


class GrlexCodec(_CodecBase):
    """Graded lexicographic with x > y > z > w (cross-check order)."""

    name = "grlex"
    one = 0

    @staticmethod
    def make(exps) -> int:
        ex, ey, ez, ew = exps
        d = ex + ey + ez + ew
        if d >= _DEG_GUARD or min(exps) < 0:
            raise DegreeOverflowError(f"exponents {exps} out of range")
        return (d << 51) | (ex << 34) | (ey << 17) | ez

    @staticmethod
    def exps(m: int):
        d = m >> 51
        ex = (m >> 34) & _FM
        ey = (m >> 17) & _FM
        ez = m & _FM
        return (ex, ey, ez, d - ex - ey - ez)

    @staticmethod
    def divides(a: int, b: int) -> bool:
        da = a >> 51
        db = b >> 51
        if da > db:
            return False
        fa = (a >> 34) & _FM
        fb = (b >> 34) & _FM
        if fa > fb:
            return False
        ga = (a >> 17) & _FM
        gb = (b >> 17) & _FM
        if ga > gb:
            return False
        ha = a & _FM
        hb = b & _FM
        if ha > hb:
            return False
        return (da - fa - ga - ha) <= (db - fb - gb - hb)


_CODECS = {"grevlex": GrevlexCodec(), "grlex": GrlexCodec()}


class PolyRing:
    """Ring descriptor: coefficient field + monomial order on k[x,y,z,w]."""

    def __init__(self, field=None, order: str = "grevlex"):
        if field is None:
            field = QQ
        if order not in _CODECS:
            raise MonadLabError(f"unknown monomial order {order!r}")
        self.field = field
        self.order = order
        self.codec = _CODECS[order]

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.order == self.order
        )

    def __hash__(self):
        return hash((self.field, self.order))

    def __repr__(self):
        return f"PolyRing({self.field!r}, order={self.order!r})"

    def descriptor(self) -> dict:
        d = {"field": "QQ" if self.field == QQ else "Fp", "order": self.order}
        if d["field"] == "Fp":
            d["p"] = self.field.p
        return d

    @staticmethod
    def from_descriptor(d: dict) -> "PolyRing":
        field = QQ if d["field"] == "QQ" else Fp(int(d["p"]))
        return PolyRing(field, d.get("order", "grevlex"))


def check_same_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatchError(f"ring mismatch: {a.ring!r} vs {b.ring!r}")


from .errors import RingMismatchError  # noqa: E402  (cycle-free tail import)
