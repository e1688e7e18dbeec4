"""Exact multivariate polynomials over k[x,y,z,w] in canonical form.

A ``Poly`` stores ``{packed_monomial: coefficient}`` with no zero
coefficients; the packed keys order terms under the ring's monomial order,
so the canonical printed form lists terms strictly descending.
"""

from __future__ import annotations

from .errors import MonadLabError, PolyParseError, RingMismatchError
from .rings import VARIABLES, PolyRing


class _ZeroDegree:
    """Sentinel degree of the zero polynomial."""

    def __repr__(self):
        return "ZERO_DEGREE"


ZERO_DEGREE = _ZeroDegree()


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero(ring):
        return Poly(ring, {})

    @staticmethod
    def const(ring, n):
        c = n if not isinstance(n, int) else ring.field.of_int(n)
        if c == ring.field.zero:
            return Poly(ring, {})
        return Poly(ring, {ring.codec.one: c})

    @staticmethod
    def var(ring, name):
        if name not in VARIABLES:
            raise MonadLabError(f"unknown variable {name!r}")
        e = [0, 0, 0, 0]
        e[VARIABLES.index(name)] = 1
        return Poly(ring, {ring.codec.make(tuple(e)): ring.field.one})

    @staticmethod
    def monomial(ring, exps, coeff=1):
        c = ring.field.of_int(coeff) if isinstance(coeff, int) else coeff
        if c == ring.field.zero:
            return Poly(ring, {})
        return Poly(ring, {ring.codec.make(tuple(exps)): c})

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; ZERO_DEGREE for the zero polynomial."""
        if not self.terms:
            return ZERO_DEGREE
        return max(self.terms) >> 51

    def homogeneous_degree(self):
        """Common degree if homogeneous and nonzero, ZERO_DEGREE for 0,
        None if inhomogeneous."""
        if not self.terms:
            return ZERO_DEGREE
        degs = {m >> 51 for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    @property
    def is_homogeneous(self):
        return self.homogeneous_degree() is not None

    def lead_monomial(self):
        return max(self.terms)

    def lead_coefficient(self):
        return self.terms[max(self.terms)]

    def constant_value(self):
        """The coefficient of the monomial 1 (field zero if absent)."""
        return self.terms.get(self.ring.codec.one, self.ring.field.zero)

    @property
    def is_unit(self):
        """Nonzero constant."""
        return len(self.terms) == 1 and self.ring.codec.one in self.terms

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.ring, other)
        self._check(other)
        fld = self.ring.field
        zero = fld.zero
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = fld.add(out.get(m, zero), c)
            if s == zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        neg = self.ring.field.neg
        return Poly(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.ring, other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (-self).__add__(Poly.const(self.ring, other))

    def __mul__(self, other):
        if isinstance(other, int):
            c = self.ring.field.of_int(other)
            if c == self.ring.field.zero:
                return Poly(self.ring, {})
            mul = self.ring.field.mul
            return Poly(self.ring, {m: mul(v, c) for m, v in self.terms.items()})
        self._check(other)
        fld = self.ring.field
        zero = fld.zero
        one_key = self.ring.codec.one
        out = {}
        for m1, c1 in self.terms.items():
            base = m1 - one_key
            for m2, c2 in other.terms.items():
                m = base + m2
                s = fld.add(out.get(m, zero), fld.mul(c1, c2))
                if s == zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        if out and (max(out) >> 51) >= (1 << 16):
            from .errors import DegreeOverflowError

            raise DegreeOverflowError("total degree exceeds 2**16")
        return Poly(self.ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        if n < 0:
            raise MonadLabError("negative exponent")
        out = Poly.const(self.ring, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.ring, other)
        return (
            isinstance(other, Poly)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    def __bool__(self):
        return bool(self.terms)

    # -- conversion --------------------------------------------------------

    def map_ring(self, ring: PolyRing):
        """Re-encode into another ring descriptor (field and/or order change).

        Integer-valued coefficients transfer exactly; QQ->Fp reduces mod p.
        """
        out = {}
        fld = ring.field
        for m, c in self.terms.items():
            exps = self.ring.codec.exps(m)
            if self.ring.field.name == "QQ" and ring.field.name != "QQ":
                if c.denominator % ring.field.p == 0:
                    raise MonadLabError(f"denominator of {c} vanishes mod {ring.field.p}")
                v = fld.mul(fld.of_int(c.numerator), fld.inv(fld.of_int(c.denominator)))
            elif self.ring.field.name != "QQ" and ring.field.name == "QQ":
                v = fld.of_int(self.ring.field.int_repr(c))
            else:
                v = c if self.ring.field == ring.field else fld.of_int(int(c))
            m2 = ring.codec.make(exps)
            if v != fld.zero:
                out[m2] = v
        return Poly(ring, out)

    def sorted_terms(self):
        """Terms as ((ex,ey,ez,ew), coeff) pairs, descending in the order."""
        ex = self.ring.codec.exps
        return [(ex(m), self.terms[m]) for m in sorted(self.terms, reverse=True)]

    # -- printing ----------------------------------------------------------

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"Poly({poly_str(self)})"


def poly_str(f: Poly) -> str:
    """Canonical text form; parse(str(f)) == f."""
    if f.is_zero:
        return "0"
    int_repr = f.ring.field.int_repr
    pieces = []
    for exps, coeff in f.sorted_terms():
        c = int_repr(coeff)
        factors = [
            v if e == 1 else f"{v}^{e}"
            for v, e in zip(VARIABLES, exps)
            if e
        ]
        mono = "*".join(factors)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = (first_sign if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# -- parser ---------------------------------------------------------------

_TOK_INT = "int"
_TOK_VAR = "var"
_TOK_OP = "op"
_TOK_END = "end"


def _tokenize(text):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append((_TOK_INT, int(text[i:j]), i))
            i = j
        elif ch.isalpha():
            if ch not in VARIABLES:
                raise PolyParseError(f"unknown variable {ch!r}", i)
            toks.append((_TOK_VAR, ch, i))
            i += 1
        elif ch in "+-*^()":
            toks.append((_TOK_OP, ch, i))
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    toks.append((_TOK_END, None, n))
    return toks


class _Parser:
    """Recursive descent for:  expr := term (('+'|'-') term)*;
    term := signed-factor factors may juxtapose with optional '*';
    factor := atom ('^' exponent)?;  atom := int | var | '(' expr ')'."""

    def __init__(self, text, ring):
        self.toks = _tokenize(text)
        self.k = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.k]

    def next(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def parse(self):
        f = self.expr()
        kind, val, pos = self.peek()
        if kind != _TOK_END:
            raise PolyParseError(f"unexpected {val!r}", pos)
        return f

    def expr(self):
        f = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val in "+-":
                self.next()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self):
        f = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val == "*":
                self.next()
                f = f * self.factor()
            elif kind in (_TOK_INT, _TOK_VAR) or (kind == _TOK_OP and val == "("):
                f = f * self.factor()  # implicit multiplication
            else:
                return f

    def factor(self):
        sign = 1
        while True:
            kind, val, _ = self.peek()
            if kind == _TOK_OP and val == "-":
                self.next()
                sign = -sign
            elif kind == _TOK_OP and val == "+":
                self.next()
            else:
                break
        f = self.atom()
        kind, val, pos = self.peek()
        if kind == _TOK_OP and val == "^":
            self.next()
            e = self.exponent()
            f = f ** e
        return f if sign > 0 else -f

    def exponent(self):
        kind, val, pos = self.next()
        if kind == _TOK_OP and val == "(":
            inner = self.exponent()
            kind2, val2, pos2 = self.next()
            if not (kind2 == _TOK_OP and val2 == ")"):
                raise PolyParseError("expected ')' after exponent", pos2)
            return inner
        if kind == _TOK_OP and val == "-":
            raise PolyParseError("exponent negative", pos)
        if kind != _TOK_INT:
            raise PolyParseError("expected integer exponent", pos)
        return val

    def atom(self):
        kind, val, pos = self.next()
        if kind == _TOK_INT:
            return Poly.const(self.ring, val)
        if kind == _TOK_VAR:
            return Poly.var(self.ring, val)
        if kind == _TOK_OP and val == "(":
            f = self.expr()
            kind2, val2, pos2 = self.next()
            if not (kind2 == _TOK_OP and val2 == ")"):
                raise PolyParseError("expected ')'", pos2)
            return f
        raise PolyParseError(f"unexpected {val!r}", pos)


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse an expression over x,y,z,w with integer coefficients, +,-,*,^,()."""
    return _Parser(text, ring).parse()


def variables(ring: PolyRing):
    """The four variable polynomials (x, y, z, w)."""
    return tuple(Poly.var(ring, v) for v in VARIABLES)
