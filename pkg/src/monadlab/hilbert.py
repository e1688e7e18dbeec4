"""Hilbert series and functions via initial-module monomial combinatorics.

Everything here reduces to Hilbert series of monomial ideals in 4
variables, computed by the classical pivot recursion

    HS(S/I) = HS(S/(I+v)) + t * HS(S/(I:v))

and assembled per component for submodules of graded free modules.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb


def count_monomials(d: int) -> int:
    """Number of degree-d monomials in 4 variables."""
    return comb(d + 3, 3) if d >= 0 else 0


def _minimalize(gens):
    """Minimal generators of the monomial ideal given by exponent tuples."""
    out = []
    for m in sorted(gens, key=sum):
        if not any(all(g[i] <= m[i] for i in range(4)) for g in out):
            out.append(m)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _numerator(gens) -> tuple:
    """Numerator of HS(S/I) over (1-t)^4 as a tuple of (deg, coeff).

    gens: minimalized, sorted tuple of exponent 4-tuples.
    """
    if not gens:
        return ((0, 1),)
    if gens[0] == (0, 0, 0, 0):
        return ()
    # base case: pairwise coprime generators (includes the single-gen case)
    coprime = True
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if any(gens[i][k] and gens[j][k] for k in range(4)):
                coprime = False
                break
        if not coprime:
            break
    if coprime:
        num = {0: 1}
        for g in gens:
            d = sum(g)
            new = dict(num)
            for k, c in num.items():
                new[k + d] = new.get(k + d, 0) - c
            num = {k: c for k, c in new.items() if c}
        return tuple(sorted(num.items()))
    # pivot on the most frequent variable, at its minimal positive exponent
    counts = [sum(1 for g in gens if g[k]) for k in range(4)]
    k = max(range(4), key=lambda q: counts[q])
    e = min(g[k] for g in gens if g[k])
    pivot = tuple(e if q == k else 0 for q in range(4))
    plus = _minimalize(gens + (pivot,))
    colon = _minimalize(
        tuple(tuple(max(g[q] - pivot[q], 0) for q in range(4)) for g in gens)
    )
    num = dict(_numerator(plus))
    for d, c in _numerator(colon):
        num[d + e] = num.get(d + e, 0) + c
    return tuple(sorted((d, c) for d, c in num.items() if c))


def quotient_numerator(lead_exps) -> dict:
    """Numerator of HS(S/I) for the monomial ideal with the given exponents."""
    return dict(_numerator(_minimalize(tuple(map(tuple, lead_exps)))))


class HilbertSeries:
    """Rational generating function numerator / (1-t)^4.

    The numerator is a Laurent polynomial in t (dict degree -> int);
    negative degrees arise from negative generator degrees.
    """

    def __init__(self, numerator: dict):
        self.numerator = {d: c for d, c in numerator.items() if c}

    def coefficient(self, d: int) -> int:
        """Series coefficient at t^d, i.e. the Hilbert function value."""
        return sum(c * count_monomials(d - k) for k, c in self.numerator.items())

    def hilbert_polynomial_value(self, d: int) -> int:
        """The Hilbert polynomial (valid for d >> 0) evaluated at d."""
        total = 0
        for k, c in self.numerator.items():
            n = d - k
            total += c * (n + 3) * (n + 2) * (n + 1) // 6
        return total

    def rank(self) -> int:
        """Generic rank = numerator evaluated at t=1."""
        return sum(self.numerator.values())

    def reduced(self):
        """(numerator coeffs dict, power) with denominator (1-t)^power."""
        num = dict(self.numerator)
        power = 4
        while power > 0 and num and sum(num.values()) == 0:
            # num = (1-t) * q with q_d = sum of coefficients up to degree d
            lo, hi = min(num), max(num)
            q = {}
            acc = 0
            for d in range(lo, hi):
                acc += num.get(d, 0)
                if acc:
                    q[d] = acc
            num = q
            power -= 1
        return num, power

    def __add__(self, other):
        out = dict(self.numerator)
        for d, c in other.numerator.items():
            out[d] = out.get(d, 0) + c
        return HilbertSeries(out)

    def __sub__(self, other):
        out = dict(self.numerator)
        for d, c in other.numerator.items():
            out[d] = out.get(d, 0) - c
        return HilbertSeries(out)

    def shift(self, k: int):
        """Multiply by t^k (degree shift)."""
        return HilbertSeries({d + k: c for d, c in self.numerator.items()})

    def __eq__(self, other):
        return isinstance(other, HilbertSeries) and other.numerator == self.numerator

    def __str__(self):
        num, power = self.reduced()
        if not num:
            return "0"
        parts = []
        for d in sorted(num):
            c = num[d]
            if d == 0:
                body = str(abs(c))
            else:
                tpow = "t" if d == 1 else f"t^{d}"
                body = tpow if abs(c) == 1 else f"{abs(c)}*{tpow}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = parts[0][2:] if parts[0][0] == "+" else "-" + parts[0][2:]
        for p in parts[1:]:
            s += " " + p
        if power == 0:
            return s
        return f"({s})/(1-t)^{power}" if len(num) > 1 or min(num) != 0 else f"{s}/(1-t)^{power}"

    def __repr__(self):
        return f"HilbertSeries({self})"


def free_module_series(degrees) -> HilbertSeries:
    """Hilbert series of the free module ⊕ S(-d_i)."""
    num = {}
    for d in degrees:
        num[d] = num.get(d, 0) + 1
    return HilbertSeries(num)


def submodule_series(lead_terms_by_comp, ambient_degrees) -> HilbertSeries:
    """Series of a submodule from the exponents of its lead-term module.

    lead_terms_by_comp: dict comp -> list of exponent tuples.
    """
    num = {}
    for comp, exps in lead_terms_by_comp.items():
        d0 = ambient_degrees[comp]
        # HS(I_i) = (1 - HN(S/I_i)) / (1-t)^4, shifted by the generator degree
        hn = quotient_numerator(exps)
        num[d0] = num.get(d0, 0) + 1
        for d, c in hn.items():
            num[d + d0] = num.get(d + d0, 0) - c
    return HilbertSeries(num)
