"""Horrocks-monad toolkit: validation, Chern classes, cohomology bundle,
spectrum, and the tangent-space dimension dim Ext^1(E,E).

A monad here is a three-term complex of graded free modules

    left --alpha--> middle --beta--> right

with beta . alpha = 0 whose middle cohomology sheafifies to the rank-2
bundle of interest; E = ker(beta)/im(alpha).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import MonadLabError, ValidationRequired
from .graded import GradedFree, GradedMap, Subquotient, homology_module
from .groebner import krull_dim
from .sheaf import h0_global, sheaf_cohomology


class Monad:
    def __init__(self, left, middle, right, alpha: GradedMap, beta: GradedMap, name=""):
        if alpha.source != left or alpha.target != middle:
            raise MonadLabError("alpha must map left -> middle")
        if beta.source != middle or beta.target != right:
            raise MonadLabError("beta must map middle -> right")
        self.left = left
        self.middle = middle
        self.right = right
        self.alpha = alpha
        self.beta = beta
        self.ring = alpha.ring
        self.name = name
        self._report = None
        self._E = None
        self._tangent = None
        self._chern = None

    # -- type bookkeeping ---------------------------------------------------

    def extremes_tuple(self):
        """Degrees a_i of the right term ⊕ O(a_i) (ascending)."""
        return tuple(sorted(-d for d in self.right.degrees))

    def middle_twists(self):
        """Multiset of middle twists t with middle = ⊕ O(t), descending."""
        return tuple(sorted((-d for d in self.middle.degrees), reverse=True))

    def middle_half_tuple(self):
        """For a self-dual middle ⊕(O(b)⊕O(-b)): the multiset of b >= 0.

        Returns None when the middle twists are not symmetric.
        """
        from collections import Counter

        c = Counter(self.middle_twists())
        if any(c[t] != c[-t] for t in c):
            return None
        half = []
        for t in sorted(c, reverse=True):
            if t > 0:
                half.extend([t] * c[t])
            elif t == 0:
                if c[0] % 2:
                    return None
                half.extend([0] * (c[0] // 2))
        return tuple(sorted(half))

    def __eq__(self, other):
        return (
            isinstance(other, Monad)
            and other.left == self.left
            and other.middle == self.middle
            and other.right == self.right
            and other.alpha == self.alpha
            and other.beta == self.beta
        )

    def __repr__(self):
        return (
            f"Monad({self.name or 'anonymous'}: O{self.left.twists()} -> "
            f"O{self.middle.twists()} -> O{self.right.twists()})"
        )


@dataclass
class ValidationReport:
    composition_zero: bool = False
    homogeneous: bool = False
    fiber_injective: bool = False
    fiber_surjective: bool = False
    minimal: bool = False
    stable: bool | None = None
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self):
        core = (
            self.composition_zero
            and self.homogeneous
            and self.fiber_injective
            and self.fiber_surjective
            and self.minimal
        )
        return core and (self.stable is not False)

    def lines(self):
        out = [
            f"composition beta*alpha = 0 : {'ok' if self.composition_zero else 'FAIL'}",
            f"entries homogeneous        : {'ok' if self.homogeneous else 'FAIL'}",
            f"alpha fiberwise injective  : {'ok' if self.fiber_injective else 'FAIL'}",
            f"beta fiberwise surjective  : {'ok' if self.fiber_surjective else 'FAIL'}",
            f"minimal (no unit entries)  : {'ok' if self.minimal else 'FAIL'}",
        ]
        if self.stable is not None:
            out.append(f"stable (h^0(E) = 0)        : {'ok' if self.stable else 'FAIL'}")
        for key, w in sorted(self.witnesses.items()):
            out.append(f"  witness[{key}]: {w}")
        return out


def _random_points(field, count, seed):
    rng = random.Random(seed)
    p = field.p or 32003
    pts = []
    while len(pts) < count:
        pt = tuple(rng.randrange(p) for _ in range(4))
        if any(pt):
            pts.append(pt)
    return pts


def _rank_at_point(matrix_vals, p):
    """Rank of a small matrix of F_p values by Gaussian elimination."""
    a = [row[:] for row in matrix_vals]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] % p), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(v * inv) % p for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] % p:
                f = a[i][c]
                a[i] = [(u - f * v) % p for u, v in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def _fiberwise_full_rank(m: GradedMap, required: int, witnesses: dict, tag: str) -> bool:
    """Certify rank(m) = required at every point of P^3.

    Fast path: random points over F_p (a rank drop there is a conclusive
    failure).  Certificate: the ideal of required x required minors cuts
    out at most the origin, i.e. has Krull dimension <= 0; a capped minor
    subset suffices for the <=0 direction since V(full) ⊆ V(subset).
    """
    fld = m.ring.field
    if fld.p:
        for pt in _random_points(fld, 6, seed=hash((tag, m.source.degrees, m.target.degrees)) & 0xFFFF):
            vals = m.eval_at(pt)
            if _rank_at_point(vals, fld.p) < required:
                witnesses[tag] = f"rank drop at point {pt}"
                return False
    total = None
    for cap in (48, None):
        minors = m.minors(required, cap=cap)
        nonzero = [f for f in minors if not f.is_zero]
        if not nonzero:
            witnesses[tag] = "all maximal minors vanish identically"
            return False
        dim = krull_dim(nonzero)
        total = dim
        if dim <= 0:
            return True
        if cap is None:
            break
    witnesses[tag] = f"rank-drop locus has cone dimension {total}"
    return False


def validate_monad(m: Monad, check_stability: bool = False) -> ValidationReport:
    """Full validation; failures are report entries, never exceptions."""
    rep = ValidationReport()
    defects = m.alpha.homogeneity_defects() + m.beta.homogeneity_defects()
    rep.homogeneous = not defects
    if defects:
        i, j, want, got = defects[0]
        rep.witnesses["homogeneous"] = (
            f"entry ({i},{j}): expected degree {want}, got {got}"
        )
    comp = m.beta.compose(m.alpha)
    rep.composition_zero = comp.is_zero
    if not rep.composition_zero:
        for i, row in enumerate(comp.entries):
            for j, e in enumerate(row):
                if not e.is_zero:
                    rep.witnesses["composition"] = f"(beta*alpha)[{i}][{j}] = {e}"
                    break
            if "composition" in rep.witnesses:
                break
    units = [
        (i, j)
        for i, row in enumerate(m.alpha.entries)
        for j, e in enumerate(row)
        if e.is_unit
    ] + [
        (i, j)
        for i, row in enumerate(m.beta.entries)
        for j, e in enumerate(row)
        if e.is_unit
    ]
    rep.minimal = not units
    if units:
        rep.witnesses["minimal"] = f"constant entry at {units[0]}"
    if rep.homogeneous and rep.composition_zero:
        rep.fiber_injective = _fiberwise_full_rank(
            m.alpha, m.left.rank, rep.witnesses, "alpha"
        )
        rep.fiber_surjective = _fiberwise_full_rank(
            m.beta, m.right.rank, rep.witnesses, "beta"
        )
        if check_stability and rep.fiber_injective and rep.fiber_surjective:
            rep.stable = h0_global(cohomology_bundle(m, _trusted_report=rep)) == 0
    m._report = rep
    return rep


def _ensure_valid(m: Monad) -> ValidationReport:
    if m._report is None:
        validate_monad(m)
    if not (
        m._report.composition_zero
        and m._report.homogeneous
        and m._report.fiber_injective
        and m._report.fiber_surjective
        and m._report.minimal
    ):
        raise ValidationRequired(
            f"monad {m.name or ''} fails validation: "
            + "; ".join(m._report.lines())
        )
    return m._report


@dataclass(frozen=True)
class ChernData:
    c1: int
    c2: int


def chern_classes(m: Monad) -> ChernData:
    """(c1, c2) of the cohomology bundle from the display, by the Whitney
    product on total Chern classes truncated past degree 2."""
    _ensure_valid(m)
    if m._chern is None:
        mid = m.middle.twists()
        out = m.left.twists() + m.right.twists()
        # c(E) = prod(1 + t_i H) / prod(1 + s_j H) mod H^3
        def elem(tw):
            e1 = sum(tw)
            e2 = sum(a * b for idx, a in enumerate(tw) for b in tw[idx + 1:])
            return e1, e2

        n1, n2 = elem(mid)
        d1, d2 = elem(out)
        # (1 + n1 H + n2 H^2) * (1 + d1 H + d2 H^2)^(-1)
        c1 = n1 - d1
        c2 = n2 - d2 - d1 * c1
        m._chern = ChernData(c1, c2)
    return m._chern


def cohomology_bundle(m: Monad, _trusted_report=None) -> Subquotient:
    """E = ker(beta)/im(alpha) as a subquotient of the middle module."""
    if _trusted_report is None:
        _ensure_valid(m)
    if m._E is None:
        m._E = homology_module(m.beta, m.alpha)
    return m._E


@dataclass(frozen=True)
class Spectrum:
    values: tuple  # sorted ascending, with multiplicity

    def multiset(self):
        from collections import Counter

        return dict(sorted(Counter(self.values).items()))

    def nonnegative_half_str(self):
        ms = self.multiset()
        parts = [
            f"{v}^{ms[v]}" if ms[v] > 1 else f"{v}"
            for v in sorted(ms)
            if v >= 0
        ]
        return "{" + ",".join(parts) + "}"

    def __str__(self):
        return "{" + ",".join(str(v) for v in self.values) + "}"


def h1_values(m: Monad, lmax: int | None = None):
    """h^1(E(-l)) for l = 1,2,... until vanishing (cached module reuse)."""
    E = cohomology_bundle(m)
    c2 = chern_classes(m).c2
    cap = lmax if lmax is not None else c2 + 4
    vals = []
    for l in range(1, cap + 1):
        vals.append(sheaf_cohomology(E, 1, -l))
        if lmax is None and vals[-1] == 0:
            break
    return vals


def spectrum(m: Monad) -> Spectrum:
    """Spectrum via successive differences of h^1(E(-i)), mirrored per the
    c1 convention (c1 = 0: X = -X; c1 = -1: X = -1-X)."""
    rep = _ensure_valid(m)
    c = chern_classes(m)
    if c.c1 not in (0, -1):
        raise MonadLabError("spectrum convention defined for c1 in {0, -1} only")
    if rep.stable is None:
        rep.stable = h0_global(cohomology_bundle(m)) == 0
    if not rep.stable:
        raise MonadLabError("spectrum requested for a nonstable monad")
    h1 = h1_values(m)
    h1.append(0)
    diffs = [h1[i] - h1[i + 1] for i in range(len(h1) - 1)]  # #{k in X : k >= i-1+1-1}
    # diffs[i-1] = #{k : k >= i-1} for i = 1, 2, ...
    counts = {}
    for j in range(len(diffs)):
        n_ge_j = diffs[j]
        n_ge_next = diffs[j + 1] if j + 1 < len(diffs) else 0
        cnt = n_ge_j - n_ge_next
        if cnt < 0:
            raise MonadLabError("h^1 differences are not monotone; not a spectrum")
        if cnt:
            counts[j] = cnt
    values = []
    for v, k in counts.items():
        values.extend([v] * k)
        if c.c1 == 0 and v > 0:
            values.extend([-v] * k)
        elif c.c1 == -1:
            values.extend([-1 - v] * k)
    return Spectrum(tuple(sorted(values)))


def tangent_dim(m: Monad) -> int:
    """dim Ext^1(E,E) = h^1(End E): h^1(E⊗E) for c1=0, h^1(E(1)⊗E) for c1=-1."""
    if m._tangent is None:
        rep = _ensure_valid(m)
        c = chern_classes(m)
        if c.c1 not in (0, -1):
            raise MonadLabError("tangent dimension implemented for c1 in {0,-1}")
        if rep.stable is None:
            rep.stable = h0_global(cohomology_bundle(m)) == 0
        if not rep.stable:
            raise MonadLabError("tangent dimension requested for a nonstable monad")
        E = cohomology_bundle(m)
        T = E.twist(1).tensor(E) if c.c1 == -1 else E.tensor(E)
        m._tangent = sheaf_cohomology(T, 1, 0)
    return m._tangent


def ext2_dim(m: Monad) -> int:
    """dim Ext^2(E,E) from the Riemann-Roch relation
    dim Ext^1 - dim Ext^2 = 8c2 - 3 + 2c1."""
    t = tangent_dim(m)
    c = chern_classes(m)
    e2 = t - (8 * c.c2 - 3 + 2 * c.c1)
    if e2 < 0:
        raise MonadLabError(
            f"negative Ext^2 dimension ({e2}); upstream computation error"
        )
    return e2


def smoothness_verdict(m: Monad) -> str:
    return "smooth point" if ext2_dim(m) == 0 else "not certified smooth (ext2 > 0)"
