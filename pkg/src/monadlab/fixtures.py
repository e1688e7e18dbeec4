"""Explicit monad families and examples, with matrices as published.

Every fixture passes validate_monad except "ex32-display", which ships
the display variant of the c2=9 example whose fifth beta column is
inconsistent (it exists precisely to demonstrate the validator).
"""

from __future__ import annotations

import warnings

from .errors import MonadLabError
from .graded import GradedFree, GradedMap
from .monads import Monad
from .poly import Poly, variables
from .rings import Fp, PolyRing

DEFAULT_PRIME = 32003


def default_ring(field=None) -> PolyRing:
    return PolyRing(field if field is not None else Fp(DEFAULT_PRIME))


def _frees(ring, left_twists, middle_twists, right_twists):
    left = GradedFree(tuple(-t for t in left_twists))
    middle = GradedFree(tuple(-t for t in middle_twists))
    right = GradedFree(tuple(-t for t in right_twists))
    return left, middle, right


def m0_monad(a: int, field=None) -> Monad:
    """Family with extremes (a,a) and middle half-tuple (a-1,a-1,0,0);
    c2 = 4a - 2."""
    if a < 2:
        raise MonadLabError("family M0 requires a >= 2")
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    e = 2 * a - 1
    left, middle, right = _frees(
        ring, (-a, -a), (a - 1, a - 1, 0, 0, 1 - a, 1 - a), (a, a)
    )
    alpha = GradedMap(left, middle, [
        [z**e, x**a * w**(a - 1)],
        [x**e, z**e],
        [0 * x, -y * w**(a - 1) + w**a],
        [0 * x, -(x**a)],
        [-w, -y],
        [-y, 0 * x],
    ], ring)
    beta = GradedMap(middle, right, [
        [y, 0 * x, x**a, w**a, 0 * x, z**e],
        [w, y, 0 * x, w**a, z**e, x**e],
    ], ring)
    return Monad(left, middle, right, alpha, beta, name=f"M0(a={a})")


def family2_monad(a: int, field=None) -> Monad:
    """Family with extremes (a,a) and middle half-tuple (a-1,a-1,1);
    c2 = 4a - 3."""
    if a < 3:
        raise MonadLabError("family2 requires a >= 3")
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    e = 2 * a - 1
    left, middle, right = _frees(
        ring, (-a, -a), (a - 1, a - 1, 1, -1, 1 - a, 1 - a), (a, a)
    )
    alpha = GradedMap(left, middle, [
        [w**e, 0 * x],
        [z**e, w**e + x**(a - 2) * z**(a + 1)],
        [0 * x, -(z**(a + 1))],
        [y * z**(a - 2), x * z**(a - 2) + y**(a - 1)],
        [-x, 0 * x],
        [-y, -x],
    ], ring)
    beta = GradedMap(middle, right, [
        [x, 0 * x, y**(a - 1), z**(a + 1), w**e, z**e],
        [y, x, x**(a - 1), 0 * x, z**e, w**e],
    ], ring)
    return Monad(left, middle, right, alpha, beta, name=f"family2(a={a})")


def family2_tilde_monad(a: int, field=None) -> Monad:
    """Companion family of family2 with the same type; c2 = 4a - 3."""
    if a < 3:
        raise MonadLabError("family2-tilde requires a >= 3")
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    e = 2 * a - 1
    left, middle, right = _frees(
        ring, (-a, -a), (a - 1, a - 1, 1, -1, 1 - a, 1 - a), (a, a)
    )
    alpha = GradedMap(left, middle, [
        [y**e, z**e],
        [z**e + y**(a - 1) * w**a, y**e],
        [-(y**a) * w - x * w**a, -x * y**a],
        [-(y**(a - 1)), 0 * x],
        [-x, -w],
        [-w, -x],
    ], ring)
    beta = GradedMap(middle, right, [
        [w, x, y**(a - 1), 0 * x, z**e, 0 * x],
        [x, w, 0 * x, w**(a + 1), y**e, z**e],
    ], ring)
    return Monad(left, middle, right, alpha, beta, name=f"family2-tilde(a={a})")


def _check_kb(a, b):
    if not (a > b >= 0):
        raise MonadLabError("k3/k4 families require a > b >= 0")
    if b == a - 1:
        warnings.warn(
            "b = a-1 degenerates the y^(a-b)-z^(a-b) entries to degree-1 "
            "binomials; accepted but untabulated",
            stacklevel=3,
        )


def k3_monad(a: int, b: int, field=None) -> Monad:
    """Middle O(a-1)^3 + O(b) + O(-b) + O(1-a)^3; c2 = 6a - 3 - b^2."""
    _check_kb(a, b)
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    e = 2 * a - 1
    left, middle, right = _frees(
        ring,
        (-a, -a, -a),
        (a - 1, a - 1, a - 1, b, -b, 1 - a, 1 - a, 1 - a),
        (a, a, a),
    )
    alpha = GradedMap(left, middle, [
        [0 * x, x**e - w**e, 0 * x],
        [x**e - z**e, y * w**(e - 1) - w**e, -(z**e) + w**e],
        [0 * x, w**e, x**e - w**e],
        [x**(a + b), 0 * x, 0 * x],
        [-(y**(a - b)) + z**(a - b), 0 * x, 0 * x],
        [w, z, y + w],
        [-w, -y, -w],
        [0 * x, -z, -y],
    ], ring)
    beta = GradedMap(middle, right, [
        [z, 0 * x, y, 0 * x, 0 * x, w**e, w**e, x**e],
        [y, w, w, 0 * x, 0 * x, z**e, x**e, z**e],
        [-z, -w, -y - w, y**(a - b) - z**(a - b), x**(a + b),
         x**e - z**e - 2 * w**e, -2 * w**e, -(z**e) - w**e],
    ], ring)
    return Monad(left, middle, right, alpha, beta, name=f"k3(a={a},b={b})")


def k4_monad(a: int, b: int, field=None) -> Monad:
    """Middle O(a-1)^4 + O(b) + O(-b) + O(1-a)^4; c2 = 8a - 4 - b^2."""
    _check_kb(a, b)
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    e = 2 * a - 1
    left, middle, right = _frees(
        ring,
        (-a,) * 4,
        (a - 1, a - 1, a - 1, a - 1, b, -b, 1 - a, 1 - a, 1 - a, 1 - a),
        (a,) * 4,
    )
    alpha = GradedMap(left, middle, [
        [0 * x, 0 * x, x**e, y**e],
        [0 * x, x**e, y**e, 0 * x],
        [0 * x, y**e, 0 * x, x**e],
        [z**e, 0 * x, -(x**(e - 1)) * w, -(x**(e - 1)) * z],
        [w**(a + b), w**(a + b), 0 * x, 0 * x],
        [-(y**(a - b)) + z**(a - b), -(y**(a - b)) + z**(a - b), 0 * x, 0 * x],
        [-x, 0 * x, w, z],
        [0 * x, -z, w, z - w],
        [0 * x, -w, -z, 0 * x],
        [0 * x, 0 * x, -w, -z],
    ], ring)
    beta = GradedMap(middle, right, [
        [z, w, 0 * x, 0 * x, 0 * x, 0 * x, 0 * x, 0 * x, x**e, y**e],
        [0 * x, z, w, 0 * x, 0 * x, 0 * x, 0 * x, x**e, y**e, x**e],
        [w, 0 * x, z, x, 0 * x, 0 * x, z**e, y**e, 0 * x, y**e + z**e],
        [0 * x, z, w, x, y**(a - b) - z**(a - b), w**(a + b), z**e, x**e, y**e, z**e],
    ], ring)
    return Monad(left, middle, right, alpha, beta, name=f"k4(a={a},b={b})")


def table1_row1_monad(field=None) -> Monad:
    """c2=6, extremes (2,2), middle half (0,1,1); tangent dimension 45."""
    m = m0_monad(2, field)
    m.name = "table1-row1"
    return m


def table1_row2_monad(field=None) -> Monad:
    """c2=6, extremes (3,1), middle half (0,0,2); tangent dimension 48."""
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    left, middle, right = _frees(ring, (-3, -1), (2, 0, 0, 0, 0, -2), (3, 1))
    alpha = GradedMap(left, middle, [
        [w**5, x**3],
        [0 * x, -w],
        [0 * x, z],
        [x**3, 0 * x],
        [-(z**3), -y],
        [-y, 0 * x],
    ], ring)
    beta = GradedMap(middle, right, [
        [y, 0 * x, 0 * x, z**3, x**3, w**5],
        [0 * x, z, w, y, 0 * x, x**3],
    ], ring)
    return Monad(left, middle, right, alpha, beta, name="table1-row2")


def table1_row3_monad(field=None) -> Monad:
    """c2=6, extremes (2,2,1), middle half (0,1,1,1); tangent dimension 45."""
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    left, middle, right = _frees(
        ring, (-2, -2, -1), (1, 1, 1, 0, 0, -1, -1, -1), (2, 2, 1)
    )
    alpha = GradedMap(left, middle, [
        [0 * x, -(w**3), y**2],
        [x**3, w**3, -y * z],
        [z**3, x**3, -y * w + z * w],
        [0 * x, 0 * x, -z + w],
        [0 * x, 0 * x, x],
        [-w, -y, 0 * x],
        [-y, 0 * x, 0 * x],
        [w, z, 0 * x],
    ], ring)
    beta = GradedMap(middle, right, [
        [z, y, 0 * x, 0 * x, 0 * x, w**3, x**3, w**3],
        [w, w, y, 0 * x, 0 * x, x**3, z**3, 0 * x],
        [0 * x, 0 * x, 0 * x, x, z - w, y * z, y * w - z * w, y**2],
    ], ring)
    return Monad(left, middle, right, alpha, beta, name="table1-row3")


def thm34_monad(field=None) -> Monad:
    """c1=-1, c2=6 monad with tangent dimension 45."""
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    left, middle, right = _frees(ring, (-3, -3), (1, 1, 1, -2, -2, -2), (2, 2))
    alpha = GradedMap(left, middle, [
        [0 * x, x**4],
        [w**4, 0 * x],
        [x**4, w**4],
        [-y, -w],
        [-x, -z],
        [-z, -y],
    ], ring)
    beta = GradedMap(middle, right, [
        [y, x, z, 0 * x, w**4, x**4],
        [w, z, y, x**4, 0 * x, w**4],
    ], ring)
    return Monad(left, middle, right, alpha, beta, name="thm34")


def ex32_monad(field=None) -> Monad:
    """c2=9 example with tangent dimension 79 (code-listing matrices)."""
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    left, middle, right = _frees(ring, (-3, -3), (2, 2, -2, -2, 1, -1), (3, 3))
    alpha = GradedMap(left, middle, [
        [w**5, 0 * x],
        [z**5, w**5 + x * z**4],
        [-x, 0 * x],
        [-y, -x],
        [0 * x, -(z**4)],
        [y * z, x * z + y**2],
    ], ring)
    beta = GradedMap(middle, right, [
        [x, 0 * x, w**5, z**5, y**2, z**4],
        [y, x, z**5, w**5, x**2, 0 * x],
    ], ring)
    return Monad(left, middle, right, alpha, beta, name="ex32")


def ex32_display_monad(field=None) -> Monad:
    """Display variant of ex32 with the x^3 entry; intentionally invalid
    (inhomogeneous entry and nonzero composition)."""
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    left, middle, right = _frees(ring, (-3, -3), (2, 2, -2, -2, 1, -1), (3, 3))
    alpha = GradedMap(left, middle, [
        [w**5, 0 * x],
        [z**5, w**5 + x * z**4],
        [-x, 0 * x],
        [-y, -x],
        [0 * x, -(z**4)],
        [y * z, x * z + y**2],
    ], ring, strict=False)
    beta = GradedMap(middle, right, [
        [x, 0 * x, w**5, z**5, y**2, z**4],
        [y, x, z**5, w**5, x**3, 0 * x],
    ], ring, strict=False)
    return Monad(left, middle, right, alpha, beta, name="ex32-display")


def instanton_monad(c2: int, field=None) -> Monad:
    """Instanton-type monad, extremes (1^n) and middle O^(2n+2), via the
    two-pencil symplectic construction; c2 = n."""
    n = c2
    if n < 1:
        raise MonadLabError("instanton monad requires c2 >= 1")
    ring = default_ring(field)
    x, y, z, w = variables(ring)
    zero = 0 * x
    left, middle, right = _frees(ring, (-1,) * n, (0,) * (2 * n + 2), (1,) * n)
    # alpha = [zQ + wP ; -(xQ + yP)], beta = [xP^T + yQ^T | zP^T + wQ^T]
    arows = []
    for i in range(n + 1):
        arows.append([w if i == j else (z if i == j + 1 else zero) for j in range(n)])
    for i in range(n + 1):
        arows.append([-y if i == j else (-x if i == j + 1 else zero) for j in range(n)])
    brows = []
    for i in range(n):
        row = [zero] * (2 * n + 2)
        row[i] = x
        row[i + 1] = y
        row[n + 1 + i] = z
        row[n + 2 + i] = w
        brows.append(row)
    alpha = GradedMap(left, middle, arows, ring)
    beta = GradedMap(middle, right, brows, ring)
    return Monad(left, middle, right, alpha, beta, name=f"instanton(c2={n})")


_FIXED = {
    "table1-row1": table1_row1_monad,
    "table1-row2": table1_row2_monad,
    "table1-row3": table1_row3_monad,
    "thm34": thm34_monad,
    "ex32": ex32_monad,
    "ex32-display": ex32_display_monad,
}

_PARAMETRIC = {
    "M0": (m0_monad, ("a",)),
    "family2": (family2_monad, ("a",)),
    "family2-tilde": (family2_tilde_monad, ("a",)),
    "k3": (k3_monad, ("a", "b")),
    "k4": (k4_monad, ("a", "b")),
    "instanton": (instanton_monad, ("c2",)),
}


def fixture_names():
    return sorted(_FIXED) + sorted(_PARAMETRIC)


def fixture(name: str, field=None, **params) -> Monad:
    """Build a named monad fixture; raises on unknown names or bad params."""
    if name in _FIXED:
        if params:
            raise MonadLabError(f"fixture {name!r} takes no parameters")
        return _FIXED[name](field)
    if name in _PARAMETRIC:
        fn, wanted = _PARAMETRIC[name]
        missing = [k for k in wanted if k not in params]
        extra = [k for k in params if k not in wanted]
        if missing or extra:
            raise MonadLabError(
                f"fixture {name!r} takes parameters {wanted}; "
                f"missing {missing}, unexpected {extra}"
            )
        return fn(*(params[k] for k in wanted), field)
    raise MonadLabError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
