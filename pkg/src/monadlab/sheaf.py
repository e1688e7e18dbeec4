"""Sheaf cohomology dimensions h^i(F(d)) on P^3 via graded local duality.

For a finitely presented graded module M with sheafification ~M:

    h^i(~M(d)) = dim Ext^{3-i}_S(M, S(-4))_{-d}          (1 <= i <= 3)
    h^0(~M(d)) = dim M_d - dim Ext^4_S(M, S(-4))_{-d}
                         + dim Ext^3_S(M, S(-4))_{-d}

and Ext^j(M, S(-4))_e = Ext^j(M, S)_{e-4}.  The Ext dimensions come from
the minimal free resolution: at each homological position only the
Hilbert functions of the images of the two dualized maps are needed,

    dim Ext^j(M,S)_e = HF(F_j^v, e) - HF(im psi_j, e) - HF(im psi_{j+1}, e)

which costs one Groebner basis per dualized map (cached per module).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import engine as en
from .errors import MonadLabError
from .graded import GradedFree, Subquotient, _leadterm_series
from .hilbert import HilbertSeries, free_module_series


def _dual_image_series(M: Subquotient, j: int) -> HilbertSeries:
    """Hilbert series of im(phi_j^T) inside F_j^v (zero series for j < 1
    or past the end of the resolution)."""
    if j < 1:
        return HilbertSeries({})
    cache = M._dual_series
    if j not in cache:
        phi = M.resolution_map(j)
        if phi is None or phi.source.rank == 0 or phi.is_zero:
            cache[j] = HilbertSeries({})
        else:
            psi = phi.transpose()
            cols = [c for c in psi.columns_as_vecs() if c]
            gb = en.groebner_vectors(
                cols, M.ring, list(psi.target.degrees), budget=M._budget
            )
            cache[j] = _leadterm_series(gb, psi.target.degrees, M.ring.codec)
    return cache[j]


def _resolution_free(M: Subquotient, j: int) -> GradedFree:
    if j == 0:
        pres_gens, _ = M.presentation()
        return pres_gens.source
    phi = M.resolution_map(j)
    return GradedFree(()) if phi is None else phi.source


def ext_hilbert_function(M: Subquotient, j: int, e: int) -> int:
    """dim Ext^j_S(M, S)_e without materializing the Ext module."""
    if not 0 <= j <= 4:
        raise MonadLabError("Ext index out of range 0..4")
    fj = _resolution_free(M, j)
    if fj.rank == 0:
        return 0
    total = free_module_series(fj.dual().degrees).coefficient(e)
    total -= _dual_image_series(M, j).coefficient(e)
    total -= _dual_image_series(M, j + 1).coefficient(e)
    return total


def sheaf_cohomology(M: Subquotient, i: int, d: int) -> int:
    """dim H^i(P^3, ~M(d)) for 0 <= i <= 3."""
    if not 0 <= i <= 3:
        raise MonadLabError("cohomology index out of range 0..3")
    if i >= 1:
        return ext_hilbert_function(M, 3 - i, -d - 4)
    h0 = M.hilbert_function(d)
    h0 -= ext_hilbert_function(M, 4, -d - 4)
    h0 += ext_hilbert_function(M, 3, -d - 4)
    return h0


def h0_global(M: Subquotient) -> int:
    """h^0(P^3, ~M)."""
    return sheaf_cohomology(M, 0, 0)


def euler_characteristic(M: Subquotient, d: int) -> int:
    """chi(~M(d)) = sum (-1)^i h^i."""
    return sum((-1) ** i * sheaf_cohomology(M, i, d) for i in range(4))


@dataclass
class CohomologyTable:
    """h^i(~M(d)) over a window of twists."""

    module: Subquotient
    entries: dict = field(default_factory=dict)  # (i, d) -> value

    def value(self, i: int, d: int) -> int:
        if (i, d) not in self.entries:
            self.entries[(i, d)] = sheaf_cohomology(self.module, i, d)
        return self.entries[(i, d)]

    def row(self, i: int, dmin: int, dmax: int):
        return [self.value(i, d) for d in range(dmin, dmax + 1)]

    def euler(self, d: int) -> int:
        return sum((-1) ** i * self.value(i, d) for i in range(4))

    def check_euler_is_hilbert_polynomial(self, dmin: int, dmax: int) -> bool:
        hp = self.module.hilbert_series()
        return all(
            self.euler(d) == hp.hilbert_polynomial_value(d)
            for d in range(dmin, dmax + 1)
        )

    def render(self, dmin: int, dmax: int) -> str:
        lines = ["d:    " + " ".join(f"{d:>5}" for d in range(dmin, dmax + 1))]
        for i in range(4):
            lines.append(
                f"h^{i}:  " + " ".join(f"{self.value(i, d):>5}" for d in range(dmin, dmax + 1))
            )
        return "\n".join(lines)


def cohomology_table(M: Subquotient, dmin: int, dmax: int) -> CohomologyTable:
    t = CohomologyTable(M)
    for d in range(dmin, dmax + 1):
        for i in range(4):
            t.value(i, d)
    return t
