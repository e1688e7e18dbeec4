"""Graded free modules, degree-checked maps, and subquotient modules.

Conventions: a ``GradedFree`` with generator degrees (d_1..d_r) is the
module ⊕ S(-d_i); its sheafification is ⊕ O(-d_i).  A map F -> G with
matrix (e_ij) acting on column vectors is graded iff every nonzero entry
is homogeneous of degree source.d_j - target.d_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import engine as en
from .engine import GraphGB, IncrementalGB, term_key
from .errors import HomogeneityError, MonadLabError, RingMismatchError, ShapeError
from .hilbert import HilbertSeries, free_module_series, submodule_series
from .poly import Poly
from .rings import PolyRing


@dataclass(frozen=True)
class GradedFree:
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))

    @property
    def rank(self):
        return len(self.degrees)

    @property
    def is_zero(self):
        return not self.degrees

    def twist(self, d):
        """F(d): generator degrees shift by -d."""
        return GradedFree(tuple(x - d for x in self.degrees))

    def dual(self):
        return GradedFree(tuple(-x for x in self.degrees))

    def direct_sum(self, other):
        return GradedFree(self.degrees + other.degrees)

    def tensor(self, other):
        return GradedFree(
            tuple(a + b for a in self.degrees for b in other.degrees)
        )

    def twists(self):
        """Sheaf twists: F sheafifies to ⊕ O(t_i) with t_i = -d_i."""
        return tuple(-d for d in self.degrees)

    def __repr__(self):
        return f"GradedFree{self.degrees}"


def _vec_from_polys(polys, ring):
    v = {}
    for comp, f in enumerate(polys):
        if f is None or f.is_zero:
            continue
        for m, c in f.terms.items():
            v[term_key(m, comp)] = c
    return v

def _polys_from_vec(vec, rank, ring):
    per = [{} for _ in range(rank)]
    for k, c in vec.items():
        per[en.term_comp(k)][en.term_mono(k)] = c
    return tuple(Poly(ring, t) for t in per)


class GradedMap:
    """Matrix of homogeneous polynomials between graded free modules."""

    def __init__(self, source, target, entries, ring, strict=True):
        if len(entries) != target.rank or any(len(r) != source.rank for r in entries):
            raise ShapeError(
                f"matrix is {len(entries)}x{len(entries[0]) if entries else 0}, "
                f"expected {target.rank}x{source.rank}"
            )
        self.source = source
        self.target = target
        self.ring = ring
        rows = []
        for i, row in enumerate(entries):
            prow = []
            for j, e in enumerate(row):
                if isinstance(e, int):
                    e = Poly.const(ring, e)
                if e.ring != ring:
                    raise RingMismatchError("entry ring differs from map ring")
                prow.append(e)
            rows.append(tuple(prow))
        self.entries = tuple(rows)
        if strict:
            self.check_homogeneous()
        self._cols = None

    def check_homogeneous(self):
        """Raise HomogeneityError at the first entry of the wrong degree."""
        for i in range(self.target.rank):
            for j in range(self.source.rank):
                e = self.entries[i][j]
                if e.is_zero:
                    continue
                want = self.source.degrees[j] - self.target.degrees[i]
                got = e.homogeneous_degree()
                if got != want:
                    raise HomogeneityError(i, j, want, got)

    def homogeneity_defects(self):
        """All (row, col, expected, got) degree violations (for reports)."""
        out = []
        for i in range(self.target.rank):
            for j in range(self.source.rank):
                e = self.entries[i][j]
                if e.is_zero:
                    continue
                want = self.source.degrees[j] - self.target.degrees[i]
                got = e.homogeneous_degree()
                if got != want:
                    out.append((i, j, want, got))
        return out

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(source, target, ring):
        z = Poly.zero(ring)
        return GradedMap(
            source, target, [[z] * source.rank for _ in range(target.rank)], ring
        )

    @staticmethod
    def identity(free, ring):
        one = Poly.const(ring, 1)
        z = Poly.zero(ring)
        return GradedMap(
            free,
            free,
            [[one if i == j else z for j in range(free.rank)] for i in range(free.rank)],
            ring,
        )

    @staticmethod
    def from_columns(cols, free_source, target, ring):
        """cols: list of engine vectors (or Poly tuples) in the target."""
        rows = [[Poly.zero(ring)] * len(cols) for _ in range(target.rank)]
        for j, col in enumerate(cols):
            polys = (
                _polys_from_vec(col, target.rank, ring)
                if isinstance(col, dict)
                else col
            )
            for i, f in enumerate(polys):
                rows[i][j] = f
        return GradedMap(free_source, target, rows, ring)

    # -- views --------------------------------------------------------------

    def column(self, j):
        return tuple(self.entries[i][j] for i in range(self.target.rank))

    def columns_as_vecs(self):
        if self._cols is None:
            self._cols = [
                _vec_from_polys(self.column(j), self.ring)
                for j in range(self.source.rank)
            ]
        return self._cols

    @property
    def is_zero(self):
        return all(e.is_zero for row in self.entries for e in row)

    # -- algebra --------------------------------------------------------------

    def compose(self, other):
        """self ∘ other (apply other first)."""
        if other.target != self.source:
            raise ShapeError("composition shape mismatch")
        z = Poly.zero(self.ring)
        out = []
        for i in range(self.target.rank):
            row = []
            for j in range(other.source.rank):
                acc = z
                for k in range(self.source.rank):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero or b.is_zero:
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GradedMap(other.source, self.target, out, self.ring, strict=False)

    def apply(self, polys):
        """Apply to a column vector of Polys from the source."""
        z = Poly.zero(self.ring)
        out = []
        for i in range(self.target.rank):
            acc = z
            for j in range(self.source.rank):
                e = self.entries[i][j]
                f = polys[j]
                if e.is_zero or f.is_zero:
                    continue
                acc = acc + e * f
            out.append(acc)
        return tuple(out)

    def transpose(self):
        out = [
            [self.entries[i][j] for i in range(self.target.rank)]
            for j in range(self.source.rank)
        ]
        return GradedMap(self.target.dual(), self.source.dual(), out, self.ring, strict=False)

    def twist(self, d):
        return GradedMap(
            self.source.twist(d), self.target.twist(d), self.entries, self.ring, strict=False
        )

    def direct_sum(self, other):
        z = Poly.zero(self.ring)
        rows = []
        for i in range(self.target.rank):
            rows.append(list(self.entries[i]) + [z] * other.source.rank)
        for i in range(other.target.rank):
            rows.append([z] * self.source.rank + list(other.entries[i]))
        return GradedMap(
            self.source.direct_sum(other.source),
            self.target.direct_sum(other.target),
            rows,
            self.ring,
            strict=False,
        )

    def tensor(self, other):
        """Kronecker product; index (i,k) -> i*rank+k row-major."""
        rows = []
        for i in range(self.target.rank):
            for k in range(other.target.rank):
                row = []
                for j in range(self.source.rank):
                    for l in range(other.source.rank):
                        a = self.entries[i][j]
                        b = other.entries[k][l]
                        row.append(
                            Poly.zero(self.ring) if a.is_zero or b.is_zero else a * b
                        )
                rows.append(row)
        return GradedMap(
            self.source.tensor(other.source),
            self.target.tensor(other.target),
            rows,
            self.ring,
            strict=False,
        )

    def eval_at(self, point):
        """Evaluate every entry at a point (4 field values)."""
        fld = self.ring.field
        codec = self.ring.codec
        out = []
        for row in self.entries:
            orow = []
            for e in row:
                acc = fld.zero
                for m, c in e.terms.items():
                    ex = codec.exps(m)
                    v = c
                    for coord, power in zip(point, ex):
                        if power:
                            v = fld.mul(v, pow(coord, power, fld.p) if fld.p else coord ** power)
                    acc = fld.add(acc, v)
                orow.append(acc)
            out.append(orow)
        return out

    def minor(self, rows, cols, _memo=None):
        """Determinant of the (rows x cols) submatrix (Laplace with memo)."""
        if _memo is None:
            _memo = {}

        def det(rs, cs):
            if not rs:
                return Poly.const(self.ring, 1)
            key = (rs, cs)
            if key in _memo:
                return _memo[key]
            acc = Poly.zero(self.ring)
            c0 = cs[0]
            rest = cs[1:]
            for t, i in enumerate(rs):
                e = self.entries[i][c0]
                if e.is_zero:
                    continue
                sub = det(tuple(r for r in rs if r != i), rest)
                term = e * sub
                acc = acc + (term if t % 2 == 0 else -term)
            _memo[key] = acc
            return acc

        return det(tuple(rows), tuple(cols))

    def minors(self, k, cap=None):
        """k x k minors; with cap, a deterministic subsample of that many."""
        rows = range(self.target.rank)
        cols = range(self.source.rank)
        combos = [
            (r, c)
            for r in itertools.combinations(rows, k)
            for c in itertools.combinations(cols, k)
        ]
        if cap is not None and len(combos) > cap:
            step = len(combos) / cap
            combos = [combos[int(i * step)] for i in range(cap)]
        memo = {}
        return [self.minor(r, c, memo) for r, c in combos]

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and other.source == self.source
            and other.target == self.target
            and other.entries == self.entries
        )

    def __repr__(self):
        return f"GradedMap({self.source!r} -> {self.target!r})"


def make_map(source, target, entries, ring, strict=True):
    """Validated graded map; rejects inhomogeneous entries when strict."""
    return GradedMap(source, target, entries, ring, strict=strict)


def _sort_key(vec):
    keys = tuple(sorted(vec.keys(), reverse=True))
    return keys


def minimal_generators(vecs, ring, ambient_degs, background=(), budget=None):
    """Greedy minimal generating set modulo a background submodule.

    Candidates are processed in weakly increasing degree; each is kept iff
    it does not reduce to zero against background + previously kept
    (graded Nakayama).
    """
    inc = IncrementalGB(ring, ambient_degs, budget=budget)
    for b in background:
        inc.add(b)
    withdeg = [
        (en.vec_degree(v, ambient_degs, ring.codec), _sort_key(v), v)
        for v in vecs
        if v
    ]
    withdeg.sort(key=lambda t: (t[0], t[1]))
    kept = []
    for _, _, v in withdeg:
        if not inc.contains(v):
            kept.append(v)
            inc.add(v)
    return kept


def map_syzygies(m: GradedMap, budget=None, trim=True):
    """GradedMap whose image is ker(m); source degrees = syzygy degrees."""
    if m.source.rank == 0:
        return GradedMap.zero(GradedFree(()), m.source, m.ring)
    if m.target.rank == 0 or m.is_zero:
        return GradedMap.identity(m.source, m.ring)
    graph = GraphGB(
        m.columns_as_vecs(),
        m.ring,
        m.target.degrees,
        m.source.degrees,
        budget=budget,
    )
    syz = graph.syzygy_gens()
    if trim:
        syz = minimal_generators(syz, m.ring, m.source.degrees, budget=budget)
    degs = [en.vec_degree(v, m.source.degrees, m.ring.codec) for v in syz]
    return GradedMap.from_columns(syz, GradedFree(tuple(degs)), m.source, m.ring)


class Subquotient:
    """Finitely presented graded module gens-image / rels-image in an
    ambient graded free module."""

    def __init__(self, ambient, gens, rels, ring, check=False):
        if gens.target != ambient or rels.target != ambient:
            raise ShapeError("gens/rels must land in the ambient module")
        self.ambient = ambient
        self.gens = gens
        self.rels = rels
        self.ring = ring
        self._gens_graph = None
        self._rels_gb = None
        self._series = None
        self._pres = None
        self._res = None
        self._dual_series = {}
        self._budget = None
        if check:
            self._check_rels_in_gens()

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def cokernel(phi: GradedMap):
        amb = phi.target
        return Subquotient(amb, GradedMap.identity(amb, phi.ring), phi, phi.ring)

    @staticmethod
    def free(free: GradedFree, ring):
        return Subquotient(
            free,
            GradedMap.identity(free, ring),
            GradedMap.zero(GradedFree(()), free, ring),
            ring,
        )

    @staticmethod
    def quotient_ring(ideal_gens, ring):
        """S/I as a subquotient of S."""
        amb = GradedFree((0,))
        cols = [[f] for f in ideal_gens]
        degs = []
        for f in ideal_gens:
            d = f.homogeneous_degree()
            if not isinstance(d, int):
                raise MonadLabError("ideal generators must be homogeneous and nonzero")
            degs.append(d)
        rels = GradedMap(
            GradedFree(tuple(degs)), amb, [list(ideal_gens)], ring
        )
        return Subquotient(amb, GradedMap.identity(amb, ring), rels, ring)

    def _check_rels_in_gens(self):
        graph = self._gens_graph_obj()
        for col in self.rels.columns_as_vecs():
            if graph.lift(col) is None:
                raise MonadLabError("relations are not contained in the generator span")

    # -- Groebner-backed data --------------------------------------------------

    def _gens_graph_obj(self):
        if self._gens_graph is None:
            self._gens_graph = GraphGB(
                self.gens.columns_as_vecs(),
                self.ring,
                self.ambient.degrees,
                self.gens.source.degrees,
                budget=self._budget,
            )
        return self._gens_graph

    def _rels_gb_vecs(self):
        if self._rels_gb is None:
            cols = [c for c in self.rels.columns_as_vecs() if c]
            self._rels_gb = en.groebner_vectors(
                cols, self.ring, self.ambient.degrees, budget=self._budget
            )
        return self._rels_gb

    # -- Hilbert data -----------------------------------------------------------

    def hilbert_series(self) -> HilbertSeries:
        if self._series is None:
            codec = self.ring.codec
            gens_is_identity = (
                self.gens.source == self.ambient
                and self.gens == GradedMap.identity(self.ambient, self.ring)
            )
            if gens_is_identity:
                g_series = free_module_series(self.ambient.degrees)
            else:
                gb = self._gens_graph_obj().image_gb()
                g_series = _leadterm_series(gb, self.ambient.degrees, codec)
            r_series = _leadterm_series(
                self._rels_gb_vecs(), self.ambient.degrees, codec
            )
            self._series = g_series - r_series
        return self._series

    def hilbert_function(self, d: int) -> int:
        return self.hilbert_series().coefficient(d)

    def rank(self) -> int:
        return self.hilbert_series().rank()

    # -- presentation and resolution ---------------------------------------------

    def presentation(self):
        """(pres_gens: F0 -> ambient, phi1: F1 -> F0), minimal."""
        if self._pres is None:
            rels_cols = [c for c in self.rels.columns_as_vecs() if c]
            gen_cols = self.gens.columns_as_vecs()
            kept = minimal_generators(
                gen_cols, self.ring, self.ambient.degrees,
                background=rels_cols, budget=self._budget,
            )
            degs = tuple(
                en.vec_degree(v, self.ambient.degrees, self.ring.codec) for v in kept
            )
            f0 = GradedFree(degs)
            pres_gens = GradedMap.from_columns(kept, f0, self.ambient, self.ring)
            if f0.rank == 0:
                phi1 = GradedMap.zero(GradedFree(()), f0, self.ring)
                self._pres = (pres_gens, phi1)
                return self._pres
            combined = kept + rels_cols
            comb_degs = degs + tuple(
                en.vec_degree(v, self.ambient.degrees, self.ring.codec)
                for v in rels_cols
            )
            graph = GraphGB(
                combined, self.ring, self.ambient.degrees, comb_degs,
                budget=self._budget,
            )
            rel_vecs = []
            for s in graph.syzygy_gens():
                proj = {k: c for k, c in s.items() if en.term_comp(k) < f0.rank}
                if proj:
                    rel_vecs.append(proj)
            rel_vecs = minimal_generators(
                rel_vecs, self.ring, degs, budget=self._budget
            )
            f1 = GradedFree(
                tuple(en.vec_degree(v, degs, self.ring.codec) for v in rel_vecs)
            )
            phi1 = GradedMap.from_columns(rel_vecs, f1, f0, self.ring)
            self._pres = (pres_gens, phi1)
        return self._pres

    def resolution(self, length: int):
        """Minimal free resolution maps [phi1, phi2, ...] up to the given
        length (phi_k: F_k -> F_{k-1}); stops early at a zero kernel."""
        _, phi1 = self.presentation()
        if self._res is None:
            self._res = [phi1]
        while len(self._res) < length:
            last = self._res[-1]
            if last.source.rank == 0:
                break
            nxt = map_syzygies(last, budget=self._budget)
            self._res.append(nxt)
            if nxt.source.rank == 0:
                break
        return self._res[:length]

    def resolution_map(self, j: int):
        """phi_j, or None when the resolution has ended before level j."""
        res = self.resolution(j)
        if j <= len(res):
            return res[j - 1]
        return None

    def betti_numbers(self):
        pres_gens, _ = self.presentation()
        res = self.resolution(4)
        out = [pres_gens.source.rank] + [m.source.rank for m in res]
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    # -- module operations -------------------------------------------------------

    def twist(self, d: int):
        return Subquotient(
            self.ambient.twist(d), self.gens.twist(d), self.rels.twist(d), self.ring
        )

    def tensor(self, other: "Subquotient"):
        if other.ring != self.ring:
            raise RingMismatchError("tensor over different rings")
        gm, pm = self.presentation()
        gn, pn = other.presentation()
        f0m, f0n = gm.source, gn.source
        idm = GradedMap.identity(f0m, self.ring)
        idn = GradedMap.identity(f0n, self.ring)
        left = pm.tensor(idn)    # F1M ⊗ F0N -> F0M ⊗ F0N
        right = idm.tensor(pn)   # F0M ⊗ F1N -> F0M ⊗ F0N
        cols = left.columns_as_vecs() + right.columns_as_vecs()
        src = GradedFree(left.source.degrees + right.source.degrees)
        rels = GradedMap.from_columns(cols, src, left.target, self.ring)
        return Subquotient.cokernel(rels)

    # -- misc ---------------------------------------------------------------------

    def contains_in_gens(self, vec) -> bool:
        return self._gens_graph_obj().lift(vec) is not None

    def __repr__(self):
        return (
            f"Subquotient(ambient={self.ambient!r}, "
            f"gens={self.gens.source.rank}, rels={self.rels.source.rank})"
        )


def _leadterm_series(gb_vecs, ambient_degs, codec) -> HilbertSeries:
    by_comp = {}
    for v in gb_vecs:
        k = max(v)
        by_comp.setdefault(en.term_comp(k), []).append(codec.exps(en.term_mono(k)))
    return submodule_series(by_comp, ambient_degs)


def kernel_module(m: GradedMap) -> Subquotient:
    syz = map_syzygies(m)
    return Subquotient(
        m.source,
        syz,
        GradedMap.zero(GradedFree(()), m.source, m.ring),
        m.ring,
    )


def image_module(m: GradedMap) -> Subquotient:
    return Subquotient(
        m.target, m, GradedMap.zero(GradedFree(()), m.target, m.ring), m.ring
    )


def homology_module(beta: GradedMap, alpha: GradedMap) -> Subquotient:
    """ker(beta)/im(alpha) as a subquotient of the middle module."""
    if alpha.target != beta.source:
        raise ShapeError("target(alpha) must equal source(beta)")
    comp = beta.compose(alpha)
    for i, row in enumerate(comp.entries):
        for j, e in enumerate(row):
            if not e.is_zero:
                raise MonadLabError(
                    f"beta∘alpha is nonzero at entry ({i},{j}): {e}"
                )
    syz = map_syzygies(beta)
    return Subquotient(beta.source, syz, alpha, beta.ring)


def minimalize(M: Subquotient) -> GradedMap:
    """Minimal free presentation matrix of M (no unit entries)."""
    _, phi1 = M.presentation()
    return phi1


def tensor_modules(M: Subquotient, N: Subquotient) -> Subquotient:
    return M.tensor(N)


def twist(M: Subquotient, d: int) -> Subquotient:
    return M.twist(d)


def free_resolution(M: Subquotient, max_length: int = 4):
    return M.resolution(max_length)


def ext_module(M: Subquotient, i: int) -> Subquotient:
    """Ext^i_S(M, S) as homology of the dualized minimal free resolution."""
    if not 0 <= i <= 4:
        raise MonadLabError("Ext index out of range 0..4")
    pres_gens, _ = M.presentation()
    frees = [pres_gens.source]
    res = M.resolution(i + 1)
    for m in res:
        frees.append(m.source)
    if i >= len(frees):
        ring = M.ring
        return Subquotient.free(GradedFree(()), ring)
    ambient = frees[i].dual()
    psi_next = res[i].transpose() if i < len(res) else None  # F_i^v -> F_{i+1}^v
    psi_prev = res[i - 1].transpose() if i >= 1 else None    # F_{i-1}^v -> F_i^v
    ring = M.ring
    if psi_next is None or psi_next.target.rank == 0:
        gens = GradedMap.identity(ambient, ring)
    else:
        gens = map_syzygies(psi_next)
    rels = (
        psi_prev
        if psi_prev is not None
        else GradedMap.zero(GradedFree(()), ambient, ring)
    )
    return Subquotient(ambient, gens, rels, ring)
