"""Groebner-basis front end: reduced bases, normal forms, syzygies,
saturation, Krull dimension, and Hilbert data.

Module elements are tuples/lists of ``Poly`` (one entry per ambient
generator); plain ``Poly`` inputs are treated as rank-one elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import engine as en
from .engine import Budget, GBEngine, GraphGB
from .errors import MonadLabError, RingMismatchError
from .hilbert import HilbertSeries
from .poly import Poly
from .rings import VARIABLES


@dataclass(frozen=True)
class FreeModuleOrder:
    """Module monomial order: base order on monomials, ties broken by
    generator index ascending (position-over-term tie break)."""

    base: str = "grevlex"


def _as_vectors(gens):
    """Normalize input to (vector list, rank, ring)."""
    gens = list(gens)
    if not gens:
        raise MonadLabError("empty generating set needs an explicit ambient")
    if isinstance(gens[0], Poly):
        gens = [[g] for g in gens]
    rank = len(gens[0])
    ring = None
    for v in gens:
        if len(v) != rank:
            raise MonadLabError("mixed ambient modules")
        for f in v:
            if ring is None and f is not None and not f.is_zero:
                ring = f.ring
            elif f is not None and not f.is_zero and f.ring != ring:
                raise RingMismatchError("mixed rings in generating set")
    if ring is None:
        raise MonadLabError("all generators are zero")
    return gens, rank, ring


def _vec(polys, ring):
    out = {}
    for comp, f in enumerate(polys):
        if f is None or f.is_zero:
            continue
        for m, c in f.terms.items():
            out[en.term_key(m, comp)] = c
    return out


def _polys(vec, rank, ring):
    per = [{} for _ in range(rank)]
    for k, c in vec.items():
        per[en.term_comp(k)][en.term_mono(k)] = c
    return tuple(Poly(ring, t) for t in per)


@dataclass
class GroebnerBasis:
    generators: tuple
    order: FreeModuleOrder
    reduced: bool = True
    _ring: object = field(default=None, repr=False)
    _rank: int = 0
    _degrees: tuple = ()
    _vecs: list = field(default_factory=list, repr=False)
    _engine: object = field(default=None, repr=False)

    def engine(self) -> GBEngine:
        if self._engine is None:
            eng = GBEngine(self._ring, list(self._degrees))
            for v in self._vecs:
                eng._insert(dict(v))
            eng.pairs = []
            self._engine = eng
        return self._engine

    def lead_terms(self):
        out = []
        for v in self._vecs:
            k = max(v)
            out.append((en.term_comp(k), self._ring.codec.exps(en.term_mono(k))))
        return out

    def __len__(self):
        return len(self.generators)


def groebner_basis(gens, order: FreeModuleOrder | None = None, degrees=None, budget=None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    gens: list of Poly (ideal) or list of Poly-vectors (submodule).
    degrees: ambient generator degrees (defaults to all zero; only used
    for the selection strategy, never for correctness).
    """
    vecs, rank, ring = _as_vectors(gens)
    if order is not None and order.base != ring.order:
        raise MonadLabError(
            f"order {order.base!r} does not match the ring order {ring.order!r}"
        )
    degs = list(degrees) if degrees is not None else [0] * rank
    raw = [_vec(v, ring) for v in vecs]
    result = en.groebner_vectors([v for v in raw if v], ring, degs, budget=budget)
    gb = GroebnerBasis(
        generators=tuple(_polys(v, rank, ring) for v in result),
        order=order or FreeModuleOrder(ring.order),
        reduced=True,
        _ring=ring,
        _rank=rank,
        _degrees=tuple(degs),
        _vecs=result,
    )
    return gb


def normal_form(f, gb: GroebnerBasis):
    """Remainder of f on division by gb; idempotent; f - nf lies in the span."""
    single = isinstance(f, Poly)
    polys = [f] if single else list(f)
    if len(polys) != gb._rank:
        raise MonadLabError("ambient mismatch")
    vec = _vec(polys, gb._ring)
    red = gb.engine().reduce(vec)
    out = _polys(red, gb._rank, gb._ring)
    return out[0] if single else out


def verify_buchberger(gb: GroebnerBasis) -> bool:
    """Independent S-pair certificate for a claimed Groebner basis."""
    return en.verify_groebner(gb._vecs, gb._ring, list(gb._degrees))


def syzygies(m, budget=None):
    """Syzygy map of a GradedMap (image = kernel, composition zero)."""
    from .graded import map_syzygies

    return map_syzygies(m, budget=budget)


# -- ideal/submodule arithmetic -------------------------------------------------


def _quotient_by_poly(sub_vecs, rank, ring, f: Poly, degrees, budget=None):
    """Generators of (M : f) for a submodule M given by vectors."""
    cols = []
    col_degs = []
    fdeg = f.homogeneous_degree()
    if not isinstance(fdeg, int):
        raise MonadLabError("quotient divisor must be homogeneous and nonzero")
    for i in range(rank):
        col = {en.term_key(m, i): c for m, c in f.terms.items()}
        cols.append(col)
        col_degs.append(fdeg + degrees[i])
    for v in sub_vecs:
        cols.append(dict(v))
        col_degs.append(en.vec_degree(v, degrees, ring.codec))
    graph = GraphGB(cols, ring, degrees, col_degs, budget=budget)
    out = []
    for s in graph.syzygy_gens():
        proj = {}
        for k, c in s.items():
            comp = en.term_comp(k)
            if comp < rank:
                proj[k] = c
        if proj:
            out.append(proj)
    return out


def _intersect(a_vecs, b_vecs, rank, ring, degrees, budget=None):
    """Generators of the intersection of two submodules of one ambient."""
    # kernel of F -> F/A (+) F/B via the doubled ambient
    dbl = list(degrees) + list(degrees)
    cols = []
    col_degs = []
    one = ring.field.one
    for i in range(rank):
        key1 = en.term_key(ring.codec.one, i)
        key2 = en.term_key(ring.codec.one, rank + i)
        cols.append({key1: one, key2: one})
        col_degs.append(degrees[i])
    for v in a_vecs:
        cols.append(dict(v))
        col_degs.append(en.vec_degree(v, degrees, ring.codec))
    for v in b_vecs:
        cols.append(_shift_comp(v, rank))
        col_degs.append(en.vec_degree(v, degrees, ring.codec))
    graph = GraphGB(cols, ring, dbl, col_degs, budget=budget)
    out = []
    for s in graph.syzygy_gens():
        proj = {}
        for k, c in s.items():
            comp = en.term_comp(k)
            if comp < rank:
                proj[k] = c
        if proj:
            out.append(proj)
    return out


def _shift_comp(vec, offset):
    out = {}
    for k, c in vec.items():
        comp = en.term_comp(k)
        mono = en.term_mono(k)
        out[en.term_key(mono, comp + offset)] = c
    return out


def saturate(I, J, degrees=None, budget=None):
    """Saturation I : J^infinity of a submodule by an ideal.

    I: list of Poly (ideal) or Poly-vectors; J: list of Poly.
    Returns the reduced Groebner basis of the saturation, same shape as I.
    """
    vecs, rank, ring = _as_vectors(I)
    single = isinstance(I[0], Poly)
    degs = list(degrees) if degrees is not None else [0] * rank
    jpolys = [f for f in J if not f.is_zero]
    if any(f.is_unit for f in jpolys):
        # saturating by the unit ideal changes nothing
        gb = en.groebner_vectors([_vec(v, ring) for v in vecs], ring, degs, budget=budget)
        out = [_polys(v, rank, ring) for v in gb]
        return [v[0] for v in out] if single else out
    current = en.groebner_vectors(
        [_vec(v, ring) for v in vecs if any(not f.is_zero for f in v)],
        ring, degs, budget=budget,
    )
    while True:
        quots = [
            _quotient_by_poly(current, rank, ring, f, degs, budget=budget)
            for f in jpolys
        ]
        total = quots[0]
        for q in quots[1:]:
            total = _intersect(total, q, rank, ring, degs, budget=budget)
        # test total ⊆ current
        eng = GBEngine(ring, degs, budget=budget)
        for v in current:
            eng._insert(dict(v))
        eng.pairs = []
        if all(not eng.reduce(v) for v in total):
            break
        current = en.groebner_vectors(total, ring, degs, budget=budget)
    out = [_polys(v, rank, ring) for v in current]
    return [v[0] for v in out] if single else out


def krull_dim(ideal_gens, budget=None) -> int:
    """Krull dimension of S/I (dimension of the affine cone); unit ideal -> -1."""
    gens = [f for f in ideal_gens if not f.is_zero]
    if not gens:
        return 4
    ring = gens[0].ring
    gb = en.groebner_vectors([_vec([f], ring) for f in gens], ring, [0], budget=budget)
    lead_exps = [ring.codec.exps(en.term_mono(max(v))) for v in gb]
    if any(sum(e) == 0 for e in lead_exps):
        return -1
    best = 0
    for mask in range(16):
        support = [i for i in range(4) if mask & (1 << i)]
        outside = [i for i in range(4) if not mask & (1 << i)]
        # independent iff no lead monomial is supported inside `support`
        if all(any(e[i] for i in outside) for e in lead_exps):
            best = max(best, len(support))
    return best


def hilbert_function(M, d: int) -> int:
    """dim_k of the degree-d piece of a Subquotient (or S/I from gens)."""
    if hasattr(M, "hilbert_function"):
        return M.hilbert_function(d)
    from .graded import Subquotient

    return Subquotient.quotient_ring(list(M), _first_ring(M)).hilbert_function(d)


def hilbert_series(M) -> HilbertSeries:
    if hasattr(M, "hilbert_series"):
        return M.hilbert_series()
    from .graded import Subquotient

    return Subquotient.quotient_ring(list(M), _first_ring(M)).hilbert_series()


def _first_ring(polys):
    for f in polys:
        if not f.is_zero:
            return f.ring
    raise MonadLabError("cannot infer ring from zero generators")


def resume_checkpoint(path_or_snapshot, budget=None):
    """Continue an interrupted Groebner run from its checkpoint and return
    the finished reduced basis (engine vectors)."""
    import pickle

    snap = path_or_snapshot
    if isinstance(snap, (str, bytes)):
        with open(snap, "rb") as fh:
            snap = pickle.load(fh)
    eng = GBEngine.from_snapshot(snap, budget=budget)
    eng.complete()
    return eng.result()
