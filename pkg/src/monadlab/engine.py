"""Buchberger engine for submodules of graded free modules.

Internal representation: a module element is ``{term_key: coeff}`` where

    term_key = [graph_flag] | packed_monomial << 24 | (CMASK - component)

so integer comparison realizes the module order: base monomial order first,
ties broken by generator index ascending (lower index wins).  The optional
graph flag puts a leading block of components above everything else; that
is the elimination order used to read off syzygies and lifts from a single
Groebner run on the graph {(phi(e_j), e_j)}.

The pair queue uses the normal strategy (minimal S-degree first) with the
Gebauer-Moeller M/F/B criteria; the product criterion is applied only in
rank one, where it is valid.  All inputs are homogeneous, so processing
pairs by ascending degree makes any degree-truncated state a Groebner
basis up to that degree (used by the incremental membership tests).
"""

from __future__ import annotations

import heapq
import pickle
import time

from .errors import BudgetExceededError
from .rings import PolyRing

CBITS = 24
CMASK = (1 << CBITS) - 1
MONO_SHIFT = CBITS
GRAPH_FLAG = 1 << 100
_KEY_MONO_MASK = GRAPH_FLAG - 1


def term_key(mono: int, comp: int, n_graph: int = 0) -> int:
    k = (mono << MONO_SHIFT) | (CMASK - comp)
    if comp < n_graph:
        k |= GRAPH_FLAG
    return k


def term_comp(k: int) -> int:
    return CMASK - (k & CMASK)


def term_mono(k: int) -> int:
    return (k & _KEY_MONO_MASK) >> MONO_SHIFT


def vec_degree(v: dict, comp_degs, codec) -> int:
    """Degree of a homogeneous vector (from any term)."""
    k = next(iter(v))
    return codec.deg(term_mono(k)) + comp_degs[term_comp(k)]


class Budget:
    """Step/wall-clock budget shared by the engines of one job."""

    def __init__(self, max_steps=None, max_seconds=None):
        self.max_steps = max_steps
        self.steps = 0
        self.deadline = time.monotonic() + max_seconds if max_seconds else None

    def spend(self, n=1):
        self.steps += n
        if self.max_steps is not None and self.steps > self.max_steps:
            raise _BudgetSignal("step budget exhausted")
        if self.deadline is not None and (self.steps & 0x3FF) == 0:
            if time.monotonic() > self.deadline:
                raise _BudgetSignal("time budget exhausted")


class _BudgetSignal(Exception):
    pass


class GBEngine:
    def __init__(self, ring: PolyRing, comp_degs, n_graph: int = 0, budget: Budget | None = None):
        self.ring = ring
        self.field = ring.field
        self.codec = ring.codec
        self.comp_degs = list(comp_degs)
        self.rank = len(self.comp_degs)
        self.n_graph = n_graph
        self.budget = budget
        self._p = getattr(ring.field, "p", 0)
        self.basis = []        # monic vectors (dicts)
        self.tails = []        # per element: [(key, coeff)] without the lead
        self.lead_key = []
        self.lead_mono = []
        self.lead_comp = []
        self.alive = []
        self.buckets = {}      # component -> [basis indices]
        self.pairs = []        # heap of (sdeg, lcm_mono, i, j)
        self.dead_pairs = set()
        self._pending = []     # generators not yet inserted: (deg, seq, vec)
        self._seq = 0
        self._reduced = False

    # -- low-level reduction ------------------------------------------------

    def reduce(self, vec: dict) -> dict:
        """Full normal form of vec against the current basis."""
        if not vec:
            return {}
        if self._p:
            return self._reduce_fp(vec)
        return self._reduce_generic(vec)

    def _reduce_fp(self, vec: dict) -> dict:
        p = self._p
        divides = self.codec.divides
        buckets = self.buckets
        lead_mono = self.lead_mono
        tails = self.tails
        budget = self.budget
        pop = heapq.heappop
        push = heapq.heappush
        out = {}
        work = dict(vec)
        heap = [-k for k in work]
        heapq.heapify(heap)
        while heap:
            k = -pop(heap)
            c = work.pop(k, None)
            if c is None:
                continue
            comp = CMASK - (k & CMASK)
            mono = (k & _KEY_MONO_MASK) >> MONO_SHIFT
            red = -1
            b = buckets.get(comp)
            if b is not None:
                for idx in b:
                    if divides(lead_mono[idx], mono):
                        red = idx
                        break
            if red < 0:
                out[k] = c
                continue
            if budget is not None:
                budget.spend()
            shift = (mono - lead_mono[red]) << MONO_SHIFT
            for gk, gc in tails[red]:
                nk = gk + shift
                cur = work.get(nk)
                if cur is None:
                    nc = (-c * gc) % p
                    if nc:
                        work[nk] = nc
                        push(heap, -nk)
                else:
                    nc = (cur - c * gc) % p
                    if nc:
                        work[nk] = nc
                    else:
                        del work[nk]
        return out

    def _reduce_generic(self, vec: dict) -> dict:
        fld = self.field
        zero = fld.zero
        sub = fld.sub
        mul = fld.mul
        divides = self.codec.divides
        buckets = self.buckets
        lead_mono = self.lead_mono
        tails = self.tails
        budget = self.budget
        out = {}
        work = dict(vec)
        heap = [-k for k in work]
        heapq.heapify(heap)
        while heap:
            k = -heapq.heappop(heap)
            c = work.pop(k, None)
            if c is None or c == zero:
                continue
            comp = CMASK - (k & CMASK)
            mono = (k & _KEY_MONO_MASK) >> MONO_SHIFT
            red = -1
            for idx in buckets.get(comp, ()):
                if divides(lead_mono[idx], mono):
                    red = idx
                    break
            if red < 0:
                out[k] = c
                continue
            if budget is not None:
                budget.spend()
            shift = (mono - lead_mono[red]) << MONO_SHIFT
            for gk, gc in tails[red]:
                nk = gk + shift
                cur = work.get(nk)
                if cur is None:
                    nc = sub(zero, mul(c, gc))
                    if nc != zero:
                        work[nk] = nc
                        heapq.heappush(heap, -nk)
                else:
                    nc = sub(cur, mul(c, gc))
                    if nc == zero:
                        del work[nk]
                    else:
                        work[nk] = nc
        return out

    # -- pair management ------------------------------------------------------

    def _insert(self, vec: dict):
        """Insert a fully reduced nonzero vector, update the pair queue."""
        fld = self.field
        lk = max(vec)
        lc = vec[lk]
        if lc != fld.one:
            inv = fld.inv(lc)
            mul = fld.mul
            vec = {k: mul(c, inv) for k, c in vec.items()}
        t = len(self.basis)
        mono = (lk & _KEY_MONO_MASK) >> MONO_SHIFT
        comp = CMASK - (lk & CMASK)
        self.basis.append(vec)
        self.tails.append([(k, c) for k, c in vec.items() if k != lk])
        self.lead_key.append(lk)
        self.lead_mono.append(mono)
        self.lead_comp.append(comp)
        self.alive.append(True)
        codec = self.codec
        lcm = codec.lcm
        divides = codec.divides
        cand = [i for i in self.buckets.get(comp, ()) if self.alive[i]]
        self.buckets.setdefault(comp, []).append(t)

        lcms = {i: lcm(self.lead_mono[i], mono) for i in cand}
        # criterion B: discard old pairs strictly refined by the new element
        for entry in self.pairs:
            _, lcmono, i, j = entry
            if (i, j) in self.dead_pairs or self.lead_comp[i] != comp:
                continue
            if (
                divides(mono, lcmono)
                and lcm(self.lead_mono[i], mono) != lcmono
                and lcm(self.lead_mono[j], mono) != lcmono
            ):
                self.dead_pairs.add((i, j))
        # criterion M: among new pairs drop those whose lcm is a proper multiple
        keep = []
        for i in cand:
            li = lcms[i]
            dominated = False
            for j in cand:
                if j == i:
                    continue
                lj = lcms[j]
                if lj != li and divides(lj, li):
                    dominated = True
                    break
            if not dominated:
                keep.append(i)
        # criterion F: one pair per lcm value
        seen = {}
        for i in keep:
            li = lcms[i]
            if li not in seen:
                seen[li] = i
        keep = sorted(seen.values())
        # product criterion (valid for ideals only)
        if self.rank == 1 and self.n_graph == 0:
            keep = [
                i for i in keep
                if lcms[i] != self.codec.mul(self.lead_mono[i], mono)
            ]
        deg_c = self.comp_degs[comp]
        for i in keep:
            li = lcms[i]
            sdeg = self.codec.deg(li) + deg_c
            heapq.heappush(self.pairs, (sdeg, li, i, t))

    def add_generator(self, vec: dict):
        if vec:
            d = vec_degree(vec, self.comp_degs, self.codec)
            self._pending.append((d, self._seq, vec))
            self._seq += 1
            heapq.heapify(self._pending)  # cheap; lists stay small
        return self

    def add_generators(self, vecs):
        for v in vecs:
            if v:
                self._pending.append(
                    (vec_degree(v, self.comp_degs, self.codec), self._seq, v)
                )
                self._seq += 1
        heapq.heapify(self._pending)
        return self

    def _next_degree(self):
        d = None
        if self._pending:
            d = self._pending[0][0]
        while self.pairs and self.pairs[0][2:] in self.dead_pairs:
            heapq.heappop(self.pairs)
        if self.pairs:
            pd = self.pairs[0][0]
            d = pd if d is None else min(d, pd)
        return d

    def complete(self, through_degree=None):
        """Process generators and pairs by ascending degree.

        With ``through_degree`` set, stops once every remaining event has
        strictly larger degree; the state is then a Groebner basis for all
        degrees <= through_degree (inputs are homogeneous).
        """
        try:
            while True:
                d = self._next_degree()
                if d is None:
                    break
                if through_degree is not None and d > through_degree:
                    break
                take_pending = bool(self._pending) and self._pending[0][0] <= d
                if take_pending:
                    _, _, v = heapq.heappop(self._pending)
                    r = self.reduce(v)
                    if r:
                        self._insert(r)
                    continue
                sdeg, lcmono, i, j = heapq.heappop(self.pairs)
                if (i, j) in self.dead_pairs:
                    continue
                if self.budget is not None:
                    self.budget.spend()
                s = self._spair(i, j, lcmono)
                r = self.reduce(s)
                if r:
                    self._insert(r)
        except _BudgetSignal as sig:
            raise BudgetExceededError(str(sig), checkpoint=self.snapshot()) from None
        return self

    def _spair(self, i, j, lcmono):
        fld = self.field
        zero = fld.zero
        sub = fld.sub
        si = (lcmono - self.lead_mono[i]) << MONO_SHIFT
        sj = (lcmono - self.lead_mono[j]) << MONO_SHIFT
        out = {k + si: c for k, c in self.basis[i].items()}
        for k, c in self.basis[j].items():
            nk = k + sj
            cur = out.get(nk, zero)
            nc = sub(cur, c)
            if nc == zero:
                out.pop(nk, None)
            else:
                out[nk] = nc
        return out

    # -- finishing ------------------------------------------------------------

    def interreduce(self):
        """Replace the basis by the unique reduced Groebner basis."""
        idx = [i for i in range(len(self.basis)) if self.alive[i]]
        idx.sort(key=lambda i: self.lead_key[i])
        divides = self.codec.divides
        kept = []
        for i in idx:
            mi, ci = self.lead_mono[i], self.lead_comp[i]
            if any(
                self.lead_comp[j] == ci and divides(self.lead_mono[j], mi)
                for j in kept
            ):
                continue
            kept.append(i)
        elements = [self.basis[i] for i in kept]
        leads = [self.lead_key[i] for i in kept]
        lead_monos = [self.lead_mono[i] for i in kept]
        lead_comps = [self.lead_comp[i] for i in kept]
        # rebuild engine state with only the kept elements, then tail-reduce
        self.basis, self.lead_key, self.lead_mono, self.lead_comp = [], [], [], []
        self.tails = []
        self.alive = []
        self.buckets = {}
        self.pairs = []
        self.dead_pairs = set()
        order = sorted(range(len(elements)), key=lambda q: -leads[q])
        for q in order:
            t = len(self.basis)
            self.basis.append(elements[q])
            self.tails.append([(k, c) for k, c in elements[q].items() if k != leads[q]])
            self.lead_key.append(leads[q])
            self.lead_mono.append(lead_monos[q])
            self.lead_comp.append(lead_comps[q])
            self.alive.append(True)
            self.buckets.setdefault(lead_comps[q], []).append(t)
        for t in range(len(self.basis)):
            v = self.basis[t]
            lk = self.lead_key[t]
            lc = v[lk]
            tail = dict(v)
            del tail[lk]
            # remove self from buckets during its own tail reduction
            self.buckets[self.lead_comp[t]].remove(t)
            red = self.reduce(tail)
            self.buckets[self.lead_comp[t]].append(t)
            self.buckets[self.lead_comp[t]].sort()
            red[lk] = lc
            inv = self.field.inv(lc)
            mul = self.field.mul
            newv = {k: mul(c, inv) for k, c in red.items()}
            self.basis[t] = newv
            self.tails[t] = [(k, c) for k, c in newv.items() if k != lk]
        self._reduced = True
        return self

    def result(self):
        """Reduced basis sorted by descending lead key (deterministic)."""
        if not self._reduced:
            self.interreduce()
        order = sorted(range(len(self.basis)), key=lambda t: -self.lead_key[t])
        return [self.basis[t] for t in order]

    # -- checkpointing ----------------------------------------------------------

    def snapshot(self) -> dict:
        return {
            "ring": self.ring.descriptor(),
            "comp_degs": list(self.comp_degs),
            "n_graph": self.n_graph,
            "basis": [dict(b) for b in self.basis],
            "pairs": [p for p in self.pairs if p[2:] not in self.dead_pairs],
            "pending": list(self._pending),
            "seq": self._seq,
        }

    @staticmethod
    def from_snapshot(snap: dict, budget: Budget | None = None) -> "GBEngine":
        ring = PolyRing.from_descriptor(snap["ring"])
        eng = GBEngine(ring, snap["comp_degs"], n_graph=snap["n_graph"], budget=budget)
        for vec in snap["basis"]:
            lk = max(vec)
            eng.basis.append(vec)
            eng.lead_key.append(lk)
            eng.lead_mono.append((lk & _KEY_MONO_MASK) >> MONO_SHIFT)
            eng.lead_comp.append(CMASK - (lk & CMASK))
            eng.alive.append(True)
            eng.buckets.setdefault(eng.lead_comp[-1], []).append(len(eng.basis) - 1)
        eng.pairs = [tuple(p) for p in snap["pairs"]]
        heapq.heapify(eng.pairs)
        eng._pending = [tuple(p) for p in snap["pending"]]
        heapq.heapify(eng._pending)
        eng._seq = snap["seq"]
        return eng

    def dump_checkpoint(self, path):
        with open(path, "wb") as fh:
            pickle.dump(self.snapshot(), fh)


# -- high-level helpers --------------------------------------------------------


def groebner_vectors(vecs, ring, comp_degs, budget=None):
    """Reduced Groebner basis (list of vectors) of the span of ``vecs``."""
    eng = GBEngine(ring, comp_degs, budget=budget)
    eng.add_generators(vecs)
    eng.complete()
    return eng.result()


class GraphGB:
    """Combined Groebner object for a map phi: F -> G given by columns.

    One elimination run over G (+) F yields: a reduced basis of the graph
    module, the image Groebner basis (G-parts), generators (in fact a
    Groebner basis in the induced order) of the syzygy module, and lifts.
    """

    def __init__(self, columns, ring, target_degs, col_degs, budget=None):
        self.ring = ring
        self.rG = len(target_degs)
        self.rF = len(columns)
        comp_degs = list(target_degs) + list(col_degs)
        self.comp_degs = comp_degs
        eng = GBEngine(ring, comp_degs, n_graph=self.rG, budget=budget)
        gens = []
        for j, col in enumerate(columns):
            v = {}
            for k, c in col.items():
                comp = CMASK - (k & CMASK)
                mono = (k & _KEY_MONO_MASK) >> MONO_SHIFT
                v[term_key(mono, comp, self.rG)] = c
            v[term_key(ring.codec.one, self.rG + j, self.rG)] = ring.field.one
            gens.append(v)
        eng.add_generators(gens)
        eng.complete()
        self.engine = eng
        self._elements = eng.result()

    def _split(self, vec):
        g = {}
        f = {}
        for k, c in vec.items():
            if k & GRAPH_FLAG:
                comp = CMASK - (k & CMASK)
                mono = (k & _KEY_MONO_MASK) >> MONO_SHIFT
                g[term_key(mono, comp)] = c
            else:
                comp = CMASK - (k & CMASK) - self.rG
                mono = (k & _KEY_MONO_MASK) >> MONO_SHIFT
                f[term_key(mono, comp)] = c
        return g, f

    def image_gb(self):
        """Reduced Groebner basis of im(phi) as vectors in G."""
        out = []
        for vec in self._elements:
            g, _ = self._split(vec)
            if g:
                out.append(g)
        return out

    def syzygy_gens(self):
        """Generators of ker(phi) as vectors in F (Groebner in induced order)."""
        out = []
        for vec in self._elements:
            g, f = self._split(vec)
            if not g and f:
                out.append(f)
        return out

    def lift(self, target_vec):
        """u with phi(u) = target_vec, or None if not in the image."""
        v = {}
        for k, c in target_vec.items():
            comp = CMASK - (k & CMASK)
            mono = (k & _KEY_MONO_MASK) >> MONO_SHIFT
            v[term_key(mono, comp, self.rG)] = c
        nf = self.engine.reduce(v)
        g, f = self._split(nf)
        if g:
            return None
        neg = self.ring.field.neg
        return {k: neg(c) for k, c in f.items()}

    def normal_form_image(self, target_vec):
        """Normal form of a G-vector against the image Groebner basis."""
        v = {}
        for k, c in target_vec.items():
            comp = CMASK - (k & CMASK)
            mono = (k & _KEY_MONO_MASK) >> MONO_SHIFT
            v[term_key(mono, comp, self.rG)] = c
        nf = self.engine.reduce(v)
        g, _ = self._split(nf)
        return g


class IncrementalGB:
    """Membership oracle that grows one generator at a time.

    Used to extract minimal generating sets: homogeneous candidates are
    offered in weakly increasing degree; a candidate is redundant exactly
    when it reduces to zero against the part already kept (completed
    through its degree).
    """

    def __init__(self, ring, comp_degs, budget=None):
        self.engine = GBEngine(ring, comp_degs, budget=budget)
        self.codec = ring.codec
        self.comp_degs = list(comp_degs)

    def contains(self, vec):
        if not vec:
            return True
        d = vec_degree(vec, self.comp_degs, self.codec)
        self.engine.complete(through_degree=d)
        return not self.engine.reduce(vec)

    def add(self, vec):
        self.engine.add_generator(vec)


def verify_groebner(vectors, ring, comp_degs):
    """Independent straight-line Buchberger certificate.

    Checks every same-component S-pair of the given elements reduces to
    zero by plain long division against the set itself.
    """
    eng = GBEngine(ring, comp_degs)
    for v in vectors:
        if v:
            eng._insert(dict(v))
    eng.pairs = []
    eng.dead_pairs = set()
    n = len(eng.basis)
    codec = ring.codec
    for i in range(n):
        for j in range(i + 1, n):
            if eng.lead_comp[i] != eng.lead_comp[j]:
                continue
            lcm = codec.lcm(eng.lead_mono[i], eng.lead_mono[j])
            s = eng._spair(i, j, lcm)
            if eng.reduce(s):
                return False
    return True
