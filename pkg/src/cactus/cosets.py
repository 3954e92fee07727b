"""Todd-Coxeter coset enumeration.

The table has one column per generator and one per inverse (column ``2i``
is generator ``i``, column ``2i+1`` its inverse), even for involutions.
Coincidences are processed with a union-find forest and a queue, keeping
the smaller coset number.  Two strategies are available:

* ``hlt``: Haselgrove-Leech-Trotter, scanning and filling every relator at
  each live coset in turn.  When the table runs out of room a lookahead pass
  (scan without defining) collects coincidences, dead rows are compacted,
  and only then is the table grown.
* ``felsch``: define the first undefined entry and chase every cyclic
  conjugate of every relator (and inverse) through the new deduction.

Completed tables are standardized (cosets renumbered in breadth-first
order over the columns), so the result depends only on the group action,
not on the strategy.
"""
from __future__ import annotations

import csv
import io
import os
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numba import njit

from .presentations import Presentation
from .words import Word

DEFAULT_MAX_COSETS = 1 << 22

# slots of the int64 state vector shared by the kernels
N, ALPHA, NDEF, NDEAD, DLEN, DOVER, FELSCH, LIVE, MAXLIVE = range(9)


class CosetCapExceeded(RuntimeError):
    def __init__(self, table: "CosetTable"):
        s = table.stats
        super().__init__(
            f"coset cap {s['max_cosets']} exceeded: live={s['live']} "
            f"defined={s['defined']} deleted={s['deleted']}"
        )
        self.table = table


@dataclass(frozen=True)
class EnumConfig:
    max_cosets: int | None = None
    strategy: str = "hlt"
    compact_threshold: float = 0.25
    initial_size: int = 1 << 12
    deduction_stack: int = 1 << 16

    def __post_init__(self):
        if self.strategy not in ("hlt", "felsch"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.max_cosets is not None and self.max_cosets < 1:
            raise ValueError("max_cosets must be >= 1")
        if not 0.0 <= self.compact_threshold <= 1.0:
            raise ValueError("compact_threshold must lie in [0, 1]")

    @property
    def cap(self) -> int:
        if self.max_cosets is not None:
            return self.max_cosets
        env = os.environ.get("CACTUS_MAX_COSETS")
        return int(env) if env else DEFAULT_MAX_COSETS


@dataclass
class CosetTable:
    generators: tuple[int, ...]
    index: int
    action: np.ndarray          # (index, ngens): coset -> coset under g
    inverse_action: np.ndarray  # (index, ngens): coset -> coset under g^-1
    status: str
    stats: dict = field(default_factory=dict)

    def action_of(self, g: int) -> tuple[np.ndarray, np.ndarray]:
        c = self.generators.index(g)
        return self.action[:, c], self.inverse_action[:, c]

    def trace(self, w: Word, start: int = 0) -> int:
        col = {g: i for i, g in enumerate(self.generators)}
        c = start
        for g, s in w:
            c = int((self.action if s == 1 else self.inverse_action)[c, col[g]])
        return c

    def to_csv(self) -> str:
        """Rows are cosets (1-based); columns are generator then inverse images."""
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        head = ["coset"]
        for g in self.generators:
            head += [f"g{g}", f"g{g}^-1"]
        wr.writerow(head)
        for c in range(self.index):
            row = [c + 1]
            for j in range(len(self.generators)):
                row += [int(self.action[c, j]) + 1, int(self.inverse_action[c, j]) + 1]
            wr.writerow(row)
        return buf.getvalue()


# -- kernels ------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _rep(p, k):
    r = k
    while p[r] != r:
        r = p[r]
    while p[k] != r:
        nxt = p[k]
        p[k] = r
        k = nxt
    return r


@njit(cache=True, nogil=True)
def _merge(p, q, qlen, a, b):
    a = _rep(p, a)
    b = _rep(p, b)
    if a != b:
        if a > b:
            a, b = b, a
        p[b] = a
        q[qlen] = b
        qlen += 1
    return qlen


@njit(cache=True, nogil=True)
def _push(ded, st, a, x):
    if st[FELSCH] == 0:
        return
    if st[DLEN] < ded.shape[0]:
        ded[st[DLEN], 0] = a
        ded[st[DLEN], 1] = x
        st[DLEN] += 1
    else:
        st[DOVER] = 1


@njit(cache=True, nogil=True)
def _coincidence(tab, p, q, ded, st, a, b):
    qlen = _merge(p, q, 0, a, b)
    ncols = tab.shape[1]
    i = 0
    while i < qlen:
        g = q[i]
        i += 1
        for x in range(ncols):
            d = tab[g, x]
            if d < 0:
                continue
            xi = x ^ 1
            tab[d, xi] = -1
            m = _rep(p, g)
            v = _rep(p, d)
            if tab[m, x] >= 0:
                qlen = _merge(p, q, qlen, v, tab[m, x])
            elif tab[v, xi] >= 0:
                qlen = _merge(p, q, qlen, m, tab[v, xi])
            else:
                tab[m, x] = v
                tab[v, xi] = m
                _push(ded, st, m, x)
    st[NDEAD] += qlen
    st[LIVE] -= qlen


@njit(cache=True, nogil=True)
def _define(tab, p, ded, st, a, x):
    b = st[N]
    st[N] = b + 1
    st[NDEF] += 1
    st[LIVE] += 1
    if st[LIVE] > st[MAXLIVE]:
        st[MAXLIVE] = st[LIVE]
    p[b] = b
    tab[b, :] = -1
    tab[a, x] = b
    tab[b, x ^ 1] = a
    _push(ded, st, a, x)
    return b


@njit(cache=True, nogil=True)
def _scan(tab, p, q, ded, st, a, w, fill):
    """Trace ``w`` from ``a`` forwards and backwards; fill gaps if asked."""
    f = a
    b = a
    i = 0
    j = w.shape[0] - 1
    while True:
        while i <= j and tab[f, w[i]] >= 0:
            f = tab[f, w[i]]
            i += 1
        if i > j:
            if f != a:
                _coincidence(tab, p, q, ded, st, f, a)
            return
        while j >= i and tab[b, w[j] ^ 1] >= 0:
            b = tab[b, w[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(tab, p, q, ded, st, f, b)
            return
        if j == i:
            tab[f, w[i]] = b
            tab[b, w[i] ^ 1] = f
            _push(ded, st, f, w[i])
            return
        if not fill:
            return
        _define(tab, p, ded, st, f, w[i])


@njit(cache=True, nogil=True)
def _scan_all(tab, p, q, ded, st, rels, roff):
    """Lookahead: scan every relator at every live coset without defining."""
    for a in range(st[N]):
        if p[a] != a:
            continue
        for r in range(roff.shape[0] - 1):
            _scan(tab, p, q, ded, st, a, rels[roff[r]:roff[r + 1]], False)
            if p[a] != a:
                break


@njit(cache=True, nogil=True)
def _hlt(tab, p, q, ded, st, rels, roff, margin):
    ncols = tab.shape[1]
    while st[ALPHA] < st[N]:
        a = st[ALPHA]
        if p[a] != a:
            st[ALPHA] += 1
            continue
        if tab.shape[0] - st[N] < margin:
            return 1
        for r in range(roff.shape[0] - 1):
            _scan(tab, p, q, ded, st, a, rels[roff[r]:roff[r + 1]], True)
            if p[a] != a:
                break
        if p[a] == a:
            for x in range(ncols):
                if tab[a, x] < 0:
                    _define(tab, p, ded, st, a, x)
        st[ALPHA] += 1
    return 0


@njit(cache=True, nogil=True)
def _felsch(tab, p, q, ded, st, rels, roff, conj, coff, cstart):
    ncols = tab.shape[1]
    a = 0
    x = 0
    while True:
        while st[DLEN] > 0 or st[DOVER]:
            while st[DLEN] > 0:
                st[DLEN] -= 1
                b = ded[st[DLEN], 0]
                x = ded[st[DLEN], 1]
                if p[b] != b:
                    continue
                for c in range(cstart[x], cstart[x + 1]):
                    _scan(tab, p, q, ded, st, b, conj[coff[c]:coff[c + 1]], False)
                    if p[b] != b:
                        break
            if st[DOVER]:
                st[DOVER] = 0
                _scan_all(tab, p, q, ded, st, rels, roff)
        found = False
        while st[ALPHA] < st[N]:
            a = st[ALPHA]
            if p[a] == a:
                for x in range(ncols):
                    if tab[a, x] < 0:
                        found = True
                        break
            if found:
                break
            st[ALPHA] += 1
        if not found:
            # confirm closure; any new deduction restarts the loop
            before = st[NDEAD]
            st[DOVER] = 0
            _scan_all(tab, p, q, ded, st, rels, roff)
            if st[NDEAD] == before and st[DLEN] == 0:
                return 0
            st[ALPHA] = 0
            continue
        if st[N] >= tab.shape[0]:
            return 1
        _define(tab, p, ded, st, a, x)


@njit(cache=True, nogil=True)
def _compact(tab, p, st):
    """Renumber live cosets 0..L-1 in order; returns the new scan position."""
    n = st[N]
    newnum = np.full(n, -1, np.int32)
    k = 0
    alpha = st[ALPHA]
    new_alpha = -1
    for a in range(n):
        if a == alpha:
            new_alpha = k
        if p[a] == a:
            newnum[a] = k
            k += 1
    if new_alpha < 0:
        new_alpha = k
    ncols = tab.shape[1]
    for a in range(n):
        if p[a] != a:
            continue
        b = newnum[a]
        for x in range(ncols):
            t = tab[a, x]
            tab[b, x] = newnum[t] if t >= 0 else -1
    for a in range(k):
        p[a] = a
    st[N] = k
    st[ALPHA] = new_alpha
    st[LIVE] = k


@njit(cache=True, nogil=True)
def _standardize(tab, p, n):
    """Breadth-first renumbering of the live cosets from coset 0."""
    ncols = tab.shape[1]
    order = np.empty(n, np.int32)
    newnum = np.full(n, -1, np.int32)
    order[0] = 0
    newnum[0] = 0
    k = 1
    i = 0
    while i < k:
        c = order[i]
        i += 1
        for x in range(ncols):
            d = tab[c, x]
            if newnum[d] < 0:
                newnum[d] = k
                order[k] = d
                k += 1
    out = np.empty((k, ncols), np.int32)
    for j in range(k):
        c = order[j]
        for x in range(ncols):
            out[j, x] = newnum[tab[c, x]]
    return out


# -- driver -------------------------------------------------------------------

def _encode(words: Sequence[Word], col: dict[int, int]) -> tuple[np.ndarray, np.ndarray]:
    flat: list[int] = []
    off = [0]
    for w in words:
        for g, s in w:
            flat.append(2 * col[g] + (0 if s == 1 else 1))
        off.append(len(flat))
    return np.array(flat, np.int32), np.array(off, np.int64)


def _conjugates(words: Sequence[Word], col: dict[int, int], ncols: int):
    """All cyclic conjugates of the relators and their inverses, bucketed by first column."""
    seen = set()
    buckets: list[list[tuple[int, ...]]] = [[] for _ in range(ncols)]
    for w in words:
        for v in (w, w.inverse()):
            cols = tuple(2 * col[g] + (0 if s == 1 else 1) for g, s in v)
            for i in range(len(cols)):
                c = cols[i:] + cols[:i]
                if c not in seen:
                    seen.add(c)
                    buckets[c[0]].append(c)
    flat: list[int] = []
    off = [0]
    start = [0]
    for b in buckets:
        for c in b:
            flat.extend(c)
            off.append(len(flat))
        start.append(len(off) - 1)
    return np.array(flat, np.int32), np.array(off, np.int64), np.array(start, np.int64)


def todd_coxeter(P: Presentation, subgroup_gens: Sequence[Word] = (),
                 cfg: EnumConfig | None = None) -> CosetTable:
    cfg = cfg or EnumConfig()
    cap = cfg.cap
    gens = tuple(P.generators)
    col = {g: i for i, g in enumerate(gens)}
    ncols = 2 * len(gens)
    relators = sorted((w for w in P.relators if len(w)), key=len)
    rels, roff = _encode(relators, col)
    subs, soff = _encode([w for w in subgroup_gens if len(w)], col)
    margin = int(rels.shape[0]) + ncols + 1

    t0 = time.perf_counter()
    size = max(1, min(cap, max(cfg.initial_size, 2 * (margin + len(subs)))))
    tab = np.full((size, ncols), -1, np.int32)
    p = np.arange(size, dtype=np.int32)
    q = np.empty(size, np.int32)
    ded = np.empty((cfg.deduction_stack, 2), np.int32)
    st = np.zeros(9, np.int64)
    st[N] = 1
    st[LIVE] = st[MAXLIVE] = 1
    st[FELSCH] = 1 if cfg.strategy == "felsch" else 0
    if cfg.strategy == "felsch":
        conj, coff, cstart = _conjugates(relators, col, ncols)

    def stats(status):
        return {
            "strategy": cfg.strategy, "status": status, "max_cosets": cap,
            "live": int(st[LIVE]), "defined": int(st[NDEF]) + 1,
            "deleted": int(st[NDEAD]), "max_live": int(st[MAXLIVE]),
            "seconds": round(time.perf_counter() - t0, 6),
        }

    def capped():
        idx = int(st[LIVE])
        empty = np.zeros((0, len(gens)), np.int32)
        return CosetTable(gens, idx, empty, empty, "capped", stats("capped"))

    if len(subs) and len(subs) + 1 > size:
        return capped()
    for k in range(len(soff) - 1):
        _scan(tab, p, q, ded, st, 0, subs[soff[k]:soff[k + 1]], True)

    while True:
        if cfg.strategy == "hlt":
            code = _hlt(tab, p, q, ded, st, rels, roff, margin)
        else:
            code = _felsch(tab, p, q, ded, st, rels, roff, conj, coff, cstart)
        if code == 0:
            break
        # out of room: collect coincidences, compact, then grow if still tight
        if cfg.strategy == "hlt":
            _scan_all(tab, p, q, ded, st, rels, roff)
        need = margin if cfg.strategy == "hlt" else 1
        if st[N] - st[LIVE] > cfg.compact_threshold * st[N] or tab.shape[0] - st[N] < need:
            _compact(tab, p, st)
        if tab.shape[0] - st[N] >= max(need, cfg.compact_threshold * tab.shape[0]):
            continue
        if tab.shape[0] >= cap:
            if tab.shape[0] - st[N] >= need:
                continue
            return capped()
        new = min(cap, 2 * tab.shape[0])
        grown = np.full((new, ncols), -1, np.int32)
        grown[:tab.shape[0]] = tab
        tab = grown
        p = np.concatenate([p, np.arange(len(p), new, dtype=np.int32)])
        q = np.empty(new, np.int32)

    _compact(tab, p, st)
    action = _standardize(tab, p, int(st[N]))
    fwd = np.ascontiguousarray(action[:, 0::2])
    inv = np.ascontiguousarray(action[:, 1::2])
    table = CosetTable(gens, fwd.shape[0], fwd, inv, "complete", stats("complete"))
    verify_table(table, relators, subgroup_gens)
    return table


def verify_table(T: CosetTable, relators: Sequence[Word], subgroup_gens: Sequence[Word] = ()) -> None:
    """Raise if a complete table is not a valid coset action."""
    idx = np.arange(T.index)
    if T.action.min(initial=0) < 0 or T.inverse_action.min(initial=0) < 0:
        raise AssertionError("incomplete coset table")
    for c in range(len(T.generators)):
        if not np.array_equal(T.inverse_action[T.action[:, c], c], idx):
            raise AssertionError(f"columns of generator {T.generators[c]} are not inverse")
    col = {g: i for i, g in enumerate(T.generators)}
    for w in relators:
        cur = idx.copy()
        for g, s in w:
            cur = (T.action if s == 1 else T.inverse_action)[cur, col[g]]
        if not np.array_equal(cur, idx):
            raise AssertionError(f"relator {w} does not close")
    for w in subgroup_gens:
        if T.trace(w, 0) != 0:
            raise AssertionError(f"subgroup generator {w} does not fix coset 1")


def group_order(P: Presentation, cfg: EnumConfig | None = None) -> int:
    T = todd_coxeter(P, (), cfg)
    if T.status != "complete":
        raise CosetCapExceeded(T)
    return T.index
