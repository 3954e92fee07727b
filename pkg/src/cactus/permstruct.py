"""Permutation-group structure: BSGS, normal closures, lower central series,
and presentation-versus-group isomorphism search.

Subgroups of a regular representation act semiregularly, so the stabiliser
of any point is trivial and a single level (the orbit of point 0 with its
Schreier vector) is already a complete BSGS.  ``schreier_sims(...,
semiregular=True)`` uses that shortcut; everything else goes through the
deterministic Schreier-Sims algorithm with the smallest moved point as the
next base point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cosets import EnumConfig, group_order
from .groups import FiniteGroupTable, Perm
from .presentations import Presentation


class NonElementaryLayer(ValueError):
    pass


class _Level:
    """Orbit of one base point with a Schreier vector over a generator list."""

    def __init__(self, point: int, gens: list[Perm], degree: int):
        self.point = point
        self.gens = gens
        self.rebuild(degree)

    def rebuild(self, degree: int):
        # via[x] = index of the generator that first reached x (-1 for the root)
        via = np.full(degree, -2, np.int64)
        via[self.point] = -1
        frontier = np.array([self.point], np.int64)
        while frontier.size:
            new = []
            for k, g in enumerate(self.gens):
                img = g.images[frontier]
                fresh = np.unique(img[via[img] == -2])
                via[fresh] = k
                # a point reached by two generators keeps the first one
                new.append(fresh)
            frontier = np.unique(np.concatenate(new)) if new else np.empty(0, np.int64)
        self.via = via
        self.orbit = np.nonzero(via != -2)[0]
        self._inv = [g.inverse() for g in self.gens]

    def __len__(self) -> int:
        return len(self.orbit)

    def contains_point(self, x: int) -> bool:
        return bool(self.via[x] != -2)

    def transversal(self, x: int) -> Perm:
        """An element u of the level group with point^u = x."""
        parts = []
        while x != self.point:
            k = int(self.via[x])
            parts.append(k)
            x = self._inv[k](x)
        u = Perm.identity(len(self.via))
        for k in reversed(parts):
            u = u * self.gens[k]
        return u


@dataclass
class BSGS:
    degree: int
    levels: list[_Level] = field(default_factory=list)
    strong_gens: list[Perm] = field(default_factory=list)
    semiregular: bool = False

    @property
    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    @property
    def transversal_sizes(self) -> list[int]:
        return [len(lv) for lv in self.levels]

    def order(self) -> int:
        out = 1
        for s in self.transversal_sizes:
            out *= s
        return out

    def sift(self, p: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip ``p`` through the levels; returns (residue, level reached)."""
        h = p
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            x = h(lv.point)
            if not lv.contains_point(x):
                return h, i
            h = h * lv.transversal(x).inverse()
        return h, len(self.levels)

    def contains(self, p: Perm) -> bool:
        if p.degree != self.degree:
            return False
        h, _ = self.sift(p)
        return h.is_identity()

    def generators(self) -> list[Perm]:
        return list(self.strong_gens)


def schreier_sims(gens: Sequence[Perm], degree: int | None = None,
                  semiregular: bool = False) -> BSGS:
    gens = [g for g in gens if not g.is_identity()]
    if degree is None:
        if not gens:
            raise ValueError("degree needed for the trivial group")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators have different degrees")
    if semiregular:
        G = BSGS(degree, [_Level(0, list(gens), degree)] if gens else [], list(gens), True)
        return G
    G = BSGS(degree)
    for g in gens:
        _add_strong(G, g)
    _complete(G)
    return G


def _fixes(g: Perm, pts: Sequence[int]) -> bool:
    return all(g(b) == b for b in pts)


def _add_strong(G: BSGS, g: Perm) -> int:
    """Append a strong generator, extending the base if it fixes all base points."""
    G.strong_gens.append(g)
    base = G.base
    if _fixes(g, base):
        pt = int(g.support()[0])
        G.levels.append(_Level(pt, [], G.degree))
        base.append(pt)
    first = len(base)
    for i in range(len(G.levels)):
        if _fixes(g, base[:i]):
            G.levels[i].gens.append(g)
            G.levels[i].rebuild(G.degree)
            first = min(first, i)
    return first


def _complete(G: BSGS):
    i = len(G.levels) - 1
    while i >= 0:
        lv = G.levels[i]
        restart = None
        for x in lv.orbit:
            u = lv.transversal(int(x))
            for s in lv.gens:
                y = s(int(x))
                h = u * s * lv.transversal(y).inverse()
                if h.is_identity():
                    continue
                res, j = G.sift(h, i + 1)
                if not res.is_identity():
                    _add_strong(G, res)
                    restart = min(j, len(G.levels) - 1)
                    break
            if restart is not None:
                break
        i = restart if restart is not None else i - 1


def subgroup(G: BSGS, gens: Sequence[Perm]) -> BSGS:
    return schreier_sims(gens, G.degree, G.semiregular)


def group_bsgs(H: FiniteGroupTable) -> BSGS:
    return schreier_sims(H.gens, H.degree, semiregular=H.regular)


def commutator(x: Perm, y: Perm) -> Perm:
    return x.inverse() * y.inverse() * x * y


def normal_closure(G: BSGS, seeds: Sequence[Perm]) -> BSGS:
    """Smallest subgroup containing ``seeds`` and normalised by G's generators."""
    N = schreier_sims([], G.degree, G.semiregular)
    pending = [s for s in seeds if not s.is_identity()]
    conj = [(g, g.inverse()) for g in G.strong_gens]
    while pending:
        h = pending.pop()
        if N.contains(h):
            continue
        N = schreier_sims(N.strong_gens + [h], G.degree, G.semiregular)
        for g, gi in conj:
            pending.append(gi * h * g)
    return N


@dataclass
class LcsReport:
    orders: list[int]
    ranks: list[int | None]
    elementary: list[bool]
    nilpotent: bool
    terms: list[BSGS] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {"orders": self.orders, "ranks": self.ranks,
                "elementary": self.elementary, "nilpotent": self.nilpotent}


def _log2(x: int) -> int | None:
    return x.bit_length() - 1 if x > 0 and x & (x - 1) == 0 else None


def lower_central_series(G: BSGS, max_terms: int | None = None) -> LcsReport:
    """Terms Gamma_1 = G, Gamma_{k+1} = [Gamma_k, G] until the chain stabilises."""
    terms = [G]
    while max_terms is None or len(terms) < max_terms:
        cur = terms[-1]
        if cur.order() == 1:
            break
        seeds = [commutator(h, g) for h in cur.strong_gens for g in G.strong_gens]
        nxt = normal_closure(G, seeds)
        if nxt.order() == cur.order():
            break
        terms.append(nxt)
    orders = [t.order() for t in terms]
    ranks, elem = [], []
    for k in range(len(terms) - 1):
        ranks.append(_log2(orders[k] // orders[k + 1]))
        elem.append(all(terms[k + 1].contains(h * h) for h in terms[k].strong_gens))
    return LcsReport(orders, ranks, elem, orders[-1] == 1, terms)


def layer_rank(G: BSGS, k: int, report: LcsReport | None = None) -> int:
    """Rank r with |Gamma_k / Gamma_{k+1}| = 2^r for an elementary abelian layer."""
    if k < 1:
        raise ValueError("layers are numbered from 1")
    rep = report or lower_central_series(G, max_terms=k + 1)
    if k > len(rep.ranks):
        return 0  # the series stabilised before layer k
    if not rep.elementary[k - 1] or rep.ranks[k - 1] is None:
        raise NonElementaryLayer(f"layer {k} is not an elementary abelian 2-group")
    return rep.ranks[k - 1]


# -- isomorphism --------------------------------------------------------------

@dataclass
class IsoResult:
    isomorphic: bool
    witness: dict[int, Perm] | None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.isomorphic


class RelatorSearch:
    """Depth-first search for generator images in a finite group.

    Each relator is checked as soon as all of its generators have images,
    which prunes most of the ``|H|^ngens`` assignments.
    """

    def __init__(self, P: Presentation, H: FiniteGroupTable):
        self.P = P
        self.elements = H.elements()
        index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        self.mul = np.empty((n, n), np.int32)
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                self.mul[i, j] = index[x * y]
        self.inv = np.argmin(self.mul, axis=1).astype(np.int32)
        self.gens = list(P.generators)
        pos = {g: i for i, g in enumerate(self.gens)}
        self.due: list[list[list[tuple[int, int]]]] = [[] for _ in self.gens]
        for r in P.relators:
            letters = [(pos[g], s) for g, s in r]
            if letters:
                self.due[max(i for i, _ in letters)].append(letters)
        self.nodes = 0

    def _holds(self, img, letters) -> bool:
        x = 0
        mul, inv = self.mul, self.inv
        for i, s in letters:
            x = mul[x, img[i] if s == 1 else inv[img[i]]]
        return x == 0

    def generated_order(self, img) -> int:
        seen = np.zeros(len(self.elements), bool)
        seen[0] = True
        frontier = np.array([0])
        cols = np.array(sorted(set(img)), np.int64)
        while frontier.size:
            nxt = self.mul[np.ix_(frontier, cols)].ravel()
            nxt = np.unique(nxt[~seen[nxt]])
            seen[nxt] = True
            frontier = nxt
        return int(seen.sum())

    def assignments(self, max_nodes: int | None = None):
        """Yield every image list (element indices) satisfying all relators."""
        k_max = len(self.gens)
        img = [0] * k_max
        stack = [(0, 0)]
        while stack:
            k, e = stack.pop()
            if e + 1 < len(self.elements):
                stack.append((k, e + 1))
            self.nodes += 1
            if max_nodes is not None and self.nodes > max_nodes:
                raise OverflowError(f"search exceeded {max_nodes} nodes")
            img[k] = e
            if not all(self._holds(img, r) for r in self.due[k]):
                continue
            if k + 1 == k_max:
                yield list(img)
            else:
                stack.append((k + 1, 0))

    def as_map(self, img) -> dict:
        return {g: self.elements[e] for g, e in zip(self.gens, img)}


def isomorphic(P: Presentation, H: FiniteGroupTable, cfg: EnumConfig | None = None,
               max_order: int = 256) -> IsoResult:
    """Search for a surjective hom from the group of P onto H of the same order."""
    order = group_order(P, cfg)
    if order != H.order:
        return IsoResult(False, None, f"orders differ: {order} vs {H.order}")
    if H.order > max_order:
        raise ValueError(f"target order {H.order} exceeds {max_order}")
    search = RelatorSearch(P, H)
    for img in search.assignments():
        if search.generated_order(img) == H.order:
            return IsoResult(True, search.as_map(img))
    return IsoResult(False, None, "no surjective assignment satisfies the relators")
