"""Cactus group presentations, relator counting, truncation and abelianization.

Two presentations of the cactus group J_n are built here: the standard one on
the interval generators ``x[p,q]`` and the minimal one on ``g2..gn``
(``g_i`` = the interval ``[1,i]``).  Both only contain involutions, so
relators other than the generator squares are kept in involutive, cyclically
canonical form, and duplicates under that form are dropped.
"""
from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from .words import (
    Word,
    cyclic_canonical,
    erase,
    format_word,
    free_reduce,
    left_normed_commutator,
    pack_pair,
    parse_word,
    unpack_pair,
)

LABELS = (
    "square", "disjoint", "nested", "rel5", "rel6",
    "commuting", "triple", "equalizer", "truncation", "custom",
)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[int, ...]
    relators: tuple[Word, ...]
    labels: tuple[str, ...]
    family: str = "custom"
    involutive: bool = True
    style: str = "g"

    def __post_init__(self):
        if len(self.relators) != len(self.labels):
            raise ValueError("one label per relator")
        known = set(self.generators)
        for r in self.relators:
            if not r.generators() <= known:
                raise ValueError(f"relator {r} uses undeclared generators")
        if self.involutive:
            squares = {r.letters[0][0] for r in self.relators
                       if len(r) == 2 and r.letters[0] == r.letters[1]}
            if squares != known:
                raise ValueError("involutive presentation without all squares")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def relators_by_label(self, label: str) -> list[Word]:
        return [r for r, l in zip(self.relators, self.labels) if l == label]

    def canonical_forms(self) -> set[Word]:
        return {canonical_relator(r, self.involutive) for r in self.relators}

    def __str__(self) -> str:
        return to_gap(self)


def canonical_relator(w: Word, involutive: bool = True) -> Word:
    """Storage form of a relator.

    Generator squares are kept literally: in involutive mode they are what
    licenses dropping inverses everywhere else, and would otherwise reduce
    to the empty word.
    """
    if len(w) == 2 and w.letters[0][0] == w.letters[1][0] and w.letters[0][1] == w.letters[1][1]:
        return Word(((w.letters[0][0], 1),) * 2) if involutive else w
    return cyclic_canonical(w, involutive)


class _Builder:
    def __init__(self, generators: Iterable[int], involutive: bool = True):
        self.generators = tuple(generators)
        self.involutive = involutive
        self.relators: list[Word] = []
        self.labels: list[str] = []
        self.seen: set[Word] = set()

    def square(self, g: int):
        self.add(Word(((g, 1), (g, 1))), "square")

    def add(self, w: Word, label: str) -> bool:
        c = canonical_relator(w, self.involutive)
        if not c or c in self.seen:
            return False
        self.seen.add(c)
        self.relators.append(c)
        self.labels.append(label)
        return True

    def build(self, family: str, style: str = "g") -> Presentation:
        return Presentation(self.generators, tuple(self.relators), tuple(self.labels),
                            family, self.involutive, style)


def pivot_index(n: int) -> int:
    return (n + 1) // 2


def standard_cactus(n: int) -> Presentation:
    if n < 2:
        raise ValueError("cactus groups need n >= 2")
    intervals = [(p, q) for q in range(2, n + 1) for p in range(1, q)]
    b = _Builder(sorted(pack_pair(p, q) for p, q in intervals))
    x = {iv: pack_pair(*iv) for iv in intervals}
    for iv in intervals:
        b.square(x[iv])
    for (p, q), (r, s) in combinations(intervals, 2):
        if q < r or s < p:
            b.add(Word.from_gens([x[p, q], x[r, s]]) ** 2, "disjoint")
    for p, q in intervals:
        for r, s in intervals:
            if p <= r < s <= q and (r, s) != (p, q):
                mirror = x[p + q - s, p + q - r]
                w = Word.from_gens([x[p, q], x[r, s]]) * Word.gen(x[p, q], -1) * Word.gen(mirror, -1)
                b.add(w, "nested")
    return b.build(f"standard({n})", style="x")


def minimal_cactus(n: int) -> Presentation:
    if n < 2:
        raise ValueError("cactus groups need n >= 2")
    b = _Builder(range(2, n + 1))
    for i in range(2, n + 1):
        b.square(i)
    for k in range(4, n + 1):
        for i in range(2, k + 1):
            for j in range(i, k - i + 1):
                b.add(Word.from_gens([k, i, k, j]) ** 2, "rel5")
    for k in range(4, n + 1):
        for i in range(1, k):
            for j in range(2, k):
                if 3 <= i + j < k and i + j <= k - i:
                    m = i + j
                    lhs = Word.from_gens([k, m, j, m])
                    rhs = Word.from_gens([k - i, j, k - i, k])
                    b.add(lhs * rhs.inverse(), "rel6")
    return b.build(f"minimal({n})")


def _comm(*gens: int) -> Word:
    return left_normed_commutator([Word.gen(g) for g in gens])


def thmD_quotient(n: int, reading: str = "min") -> Presentation:
    """Presentation of J_n modulo the third lower-central term.

    ``reading`` selects how the commuting condition ``i < pivot`` is read
    for an unordered pair: ``"min"`` tests the smaller index, ``"max"`` the
    larger one.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if reading not in ("min", "max"):
        raise ValueError("reading is 'min' or 'max'")
    gens = range(2, n + 1)
    pivot = pivot_index(n)
    b = _Builder(gens)
    for i in gens:
        b.square(i)
    for i, j in combinations(gens, 2):
        key = i if reading == "min" else j
        if key < pivot or (j - i) % 2 == 0:
            b.add(_comm(i, j), "commuting")
    for i, j, k in product(gens, repeat=3):
        b.add(_comm(i, j, k), "triple")
    for i in gens:
        for j, k in product(range(i, n + 1), repeat=2):
            if j != k and (k - j) % 2 == 0:
                b.add(_comm(i, j) * _comm(i, k).inverse(), "equalizer")
    return b.build(f"thmD({n})" if reading == "min" else f"thmD({n},max)")


def class_truncate(P: Presentation, c: int) -> Presentation:
    """Add every left-normed commutator of weight ``c + 1`` in the generators."""
    if c < 1:
        raise ValueError("class must be >= 1")
    b = _Builder(P.generators, P.involutive)
    for r, l in zip(P.relators, P.labels):
        b.add(r, l)
    for tup in product(P.generators, repeat=c + 1):
        if tup[0] == tup[1]:
            continue
        w = _comm(*tup)
        if P.involutive:
            w = free_reduce(w, involutive=True)
        b.add(w, "truncation")
    return b.build(f"truncated({P.family},{c})", P.style)


# -- counts -----------------------------------------------------------------

@dataclass(frozen=True)
class CountReport:
    n: int
    G: int
    R: int
    G_min: int
    R_min: int
    enum_G: int
    enum_R: int
    enum_G_min: int
    enum_R_min: int

    @property
    def agrees(self) -> bool:
        return (self.G, self.R, self.G_min, self.R_min) == (
            self.enum_G, self.enum_R, self.enum_G_min, self.enum_R_min)


def closed_form_counts(n: int) -> tuple[int, int, int, int]:
    sign = (-1) ** n
    R = Fraction(6 * n**4 - 16 * n**3 + 48 * n**2 - 32 * n - 3 + 3 * sign, 96)
    Rt = Fraction(4 * n**3 - 18 * n**2 + 44 * n - 27 + 3 * sign, 24)
    if R.denominator != 1 or Rt.denominator != 1:
        raise ArithmeticError(f"closed forms not integral at n={n}")
    return comb(n, 2), int(R), n - 1, int(Rt)


def counts_closed_form(n: int) -> CountReport:
    if n < 2:
        raise ValueError("need n >= 2")
    std, mini = standard_cactus(n), minimal_cactus(n)
    return CountReport(n, *closed_form_counts(n),
                       std.ngens, len(std.relators), mini.ngens, len(mini.relators))


def counts_csv(reports: Sequence[CountReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "G", "R", "G_min", "R_min", "enum_G", "enum_R", "enum_G_min", "enum_R_min"])
    for r in reports:
        w.writerow([r.n, r.G, r.R, r.G_min, r.R_min, r.enum_G, r.enum_R, r.enum_G_min, r.enum_R_min])
    return buf.getvalue()


# -- translation --------------------------------------------------------------

def pq_to_min(p: int, q: int) -> Word:
    """Interval generator ``x[p,q]`` as a word in ``g2..gn``."""
    if not 1 <= p < q:
        raise ValueError(f"need 1 <= p < q, got ({p}, {q})")
    w = Word.from_gens([q, q - p + 1, q])
    return free_reduce(erase(w, (1,)), involutive=True)


def translate_standard(w: Word) -> Word:
    """Rewrite a word in the interval generators into ``g2..gn``."""
    out = []
    for g, s in w:
        img = pq_to_min(*unpack_pair(g))
        out.extend(img.letters if s == 1 else img.inverse().letters)
    return Word(tuple(out))


# -- integer linear algebra -------------------------------------------------

def exponent_matrix(P: Presentation) -> list[list[int]]:
    col = {g: i for i, g in enumerate(P.generators)}
    rows = []
    for r in P.relators:
        row = [0] * P.ngens
        for g, s in r:
            row[col[g]] += s
        rows.append(row)
    return rows


def smith_normal_form(M: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix.

    Returns ``min(rows, cols)`` non-negative diagonal entries, zeros last.
    """
    A = [list(map(int, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            piv = A[t][t]
            for i in range(t + 1, rows):
                if A[i][t]:
                    f = A[i][t] // piv
                    A[i] = [a - f * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    f = A[t][j] // piv
                    for row in A:
                        row[j] -= f * row[t]
                    if A[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if A[i][j] % piv), None)
                if bad is None:
                    break
                # fold the offending row in so a smaller remainder appears
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
            # move the smallest entry of row/column t onto the diagonal
            cand = [(abs(A[i][t]), i, t) for i in range(t, rows) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t, cols) if A[t][j]]
            _, pi, pj = min(cand)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    diag += [0] * (min(rows, cols) - len(diag))
    return diag


def abelianization(P: Presentation) -> tuple[int, ...]:
    """Abelian invariants, GAP style: torsion factors > 1, then a 0 per free rank."""
    M = exponent_matrix(P)
    if not M:
        return (0,) * P.ngens
    d = smith_normal_form(M)
    rank = sum(1 for x in d if x)
    torsion = tuple(x for x in d if x > 1)
    return torsion + (0,) * (P.ngens - rank)


# -- text / JSON formats ------------------------------------------------------

def to_gap(P: Presentation) -> str:
    gens = ",".join(format_word(Word.gen(g), P.style) for g in P.generators)
    rels = ", ".join(format_word(r, P.style, powers=True) for r in P.relators)
    return f"< {gens} | {rels} >"


def from_gap(text: str, involutive: bool | None = None, family: str = "custom") -> Presentation:
    m = re.fullmatch(r"\s*<(.*)\|(.*)>\s*", text, re.S)
    if not m:
        raise ValueError("expected '< gens | relators >'")
    gens = [parse_word(t) for t in _split_top_level(m[1])]
    if any(len(g) != 1 for g in gens):
        raise ValueError("generator list must contain single letters")
    generators = tuple(g.letters[0][0] for g in gens)
    style = "x" if "x[" in m[1] else "g"
    rels = _split_top_level(m[2])
    relators = [parse_word(r) for r in rels]
    if involutive is None:
        squares = {r.letters[0][0] for r in relators
                   if len(r) == 2 and r.letters[0] == r.letters[1]}
        involutive = squares == set(generators)
    return Presentation(generators, tuple(relators), ("custom",) * len(relators),
                        family, involutive, style)


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in (s.strip() for s in parts) if p]


def to_json(P: Presentation) -> str:
    return json.dumps({
        "ngens": P.ngens,
        "generators": list(P.generators),
        "relators": [[[g, s] for g, s in r] for r in P.relators],
        "labels": list(P.labels),
        "family": P.family,
        "involutive": P.involutive,
    })


def from_json(text: str) -> Presentation:
    d = json.loads(text)
    gens = tuple(d.get("generators") or range(1, d["ngens"] + 1))
    if len(gens) != d["ngens"]:
        raise ValueError("ngens does not match generator list")
    rels = tuple(Word(tuple((int(g), int(s)) for g, s in r)) for r in d["relators"])
    style = "x" if d["family"].startswith("standard") else "g"
    return Presentation(gens, rels, tuple(d["labels"]), d["family"],
                        d.get("involutive", True), style)


def presentation(ngens_or_gens, relators: Sequence[Word | str], involutive: bool | None = None,
                 family: str = "custom") -> Presentation:
    """Ad-hoc presentation from words or word strings (kept as given)."""
    gens = tuple(range(1, ngens_or_gens + 1)) if isinstance(ngens_or_gens, int) else tuple(ngens_or_gens)
    rels = tuple(parse_word(r) if isinstance(r, str) else r for r in relators)
    if involutive is None:
        squares = {r.letters[0][0] for r in rels if len(r) == 2 and r.letters[0] == r.letters[1]}
        involutive = squares == set(gens)
    return Presentation(gens, rels, ("custom",) * len(rels), family, involutive)
