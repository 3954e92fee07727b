"""Free-group words over integer generator indices.

A word is a flat tuple of letters ``(gen, sign)`` with ``gen >= 1`` and
``sign`` in ``{+1, -1}``.  Two reduction modes are supported: plain free
reduction, and *involutive* reduction, where every generator is its own
inverse (all signs collapse to ``+1`` and equal neighbours cancel).

Generator ``1`` is special for the minimal cactus presentations: there it
stands for the identity, and :func:`erase` removes it.

Text syntax: ``g4*g2*g4^-1`` for ordinary generators, ``x[p,q]`` for the
interval generators of the standard cactus presentation, ``1`` for the
empty word.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Iterable, Iterator, Sequence

Letter = tuple[int, int]


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for g, s in self.letters:
            if g < 1 or s not in (1, -1):
                raise ValueError(f"bad letter {(g, s)!r}")

    @classmethod
    def gen(cls, g: int, sign: int = 1) -> "Word":
        return cls(((g, sign),))

    @classmethod
    def from_gens(cls, gens: Iterable[int]) -> "Word":
        """Positive word ``g_{i1} g_{i2} ...``."""
        return cls(tuple((g, 1) for g in gens))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** -k
        return Word(self.letters * k)

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def gens(self) -> tuple[int, ...]:
        """Generator indices in order, signs dropped."""
        return tuple(g for g, _ in self.letters)

    def __str__(self) -> str:
        return format_word(self)


IDENTITY = Word()


def free_reduce(w: Word, involutive: bool = False) -> Word:
    out: list[Letter] = []
    if involutive:
        for g, _ in w.letters:
            if out and out[-1][0] == g:
                out.pop()
            else:
                out.append((g, 1))
    else:
        for g, s in w.letters:
            if out and out[-1][0] == g and out[-1][1] == -s:
                out.pop()
            else:
                out.append((g, s))
    return Word(tuple(out))


def cyclic_reduce(w: Word, involutive: bool = False) -> Word:
    """Free reduction followed by stripping cancelling first/last letters."""
    letters = free_reduce(w, involutive).letters
    i, j = 0, len(letters) - 1
    while i < j:
        (g, s), (h, t) = letters[i], letters[j]
        if g != h or (not involutive and s != -t):
            break
        i += 1
        j -= 1
    return Word(letters[i:j + 1])


def erase(w: Word, gens: Iterable[int] = (1,)) -> Word:
    drop = set(gens)
    return Word(tuple(l for l in w.letters if l[0] not in drop))


def shift(w: Word, offset: int) -> Word:
    """Add ``offset`` to every generator index.  Indices must stay >= 1."""
    return Word(tuple((g + offset, s) for g, s in w.letters))


def substitute(w: Word, images: dict[int, Word]) -> Word:
    """Replace each generator by its image word (inverted for negative letters)."""
    out: list[Letter] = []
    for g, s in w.letters:
        img = images[g]
        out.extend(img.letters if s == 1 else img.inverse().letters)
    return Word(tuple(out))


def commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x^-1 y^-1 x y``, freely reduced."""
    return free_reduce(x.inverse() * y.inverse() * x * y)


def left_normed_commutator(gens: Sequence[Word]) -> Word:
    if len(gens) < 2:
        raise ValueError("a commutator needs at least two entries")
    acc = gens[0]
    for g in gens[1:]:
        acc = commutator(acc, g)
    return acc


def cyclic_canonical(w: Word, involutive: bool = True) -> Word:
    """Least cyclic rotation of ``w`` or ``w^-1`` after cyclic reduction.

    Letters compare by generator, a positive letter before its inverse.  Two
    relators define the same relation (up to conjugation and inversion)
    exactly when their canonical forms agree.
    """
    base = cyclic_reduce(w, involutive).letters
    if not base:
        return IDENTITY
    codes = tuple(2 * g + (s < 0) for g, s in base)
    if involutive:
        inv = codes[::-1]
    else:
        inv = tuple(c ^ 1 for c in reversed(codes))
    best = min(seq[i:] + seq[:i] for seq in (codes, inv) for i in range(len(codes)))
    return Word(tuple((c >> 1, -1 if c & 1 else 1) for c in best))


# -- Hall basic commutators -------------------------------------------------

def basic_commutator_trees(k: int, weight: int) -> list[list]:
    """Basic commutators of weights 1..weight over generators 1..k.

    Returns one list per weight; entries are nested tuples ``(left, right)``
    with generator indices as leaves.  The global order is weight-major, and
    within a weight lexicographic in the positions of ``(left, right)``.
    """
    if k < 1 or weight < 1:
        raise ValueError("need k >= 1 and weight >= 1")
    by_weight: list[list] = [[], list(range(1, k + 1))]
    order: list = list(by_weight[1])
    pos = {b: i for i, b in enumerate(order)}
    for w in range(2, weight + 1):
        layer = []
        for wi in range(1, w):
            wj = w - wi
            for bi in by_weight[wi]:
                for bj in by_weight[wj]:
                    if pos[bi] <= pos[bj]:
                        continue
                    if isinstance(bi, tuple) and pos[bj] < pos[bi[1]]:
                        continue
                    layer.append((pos[bi], pos[bj], (bi, bj)))
        layer.sort(key=lambda t: (t[0], t[1]))
        trees = [t[2] for t in layer]
        for t in trees:
            pos[t] = len(order)
            order.append(t)
        by_weight.append(trees)
    return by_weight[1:]


def tree_to_word(tree) -> Word:
    if isinstance(tree, int):
        return Word.gen(tree)
    return commutator(tree_to_word(tree[0]), tree_to_word(tree[1]))


def hall_basic_commutators(k: int, w: int) -> list[Word]:
    return [tree_to_word(t) for t in basic_commutator_trees(k, w)[w - 1]]


# -- text syntax ------------------------------------------------------------

def pack_pair(p: int, q: int) -> int:
    """Bijective index for ``1 <= p < q``: colex order, independent of n."""
    if not 1 <= p < q:
        raise ValueError(f"need 1 <= p < q, got ({p}, {q})")
    return comb(q - 1, 2) + p


def unpack_pair(idx: int) -> tuple[int, int]:
    q = 2
    while comb(q, 2) < idx:
        q += 1
    return idx - comb(q - 1, 2), q


def _letter_name(g: int, style: str) -> str:
    if style == "x":
        p, q = unpack_pair(g)
        return f"x[{p},{q}]"
    return f"g{g}"


def format_word(w: Word, style: str = "g", powers: bool = False) -> str:
    """Print ``w``; with ``powers`` runs of equal letters become ``^k``."""
    if not w.letters:
        return "1"
    parts = []
    letters = w.letters
    i = 0
    while i < len(letters):
        g, s = letters[i]
        j = i + 1
        if powers:
            while j < len(letters) and letters[j] == (g, s):
                j += 1
        e = (j - i) * s
        name = _letter_name(g, style)
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return "*".join(parts)


_TOKEN = re.compile(r"\s*(?:g(\d+)|x\[\s*(\d+)\s*,\s*(\d+)\s*\])(?:\s*\^\s*(-?\d+))?\s*$")


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", "1"):
        return IDENTITY
    letters: list[Letter] = []
    for tok in text.split("*"):
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"cannot parse letter {tok!r} in {text!r}")
        g = int(m[1]) if m[1] else pack_pair(int(m[2]), int(m[3]))
        e = int(m[4]) if m[4] else 1
        if e == 0:
            continue
        letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
    return Word(tuple(letters))


# -- small helpers used by tests and the CLI --------------------------------

def all_words(alphabet: Sequence[int], length: int) -> Iterator[Word]:
    for gens in product(alphabet, repeat=length):
        yield Word.from_gens(gens)
