"""Concrete groups with decidable equality.

* :class:`Perm` -- permutations acting on the right (``i^(pq) = (i^p)^q``),
  stored 0-based; cycle notation is 1-based.
* :class:`DihedralElem` -- ``a^e (ab)^k`` normal forms in ``D_m`` or, with
  ``m=None``, in the infinite dihedral group ``Z2 * Z2``.
* :class:`FreeProdZ2Elem` -- reduced alternating words in ``Z2 * Z2``,
  optionally times a central ``Z2`` (the group ``G`` with ``a`` central).
* :class:`FiniteGroupTable` -- a finite group given by permutation generators.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .words import Word


class Perm:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int32)
        if arr.ndim != 1:
            raise ValueError("images must be one-dimensional")
        self.images = arr
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(np.arange(degree, dtype=np.int32))

    @classmethod
    def checked(cls, images) -> "Perm":
        p = cls(images)
        if not np.array_equal(np.sort(p.images), np.arange(p.degree)):
            raise ValueError("not a permutation")
        return p

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Perm":
        """Build from 1-based cycles."""
        img = np.arange(degree, dtype=np.int32)
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b - 1
        return cls.checked(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(other.images[self.images])

    def inverse(self) -> "Perm":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree, dtype=np.int32)
        return Perm(inv)

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        out = Perm.identity(self.degree)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def order(self) -> int:
        o = 1
        for cyc in self.cycles():
            o = o * len(cyc) // gcd(o, len(cyc))
        return o

    def support(self) -> np.ndarray:
        return np.nonzero(self.images != np.arange(self.degree))[0]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = int(self.images[i])
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = int(self.images[j])
            out.append(tuple(x + 1 for x in cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and np.array_equal(self.images, other.images)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images.tobytes())
        return self._hash

    def __repr__(self) -> str:
        return f"Perm({format_cycles(self)})"


def format_cycles(p: Perm) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    text = text.strip()
    if re.sub(_CYCLE, "", text).strip():
        raise ValueError(f"cannot parse permutation {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        pts = [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
        if pts:
            cycles.append(pts)
    top = max((max(c) for c in cycles), default=0)
    if degree is None:
        degree = top
    if top > degree:
        raise ValueError("point outside the declared degree")
    # compose cycles left to right
    out = Perm.identity(degree)
    for c in cycles:
        out = out * Perm.from_cycles([c], degree)
    return out


def sym_generator(n: int, p: int, q: int) -> Perm:
    """Reversal of the interval [p, q] of 1..n."""
    if not 1 <= p < q <= n:
        raise ValueError(f"need 1 <= p < q <= n, got ({n}, {p}, {q})")
    img = np.arange(n, dtype=np.int32)
    img[p - 1:q] = img[p - 1:q][::-1]
    return Perm(img)


# -- dihedral groups ----------------------------------------------------------

@dataclass(frozen=True)
class DihedralElem:
    """``a^reflection (ab)^shift`` in D_m (m finite) or Z2*Z2 (m None)."""
    m: int | None
    reflection: int = 0
    shift: int = 0

    def __post_init__(self):
        if self.m is not None and self.m < 1:
            raise ValueError("m must be >= 1 or None")
        if self.reflection not in (0, 1):
            raise ValueError("reflection flag is 0 or 1")
        if self.m is not None and not 0 <= self.shift < self.m:
            object.__setattr__(self, "shift", self.shift % self.m)

    def __mul__(self, other: "DihedralElem") -> "DihedralElem":
        return dihedral_mul(self, other)

    def inverse(self) -> "DihedralElem":
        if self.reflection:
            return self
        return DihedralElem(self.m, 0, -self.shift)

    def is_identity(self) -> bool:
        return not self.reflection and self.shift == 0

    def order(self) -> int | None:
        """Element order; None for elements of infinite order."""
        if self.reflection:
            return 2
        if self.shift == 0:
            return 1
        if self.m is None:
            return None
        return self.m // gcd(self.m, self.shift)

    def reduce(self, m: int) -> "DihedralElem":
        """Image under Z2*Z2 -> D_m (or D_m' -> D_m when m divides m')."""
        return DihedralElem(m, self.reflection, self.shift)

    def __str__(self) -> str:
        return f"a^{self.reflection}*(ab)^{self.shift}"


def dihedral_mul(x: DihedralElem, y: DihedralElem) -> DihedralElem:
    # a^e1 r^k1 a^e2 r^k2 = a^(e1+e2) r^(k2 + (-1)^e2 k1), since a r a = r^-1
    if x.m != y.m:
        raise ValueError(f"dihedral orders differ: {x.m} vs {y.m}")
    k = y.shift + (-x.shift if y.reflection else x.shift)
    return DihedralElem(x.m, x.reflection ^ y.reflection, k)


def dihedral_identity(m: int | None) -> DihedralElem:
    return DihedralElem(m, 0, 0)


def dihedral_a(m: int | None) -> DihedralElem:
    return DihedralElem(m, 1, 0)


def dihedral_b(m: int | None) -> DihedralElem:
    return DihedralElem(m, 1, 1)


def parse_dihedral(text: str, m: int | None) -> DihedralElem:
    mt = re.fullmatch(r"\s*a\^([01])\s*\*\s*\(ab\)\^(-?\d+)\s*", text)
    if not mt:
        raise ValueError(f"cannot parse dihedral element {text!r}")
    return DihedralElem(m, int(mt[1]), int(mt[2]))


# -- Z2 * Z2 as words, and (Z2 * Z2) x Z2 ---------------------------------------

@dataclass(frozen=True)
class FreeProdZ2Elem:
    """Reduced alternating word; ``central`` is None for plain Z2*Z2.

    Plain variant: letters over ``{a, b}``.  Product variant (``central`` is
    0 or 1): letters over ``{b, c}`` and ``a`` is the central involution.
    """
    word: tuple[str, ...] = ()
    central: int | None = None

    def __post_init__(self):
        for x, y in zip(self.word, self.word[1:]):
            if x == y:
                raise ValueError("word is not reduced")
        allowed = {"a", "b"} if self.central is None else {"b", "c"}
        if not set(self.word) <= allowed:
            raise ValueError(f"letters outside {sorted(allowed)}")

    def __mul__(self, other: "FreeProdZ2Elem") -> "FreeProdZ2Elem":
        if (self.central is None) != (other.central is None):
            raise ValueError("mixing Z2*Z2 and (Z2*Z2)xZ2 elements")
        w = list(self.word)
        for x in other.word:
            if w and w[-1] == x:
                w.pop()
            else:
                w.append(x)
        c = None if self.central is None else self.central ^ other.central
        return FreeProdZ2Elem(tuple(w), c)

    def inverse(self) -> "FreeProdZ2Elem":
        return FreeProdZ2Elem(tuple(reversed(self.word)), self.central)

    def is_identity(self) -> bool:
        return not self.word and not self.central

    def __str__(self) -> str:
        body = "*".join(self.word) or "1"
        if self.central:
            return "a*" + body if self.word else "a"
        return body


def freeprod_reduce(w: Iterable[str] | str, central: bool = False) -> FreeProdZ2Elem:
    """Normal form of a word in the letters a, b (and c when ``central``)."""
    letters = w.replace("*", "") if isinstance(w, str) else w
    flag = 0
    out: list[str] = []
    alphabet = {"a", "b", "c"} if central else {"a", "b"}
    for x in letters:
        if x not in alphabet:
            raise ValueError(f"unknown letter {x!r}")
        if central and x == "a":
            flag ^= 1
        elif out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return FreeProdZ2Elem(tuple(out), flag if central else None)


def freeprod_identity(central: bool = False) -> FreeProdZ2Elem:
    return FreeProdZ2Elem((), 0 if central else None)


def freeprod_to_dihedral(x: FreeProdZ2Elem) -> DihedralElem:
    """The isomorphism Z2*Z2 -> (a, b) normal forms."""
    if x.central is not None:
        raise ValueError("only plain Z2*Z2 words map to dihedral normal form")
    out = dihedral_identity(None)
    for ch in x.word:
        out = out * (dihedral_a(None) if ch == "a" else dihedral_b(None))
    return out


# -- finite groups given by permutation generators ----------------------------

class FiniteGroupTable:
    """A finite group as a list of permutation generators of common degree.

    ``regular`` marks a regular permutation representation (degree equals
    order, point 0 is the identity element); every subgroup then acts
    semiregularly, which :mod:`cactus.permstruct` exploits.
    """

    def __init__(self, gens: Sequence[Perm], order: int | None = None,
                 regular: bool = False, names: Sequence[str] | None = None):
        if not gens:
            raise ValueError("need at least one generator")
        degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators have different degrees")
        self.gens = list(gens)
        self.degree = degree
        self.regular = regular
        self.names = list(names) if names else [f"g{i + 1}" for i in range(len(gens))]
        if regular:
            if order is not None and order != degree:
                raise ValueError("a regular representation has degree = order")
            if len(orbit(0, self.gens)) != degree:
                raise ValueError("generators are not transitive")
            self.order = degree
        else:
            n = len(self.elements()) if order is None or order <= 1 << 16 else order
            if order is not None and n != order:
                raise ValueError(f"closure has order {n}, expected {order}")
            self.order = n
        self._elements = getattr(self, "_elements", None)

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def elements(self) -> list[Perm]:
        if getattr(self, "_elements", None) is None:
            self._elements = closure(self.gens)
        return self._elements

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroupTable(order={self.order}, degree={self.degree}, ngens={len(self.gens)})"


def orbit(point: int, gens: Sequence[Perm]) -> np.ndarray:
    """Orbit of ``point`` as a sorted array (vectorised breadth-first search)."""
    if not gens:
        return np.array([point])
    degree = gens[0].degree
    seen = np.zeros(degree, dtype=bool)
    seen[point] = True
    frontier = np.array([point], dtype=np.int32)
    while frontier.size:
        nxt = np.concatenate([g.images[frontier] for g in gens])
        nxt = np.unique(nxt[~seen[nxt]])
        seen[nxt] = True
        frontier = nxt
    return np.nonzero(seen)[0]


def closure(gens: Sequence[Perm], limit: int = 1 << 20) -> list[Perm]:
    """All elements of the generated group, identity first, in BFS order."""
    e = Perm.identity(gens[0].degree)
    seen = {e}
    out = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                seen.add(y)
                out.append(y)
                queue.append(y)
                if len(out) > limit:
                    raise OverflowError("group larger than closure limit")
    return out


def cyclic_group(m: int) -> FiniteGroupTable:
    gen = Perm(np.roll(np.arange(m, dtype=np.int32), -1)) if m > 1 else Perm.identity(1)
    return FiniteGroupTable([gen], order=m, names=["c"])


def dihedral_group(m: int) -> FiniteGroupTable:
    """D_m of order 2m, generated by the reflections a and b (via its regular action)."""
    elems = [DihedralElem(m, e, k) for e in (0, 1) for k in range(m)]
    return group_from_elements(elems, [dihedral_a(m), dihedral_b(m)], names=["a", "b"])


def group_from_elements(elements: Sequence, gens: Sequence, names=None) -> FiniteGroupTable:
    """Right regular representation of an abstract finite group (element 0 = identity)."""
    index = {x: i for i, x in enumerate(elements)}
    perms = [Perm([index[x * g] for x in elements]) for g in gens]
    return FiniteGroupTable(perms, order=len(elements), regular=True, names=names)


def wreath_group() -> FiniteGroupTable:
    """Z2^2 wr Z2 of order 32 on 8 points."""
    cyc = [
        [[1, 2], [3, 4]], [[1, 3], [2, 4]],
        [[5, 6], [7, 8]], [[5, 7], [6, 8]],
        [[1, 5], [2, 6], [3, 7], [4, 8]],
    ]
    return FiniteGroupTable([Perm.from_cycles(c, 8) for c in cyc], order=32,
                            names=["u1", "u2", "v1", "v2", "t"])


def direct_product(G: FiniteGroupTable, H: FiniteGroupTable) -> FiniteGroupTable:
    """G x H acting on the disjoint union of the two point sets."""
    dg, dh = G.degree, H.degree
    gens = [Perm(np.concatenate([g.images, np.arange(dg, dg + dh, dtype=np.int32)])) for g in G.gens]
    gens += [Perm(np.concatenate([np.arange(dg, dtype=np.int32), h.images + dg])) for h in H.gens]
    return FiniteGroupTable(gens, order=G.order * H.order, names=G.names + H.names)


def regular_representation(table) -> FiniteGroupTable:
    """Generators of a presentation acting on the cosets of the trivial subgroup."""
    if table.status != "complete":
        raise ValueError("coset table is not complete")
    gens = [Perm(table.action[:, c]) for c in range(table.action.shape[1])]
    return FiniteGroupTable(gens, order=table.index, regular=True,
                            names=[f"g{g}" for g in table.generators])


def evaluate(word: Word, images: dict, identity):
    """Product of generator images along ``word`` (inverses for negative letters)."""
    out = identity
    for g, s in word:
        x = images[g]
        out = out * (x if s == 1 else x.inverse())
    return out
