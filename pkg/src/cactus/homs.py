"""Homomorphisms out of cactus presentations and their checkers."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, gcd
from typing import Any

from .groups import (
    DihedralElem,
    FiniteGroupTable,
    Perm,
    dihedral_a,
    dihedral_b,
    dihedral_identity,
    evaluate,
    format_cycles,
    freeprod_identity,
    freeprod_reduce,
    sym_generator,
)
from .permstruct import RelatorSearch, schreier_sims
from .presentations import Presentation, pivot_index, minimal_cactus, standard_cactus
from .words import IDENTITY, Word, cyclic_canonical, erase, format_word, free_reduce, shift, unpack_pair


@dataclass
class GroupHom:
    source: Presentation
    target: str
    images: dict[int, Any]
    identity: Any
    name: str = ""
    n: int | None = None
    checked: bool = False
    target_order: int | None = None  # None for infinite targets

    def __post_init__(self):
        if set(self.images) != set(self.source.generators):
            raise ValueError("one image per source generator is required")

    def __call__(self, w: Word):
        return evaluate(w, self.images, self.identity)


@dataclass
class CheckReport:
    passed: bool
    failures: list[tuple[Word, Any]] = field(default_factory=list)
    map: str = ""
    n: int | None = None

    def to_dict(self) -> dict:
        return {
            "map": self.map, "n": self.n, "passed": self.passed,
            "failures": [{"relator": format_word(r), "image": _fmt(x)} for r, x in self.failures],
        }


def _fmt(x) -> str:
    if isinstance(x, Perm):
        return format_cycles(x)
    if isinstance(x, Word):
        return format_word(x)
    return str(x)


def _is_identity(x) -> bool:
    if isinstance(x, Word):
        return not x
    return x.is_identity()


# -- named maps ---------------------------------------------------------------

def pi(n: int, presentation: str = "minimal") -> GroupHom:
    """J_n -> S_n sending each interval generator to the interval reversal."""
    if presentation == "minimal":
        P = minimal_cactus(n)
        images = {i: sym_generator(n, 1, i) for i in P.generators}
    elif presentation == "standard":
        P = standard_cactus(n)
        images = {g: sym_generator(n, *unpack_pair(g)) for g in P.generators}
    else:
        raise ValueError("presentation is 'minimal' or 'standard'")
    return GroupHom(P, f"symmetric({n})", images, Perm.identity(n), "pi", n,
                    target_order=factorial(n))


def phi_d4(n: int) -> GroupHom:
    if n < 3:
        raise ValueError("need n >= 3")
    P = minimal_cactus(n)
    piv = pivot_index(n)
    images = {}
    for i in P.generators:
        if i < piv:
            images[i] = dihedral_identity(4)
        else:
            images[i] = dihedral_a(4) if i % 2 == 0 else dihedral_b(4)
    return GroupHom(P, "dihedral(4)", images, dihedral_identity(4), "phi-d4", n, target_order=8)


def psi_d8(m: int, pivot: int | None = None) -> GroupHom:
    """J_m -> D_8: g_pivot -> a, g_i -> b for i > pivot of the other parity."""
    if m < 3:
        raise ValueError("need m >= 3")
    piv = pivot_index(m) if pivot is None else pivot
    P = minimal_cactus(m)
    images = {}
    for i in P.generators:
        if i == piv:
            images[i] = dihedral_a(8)
        elif i >= piv + 1 and (i - piv - 1) % 2 == 0:
            images[i] = dihedral_b(8)
        else:
            images[i] = dihedral_identity(8)
    return GroupHom(P, "dihedral(8)", images, dihedral_identity(8), "psi-d8", m, target_order=16)


def phi_inf(n: int, pivot: int | None = None) -> GroupHom:
    """J_n -> Z2*Z2: g_i -> a(ab)^(n-i) from the pivot on, 1 below it.

    The default pivot is floor((n+1)/2).  For even n that sends both g_n and
    g_(n/2) to reflections whose product has infinite order, so the relator
    (g_n g_(n/2))^4 fails; pivot n//2 + 1 avoids this and agrees with the
    default for odd n.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    P = minimal_cactus(n)
    piv = pivot_index(n) if pivot is None else pivot
    images = {i: DihedralElem(None, 1, n - i) if i >= piv else dihedral_identity(None)
              for i in P.generators}
    name = "phi-inf" if pivot is None else f"phi-inf(pivot={pivot})"
    return GroupHom(P, "infinite-dihedral", images, dihedral_identity(None), name, n)


def theta() -> GroupHom:
    """J_4 -> (Z2*Z2) x Z2 with g2 -> a (central), g3 -> b, g4 -> c."""
    P = minimal_cactus(4)
    images = {2: freeprod_reduce("a", central=True),
              3: freeprod_reduce("b", central=True),
              4: freeprod_reduce("c", central=True)}
    return GroupHom(P, "G", images, freeprod_identity(True), "theta", 4)


def lambda_(n: int) -> GroupHom:
    """J_n -> J_4 as words: g_i -> 1 for i <= n-3, else g_(i-n+4)."""
    if n < 4:
        raise ValueError("need n >= 4")
    P = minimal_cactus(n)
    images = {i: IDENTITY if i <= n - 3 else Word.gen(i - n + 4) for i in P.generators}
    return GroupHom(P, "J4-words", images, IDENTITY, "lambda", n)


def theta_lambda(n: int) -> GroupHom:
    lam, th = lambda_(n), theta()
    images = {i: th(w) for i, w in lam.images.items()}
    return GroupHom(lam.source, "G", images, freeprod_identity(True), "theta-lambda", n)


# -- checks -------------------------------------------------------------------

def hom_check(h: GroupHom) -> CheckReport:
    failures = []
    for r in h.source.relators:
        x = h(r)
        if not _is_identity(x):
            failures.append((r, x))
    rep = CheckReport(not failures, failures, h.name, h.n)
    h.checked = rep.passed
    return rep


def qn_image(w: Word) -> Word:
    """Shift generator indices down by one, drop the identity letter, reduce."""
    return free_reduce(erase(shift(w, -1)), involutive=True)


def qn_consequence_check(n: int) -> CheckReport:
    """Every relator of J_n maps under q_n to 1 or to a relator of J_(n-1)."""
    if n < 4:
        raise ValueError("need n >= 4")
    target = minimal_cactus(n - 1).canonical_forms()
    failures = []
    for r in minimal_cactus(n).relators:
        img = qn_image(r)
        if img and cyclic_canonical(img) not in target:
            failures.append((r, img))
    return CheckReport(not failures, failures, "qn", n)


def _closure_size(images, identity, limit: int) -> int:
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in images:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        return len(seen)
        frontier = nxt
    return len(seen)


def reflection_offsets(images) -> tuple[set[int], set[int]]:
    """Shifts of the reflections and of the nontrivial rotations among dihedral images."""
    refl = {x.shift for x in images if x.reflection}
    rot = {x.shift for x in images if not x.reflection and x.shift}
    return refl, rot


def surjectivity_check(h: GroupHom) -> bool:
    imgs = [x for x in h.images.values() if not _is_identity(x)]
    if h.target == "infinite-dihedral":
        refl, rot = reflection_offsets(imgs)
        if not refl:
            return False
        k0 = min(refl)
        d = 0
        for k in refl:
            d = gcd(d, k - k0)
        for t in rot:
            d = gcd(d, t)
        return d == 1
    if h.target_order is None:
        raise ValueError(f"surjectivity is not decided for target {h.target}")
    if not imgs:
        return h.target_order == 1
    if isinstance(imgs[0], Perm):
        return schreier_sims(imgs).order() == h.target_order
    return _closure_size(imgs, h.identity, h.target_order) == h.target_order


class NotAHomomorphism(ValueError):
    def __init__(self, msg: str, report: CheckReport | None = None):
        super().__init__(msg)
        self.report = report


def dihedral_factorization(n: int, m: int, pivot: int | None = None) -> GroupHom:
    """phi_inf followed by Z2*Z2 -> D_m; checked and surjective."""
    if m < 1:
        raise ValueError("need m >= 1")
    base = phi_inf(n, pivot)
    images = {g: x.reduce(m) for g, x in base.images.items()}
    h = GroupHom(base.source, f"dihedral({m})", images, dihedral_identity(m),
                 "dihedral-factorization", n, target_order=2 * m)
    rep = hom_check(h)
    if not rep.passed:
        r, x = rep.failures[0]
        raise NotAHomomorphism(f"map to D_{m} sends {format_word(r)} to {x}", rep)
    if not surjectivity_check(h):
        raise NotAHomomorphism(f"map onto D_{m} is not surjective", rep)
    return h


def table_hom(P: Presentation, H: FiniteGroupTable, images: dict[int, Perm], name: str = "") -> GroupHom:
    return GroupHom(P, "table", images, H.identity(), name, target_order=H.order)


def hom_count(P: Presentation, H: FiniteGroupTable, surjective_only: bool = False,
              max_nodes: int | None = 10_000_000) -> int:
    search = RelatorSearch(P, H)
    count = 0
    for img in search.assignments(max_nodes):
        if not surjective_only or search.generated_order(img) == H.order:
            count += 1
    return count


__all__ = [
    "CheckReport", "GroupHom", "NotAHomomorphism", "dihedral_factorization", "hom_check", "hom_count",
    "lambda_", "phi_d4", "phi_inf", "pi", "psi_d8", "qn_consequence_check", "qn_image",
    "surjectivity_check", "table_hom", "theta", "theta_lambda",
]
