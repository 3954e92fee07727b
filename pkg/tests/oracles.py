"""Independent, deliberately naive reference computations used by the tests."""
from __future__ import annotations

from itertools import product
from math import comb

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf


def mobius(n: int) -> int:
    res, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    return -res if m > 1 else res


def witt_formula(k: int, w: int) -> int:
    return sum(mobius(d) * k ** (w // d) for d in range(1, w + 1) if w % d == 0) // w


def lyndon_count(k: int, w: int) -> int:
    """Count aperiodic necklaces by brute force: words strictly smaller than all rotations."""
    count = 0
    for t in product(range(k), repeat=w):
        if all(t < t[i:] + t[:i] for i in range(1, w)):
            count += 1
    return count


def closed_forms(n: int) -> tuple[int, int, int, int]:
    s = (-1) ** n
    R = 6 * n**4 - 16 * n**3 + 48 * n**2 - 32 * n - 3 + 3 * s
    Rt = 4 * n**3 - 18 * n**2 + 44 * n - 27 + 3 * s
    assert R % 96 == 0 and Rt % 24 == 0
    return comb(n, 2), R // 96, n - 1, Rt // 24


def snf_diagonal(rows) -> list[int]:
    M = Matrix(rows)
    D = sympy_snf(M, domain=ZZ)
    return [abs(int(D[i, i])) for i in range(min(D.shape))]


# -- permutation groups as sets of image tuples -------------------------------

def compose(p, q):
    """Right action: apply p, then q."""
    return tuple(q[i] for i in p)


def inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def element_set(gens, degree):
    e = tuple(range(degree))
    seen = {e}
    stack = [e]
    while stack:
        x = stack.pop()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def comm(x, y):
    return compose(compose(compose(inverse(x), inverse(y)), x), y)


def subgroup_from(elems, degree):
    return element_set(list(elems), degree)


def brute_normal_closure(group, seeds, degree):
    conj = {compose(compose(inverse(g), s), g) for g in group for s in seeds}
    return subgroup_from(conj, degree)


def brute_lcs_orders(gens, degree) -> list[int]:
    G = element_set(gens, degree)
    terms = [G]
    while True:
        cur = terms[-1]
        nxt = subgroup_from({comm(h, g) for h in cur for g in G}, degree)
        if len(nxt) == len(cur):
            break
        terms.append(nxt)
        if len(nxt) == 1:
            break
    return [len(t) for t in terms]


# -- dihedral groups as integer matrices ----------------------------------------

def dihedral_matrix(reflection: int, shift: int, m: int | None):
    """a^e (ab)^k as an affine map x -> s*x + t on Z or Z/m, as the pair (s, t)."""
    # a: x -> -x, b: x -> 1 - x, so ab: x -> x + 1 under right action (apply a then b)
    s, t = 1, 0
    seq = (["a"] if reflection else []) + (["a", "b"] * shift if shift >= 0 else ["b", "a"] * (-shift))
    for ch in seq:
        # apply current map, then the letter
        if ch == "a":
            s, t = -s, -t
        else:
            s, t = -s, 1 - t
    if m is not None:
        t %= m
    return s, t


def affine_mul(x, y, m):
    (s1, t1), (s2, t2) = x, y
    t = s2 * t1 + t2
    return s1 * s2, t % m if m is not None else t
