from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cactus.cosets import todd_coxeter
from cactus.groups import (
    Perm,
    closure,
    cyclic_group,
    dihedral_group,
    direct_product,
    evaluate,
    regular_representation,
    sym_generator,
    wreath_group,
)
from cactus.permstruct import (
    NonElementaryLayer,
    RelatorSearch,
    commutator,
    group_bsgs,
    isomorphic,
    layer_rank,
    lower_central_series,
    normal_closure,
    schreier_sims,
)
from cactus.presentations import class_truncate, minimal_cactus, presentation, thmD_quotient
from cactus.words import Word

from corpus import CORPUS
from oracles import brute_lcs_orders, brute_normal_closure, element_set

a, b = Word.gen(1), Word.gen(2)


def regular(P):
    return regular_representation(todd_coxeter(P))


def tuples(gens):
    return [tuple(int(x) for x in g.images) for g in gens]


def test_examples():
    assert group_bsgs(wreath_group()).order() == 32
    assert schreier_sims([sym_generator(4, 1, i) for i in (2, 3, 4)]).order() == 24
    assert schreier_sims([Perm.from_cycles([[1, 2]], 5)]).order() == 2
    assert schreier_sims([sym_generator(12, 1, i) for i in range(2, 13)]).order() == 479001600


SMALL = [(name, P) for name, P, order in CORPUS if order <= 512]


@pytest.mark.parametrize("name, P", SMALL, ids=[s[0] for s in SMALL])
def test_bsgs_order_matches_closure_on_corpus(name, P):
    G = regular(P)
    brute = len(element_set(tuples(G.gens), G.degree))
    assert schreier_sims(G.gens).order() == brute
    assert schreier_sims(G.gens, semiregular=True).order() == brute


perm_lists = st.integers(2, 7).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3))


@settings(max_examples=60, deadline=None)
@given(perm_lists)
def test_bsgs_random_groups(imgs):
    gens = [Perm(i) for i in imgs]
    n = gens[0].degree
    brute = element_set([tuple(i) for i in imgs], n)
    G = schreier_sims(gens, n)
    assert G.order() == len(brute)
    for g in G.strong_gens:
        assert G.contains(g)
    # membership agrees with the oracle on a probe outside and inside
    for t in list(brute)[:5]:
        assert G.contains(Perm(list(t)))
    if len(brute) < 120:
        for t in permutations(range(n)):
            if t not in brute:
                assert not G.contains(Perm(list(t)))
                break


def test_normal_closure_examples():
    D4 = group_bsgs(dihedral_group(4))
    ab = D4.strong_gens[0] * D4.strong_gens[1]
    assert normal_closure(D4, [ab * ab]).order() == 2
    assert normal_closure(D4, [Perm.identity(8)]).order() == 1


@pytest.mark.parametrize("i", range(5))
def test_normal_closure_matches_brute_force_in_wreath(i):
    W = wreath_group()
    G = group_bsgs(W)
    seed = W.gens[i]
    elems = element_set(tuples(W.gens), 8)
    brute = brute_normal_closure(elems, tuples([seed]), 8)
    assert normal_closure(G, [seed]).order() == len(brute)


def test_lcs_examples():
    assert lower_central_series(group_bsgs(dihedral_group(4))).orders == [8, 2, 1]
    assert lower_central_series(group_bsgs(dihedral_group(8))).orders == [16, 4, 2, 1]
    rep = lower_central_series(group_bsgs(wreath_group()))
    assert rep.orders == [32, 4, 1] and rep.ranks == [3, 2] and rep.nilpotent


def test_lcs_of_non_nilpotent_group():
    rep = lower_central_series(schreier_sims([sym_generator(4, 1, i) for i in (2, 3, 4)]))
    assert rep.orders == [24, 12] and not rep.nilpotent
    with pytest.raises(NonElementaryLayer):
        layer_rank(group_bsgs(cyclic_group(4)), 1)


LCS_CASES = [("D4", dihedral_group(4)), ("D6", dihedral_group(6)),
             ("wreath", wreath_group())] + [
    (name, regular(P)) for name, P, order in CORPUS if order <= 128]


@pytest.mark.parametrize("name, H", LCS_CASES, ids=[c[0] for c in LCS_CASES])
def test_lcs_matches_brute_force(name, H):
    rep = lower_central_series(group_bsgs(H))
    assert rep.orders == brute_lcs_orders(tuples(H.gens), H.degree)


@pytest.mark.parametrize("k", range(1, 7))
def test_dihedral_lcs_shadow(k):
    # in D_(2^(k-1)) the series has orders 2^k, 2^(k-2), ..., 2, 1
    m = 2 ** (k - 1)
    rep = lower_central_series(group_bsgs(dihedral_group(m)))
    assert rep.orders[-1] == 1
    assert len(rep.orders) == (k if k > 1 else 2)
    if k >= 3:
        assert rep.orders[k - 2] == 2


@pytest.mark.parametrize("n", range(3, 8))
def test_thmD_layer_ranks(n):
    G = group_bsgs(regular(thmD_quotient(n)))
    rep = lower_central_series(G)
    assert layer_rank(G, 1, rep) == n - 1
    assert layer_rank(G, 2, rep) == n // 2
    assert layer_rank(G, 3, rep) == 0
    assert all(rep.elementary)


@pytest.mark.parametrize("n", [4, 5])
def test_class_three_truncation_rank(n):
    G = group_bsgs(regular(class_truncate(minimal_cactus(n), 3)))
    assert layer_rank(G, 3) == 3


def test_layer_rank_validation():
    with pytest.raises(ValueError):
        layer_rank(group_bsgs(wreath_group()), 0)


def test_commutator_helper():
    x, y = sym_generator(3, 1, 2), sym_generator(3, 2, 3)
    assert commutator(x, y) == x.inverse() * y.inverse() * x * y
    assert commutator(x, x).is_identity()


def test_isomorphism_examples():
    r4 = isomorphic(thmD_quotient(4), wreath_group())
    assert r4 and r4.witness is not None
    r5 = isomorphic(thmD_quotient(5), direct_product(cyclic_group(2), wreath_group()))
    assert r5
    klein = presentation(2, [a * a, b * b, (a * b) ** 2])
    assert not isomorphic(klein, cyclic_group(4))
    assert not isomorphic(klein, wreath_group())  # order mismatch


def test_isomorphism_witness_is_checkable():
    P, W = thmD_quotient(4), wreath_group()
    res = isomorphic(P, W)
    for r in P.relators:
        assert evaluate(r, res.witness, W.identity()).is_identity()
    assert schreier_sims(list(res.witness.values()), 8).order() == 32


def test_isomorphism_symmetry_via_inverse_map():
    # invert the witness: express each wreath generator as a word in the
    # images and check the wreath relators hold in the quotient
    P, W = thmD_quotient(4), wreath_group()
    res = isomorphic(P, W)
    T = todd_coxeter(P)
    Q = regular_representation(T)
    qimg = dict(zip(P.generators, Q.gens))
    words = {W.identity(): Q.identity()}
    frontier = [W.identity()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in P.generators:
                y = x * res.witness[g]
                if y not in words:
                    words[y] = words[x] * qimg[g]
                    nxt.append(y)
        frontier = nxt
    assert len(words) == 32
    inv = [words[g] for g in W.gens]
    assert len(closure(inv)) == 32
    # the inverse map is multiplicative on the whole group
    for x in list(words)[:32]:
        for g in W.gens:
            assert words[x * g] == words[x] * words[g]


def test_relator_search_counts():
    S = RelatorSearch(minimal_cactus(3), cyclic_group(2))
    imgs = list(S.assignments())
    assert len(imgs) == 4
    assert sum(S.generated_order(i) == 2 for i in imgs) == 3
    with pytest.raises(OverflowError):
        list(RelatorSearch(minimal_cactus(4), dihedral_group(4)).assignments(max_nodes=5))
