import pytest
from hypothesis import given
from hypothesis import strategies as st

from cactus.cosets import group_order
from cactus.groups import Perm, evaluate, regular_representation, sym_generator
from cactus.cosets import todd_coxeter
from cactus.presentations import (
    Presentation,
    abelianization,
    class_truncate,
    closed_form_counts,
    counts_closed_form,
    counts_csv,
    exponent_matrix,
    from_gap,
    from_json,
    minimal_cactus,
    pivot_index,
    pq_to_min,
    presentation,
    smith_normal_form,
    standard_cactus,
    thmD_quotient,
    to_gap,
    to_json,
    translate_standard,
)
from cactus.words import Word, cyclic_canonical, free_reduce, pack_pair, unpack_pair

from oracles import closed_forms, snf_diagonal


@pytest.mark.parametrize("n", range(2, 13))
def test_counts_match_closed_forms(n):
    rep = counts_closed_form(n)
    assert rep.agrees
    assert (rep.G, rep.R, rep.G_min, rep.R_min) == closed_forms(n)


def test_count_examples():
    assert closed_form_counts(3) == (3, 4, 2, 2)
    assert closed_form_counts(4)[1] == 12
    csv_text = counts_csv([counts_closed_form(n) for n in (2, 3)])
    assert csv_text.splitlines()[0].startswith("n,G,R")
    assert len(csv_text.splitlines()) == 3


def test_small_presentations_by_hand():
    assert minimal_cactus(2).relators == (Word.from_gens([2, 2]),)
    P = minimal_cactus(3)
    assert P.generators == (2, 3) and len(P.relators) == 2
    S = standard_cactus(3)
    assert set(S.labels) == {"square", "nested"}
    # the two nested relations for n=3 are cyclic conjugates of each other
    assert len(S.relators_by_label("nested")) == 1


def test_presentation_rejects_bad_input():
    with pytest.raises(ValueError):
        minimal_cactus(1)
    with pytest.raises(ValueError):
        Presentation((1, 2), (Word.from_gens([1, 1]),), ("square",))
    with pytest.raises(ValueError):
        Presentation((1,), (Word.from_gens([2, 2]),), ("square",), involutive=False)
    with pytest.raises(ValueError):
        thmD_quotient(4, reading="middle")
    with pytest.raises(ValueError):
        class_truncate(minimal_cactus(3), 0)


@pytest.mark.parametrize("n", range(2, 9))
def test_relators_are_stored_canonically_without_duplicates(n):
    for P in (standard_cactus(n), minimal_cactus(n)):
        forms = [r if len(r) == 2 else cyclic_canonical(r) for r in P.relators]
        assert forms == list(P.relators)
        assert len(set(P.relators)) == len(P.relators)


@pytest.mark.parametrize("n", range(2, 9))
def test_abelianization_is_elementary_of_rank_n_minus_1(n):
    assert abelianization(minimal_cactus(n)) == (2,) * (n - 1)
    assert abelianization(standard_cactus(n)) == (2,) * (n - 1)


@pytest.mark.parametrize("n", range(2, 7))
def test_snf_agrees_with_sympy(n):
    for P in (minimal_cactus(n), standard_cactus(n)):
        M = exponent_matrix(P)
        assert smith_normal_form(M) == snf_diagonal(M)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4))
def test_snf_random_matrices(rows):
    assert smith_normal_form(rows) == snf_diagonal(rows)


def test_snf_examples():
    assert smith_normal_form([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form([[0, 0], [0, 0]]) == [0, 0]
    assert abelianization(presentation(2, [])) == (0, 0)


def test_pq_to_min_examples():
    # x[1,q] is g_q itself; x[p,q] is g_q g_(q-p+1) g_q
    assert pq_to_min(1, 4) == Word.gen(4)
    assert pq_to_min(2, 4) == Word.from_gens([4, 3, 4])
    with pytest.raises(ValueError):
        pq_to_min(3, 3)


@pytest.mark.parametrize("n", range(3, 8))
def test_translation_matches_symmetric_images(n):
    # the interval reversal s_pq equals the image of its translation
    imgs = {i: sym_generator(n, 1, i) for i in range(2, n + 1)}
    for q in range(2, n + 1):
        for p in range(1, q):
            assert evaluate(pq_to_min(p, q), imgs, Perm.identity(n)) == sym_generator(n, p, q)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_translated_standard_relators_hold_in_a_minimal_quotient(n):
    # translated relators of the standard presentation must be trivial in any
    # quotient of the minimal one; a class-3 truncation is a nonabelian check
    Q = class_truncate(minimal_cactus(n), 3)
    T = todd_coxeter(Q)
    G = regular_representation(T)
    imgs = dict(zip(Q.generators, G.gens))
    e = G.identity()
    for r in standard_cactus(n).relators:
        assert evaluate(translate_standard(r), imgs, e).is_identity()


@pytest.mark.parametrize("n", range(3, 8))
def test_translated_standard_relators_hold_in_symmetric_group(n):
    imgs = {i: sym_generator(n, 1, i) for i in range(2, n + 1)}
    for r in standard_cactus(n).relators:
        assert evaluate(translate_standard(r), imgs, Perm.identity(n)).is_identity()


@pytest.mark.parametrize("n, order", list(zip(range(3, 9), [8, 32, 64, 256, 512, 2048])))
def test_thmD_orders(n, order):
    assert group_order(thmD_quotient(n)) == order
    assert order == 2 ** (n // 2 + n - 1)


def test_pivot_index():
    assert [pivot_index(n) for n in range(3, 9)] == [2, 2, 3, 3, 4, 4]


@pytest.mark.parametrize("P", [minimal_cactus(4), standard_cactus(4), thmD_quotient(5),
                               class_truncate(minimal_cactus(3), 2)])
def test_gap_and_json_round_trip(P):
    Q = from_json(to_json(P))
    assert Q.generators == P.generators and Q.relators == P.relators and Q.labels == P.labels
    R = from_gap(to_gap(P))
    assert R.generators == P.generators
    assert [free_reduce(r) for r in R.relators] == [free_reduce(r) for r in P.relators]
    assert R.involutive == P.involutive


def test_gap_text_example():
    P = from_gap("< g2,g3 | g2^2, g3^2, (g2*g3)^3 >".replace("(g2*g3)^3", "g2*g3*g2*g3*g2*g3"))
    assert P.involutive and group_order(P) == 6
    with pytest.raises(ValueError):
        from_gap("g2, g3")


def test_pack_pair_labels_standard_generators():
    S = standard_cactus(4)
    pairs = sorted(unpack_pair(g) for g in S.generators)
    assert pairs == sorted((p, q) for q in range(2, 5) for p in range(1, q))
    assert pack_pair(1, 2) in S.generators
