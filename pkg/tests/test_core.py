import pytest

from modal_duality.core import (
    ALL,
    BoxAlgebra,
    CapError,
    ElementMap,
    Kappa,
    KripkeFrame,
    MRFrame,
    NFrame,
    check_kappa_dd,
    check_nfr,
    check_upward_closed,
    is_all_directed,
    is_normal,
    meet_all,
    rel_from_pairs,
    rel_pairs,
    sort_rels,
    subfamilies,
    total_rel,
    validate_algebra,
)
from modal_duality.functors import G_obj
from modal_duality.generators import (
    GenParams,
    all_algebras,
    enumerate_mrframes,
    enumerate_nframes,
    fixture,
    normal_algebras,
    principal_nframe,
)

import oracles as o


def test_relation_encoding_round_trip():
    pairs = [(0, 1), (2, 2), (1, 0)]
    rel = rel_from_pairs(3, pairs)
    assert rel_pairs(rel, 3) == sorted(pairs)
    assert o.rel_to_pairs(3, rel) == frozenset(pairs)
    with pytest.raises(IndexError):
        rel_from_pairs(2, [(0, 2)])


def test_relation_sets_are_deduplicated_and_order_free():
    a = MRFrame.from_pairs(2, [[(0, 1)], [(1, 1)], [(0, 1)]])
    b = MRFrame.from_pairs(2, [[(1, 1)], [(0, 1)]])
    assert a == b
    assert len(a.rels) == 2


def test_frames_reject_bad_input():
    with pytest.raises(ValueError):
        MRFrame(("0",), frozenset())
    with pytest.raises(ValueError):
        MRFrame(("0", "0"), frozenset({0}))
    with pytest.raises(CapError):
        MRFrame(tuple(str(i) for i in range(7)), frozenset({0}))
    with pytest.raises(IndexError):
        KripkeFrame(("0",), 0b10)
    with pytest.raises(ValueError):
        NFrame(("0", "1"), (frozenset(),))
    with pytest.raises(CapError):
        BoxAlgebra.identity("abcdef")
    with pytest.raises(ValueError):
        BoxAlgebra(("a",), (0,))


def test_kappa_parse_and_bounds():
    assert Kappa.parse("all") == ALL
    assert Kappa.parse(" 3 ") == Kappa(3)
    assert str(Kappa(2)) == "2" and str(ALL) == "all"
    assert Kappa(3).admits(2) and not Kappa(3).admits(3)
    assert Kappa(3).max_size(10) == 2 and ALL.max_size(10) == 10
    for bad in ("0", "-1", "many"):
        with pytest.raises(ValueError):
            Kappa.parse(bad)


# -- algebra classification ------------------------------------------------------

def test_identity_box_is_fully_additive():
    cls = validate_algebra(BoxAlgebra.identity("ab"))
    assert cls.box_zero_is_zero and cls.monotone and cls.binary_additive and cls.kappa_additive
    assert cls.normal


def test_fork_algebra_monotone_but_not_binary_additive():
    A = G_obj(fixture("FX4_fork"))
    assert A.box[0b010] == 0 and A.box[0b100] == 0 and A.box[0b110] == 0b001
    cls = validate_algebra(A)
    assert cls.monotone and not cls.binary_additive
    assert cls.witnesses["binary_additive"] == (0b010, 0b100)
    assert cls.as_dict(A.atoms)["witnesses"]["binary_additive"] == [["1"], ["2"]]


def test_box_zero_not_zero():
    A = BoxAlgebra(("a",), (0b1, 0b1))
    assert not validate_algebra(A).box_zero_is_zero
    assert not is_normal(A)


@pytest.mark.parametrize("n", [1, 2])
def test_classification_matches_oracle_on_every_table(n):
    for A in all_algebras(n):
        table = o.algebra_sets(A)
        for k in (1, 2, 3, None):
            cls = validate_algebra(A, Kappa(k))
            bound = None if k is None else k - 1
            assert cls.kappa_additive == o.additive_on(table, n, bound)
        cls = validate_algebra(A)
        assert cls.box_zero_is_zero == (table[frozenset()] == frozenset())
        assert cls.binary_additive == all(
            table[x | y] == table[x] | table[y] for x in table for y in table
        )
        monotone = all(table[x] <= table[y] for x in table for y in table if x <= y)
        assert cls.monotone == monotone


def test_normal_algebras_are_kappa_additive_for_every_kappa():
    for n in (1, 2, 3):
        for A in normal_algebras(n):
            for k in (1, 2, 3, 4, None):
                assert validate_algebra(A, Kappa(k)).kappa_additive


# -- frame directedness ------------------------------------------------------------

def test_fork_not_directed_with_witness():
    M = fixture("FX4_fork")
    rep = check_kappa_dd(M, ALL)
    assert not rep.ok
    (family,) = rep.witness
    assert set(family) == {rel_from_pairs(3, [(0, 1)]), rel_from_pairs(3, [(0, 2)])}


def test_finite_one_always_directed():
    for M in enumerate_mrframes(GenParams(max_worlds=2, max_relations=2)):
        assert check_kappa_dd(M, Kappa(1))


def test_fx3_m1_is_directed():
    M1, _, _ = fixture("FX3_triple")
    assert check_kappa_dd(M1, ALL)


def test_directedness_matches_oracle_and_meet_test():
    for M in enumerate_mrframes(GenParams(max_worlds=2, max_relations=3)):
        n, rels = o.frame_sets(M)
        for k in (2, 3, None):
            bound = None if k is None else k - 1
            assert check_kappa_dd(M, Kappa(k)).ok == o.kappa_dd(n, rels, bound)
        meet = meet_all(M.rels, total_rel(M.n))
        assert is_all_directed(M) == (meet in M.rels)


def test_directedness_all_agrees_with_meet_test_on_three_worlds():
    # single-pass comparison over the whole exhaustive range
    for M in enumerate_mrframes(GenParams(max_worlds=3, max_relations=2)):
        meet = meet_all(M.rels, total_rel(M.n))
        assert check_kappa_dd(M, ALL).ok == (meet in M.rels)


def test_kappa_monotonicity_for_frames_and_nframes():
    for M in enumerate_mrframes(GenParams(max_worlds=2, max_relations=3)):
        for k in (1, 2, 3):
            if check_kappa_dd(M, Kappa(k + 1)):
                assert check_kappa_dd(M, Kappa(k))
    for Z in enumerate_nframes(2):
        for k in (1, 2, 3):
            if check_nfr(Z, Kappa(k + 1)):
                assert check_nfr(Z, Kappa(k))


# -- neighborhood frames -----------------------------------------------------------

def test_singleton_empty_family_misses_whole_set():
    Z = NFrame(("0",), (frozenset({0}),))
    rep = check_nfr(Z)
    assert not rep.ok and rep.condition == "whole_set"
    up = check_upward_closed(Z)
    assert up.condition == "upward_closed" and up.witness == (0, 0, 1)


@pytest.mark.parametrize("k", [1, 2, 3, None])
def test_principal_filters_complete(k):
    for n in (1, 2, 3):
        assert check_nfr(principal_nframe(n), Kappa(k))


def test_two_world_example_complete():
    Z = NFrame.from_sets(2, [[{0}, {0, 1}], [{0, 1}]])
    assert check_nfr(Z, ALL)


def test_nfr_check_matches_oracle():
    for Z in enumerate_nframes(2):
        nb = o.nbhd_sets(Z)
        for k in (2, 3, None):
            bound = None if k is None else k - 1
            assert check_nfr(Z, Kappa(k)).ok == o.nfr_complete(Z.n, nb, bound)


def test_intersection_witness_is_a_real_family():
    Z = NFrame.from_sets(2, [[{0}, {1}, {0, 1}], [{0, 1}]])
    rep = check_nfr(Z, ALL)
    assert rep.condition == "intersection"
    c, fam = rep.witness
    meet = fam[0]
    for x in fam:
        meet &= x
    assert meet not in Z.nbhd[c] and all(x in Z.nbhd[c] for x in fam)


# -- small helpers -----------------------------------------------------------------

def test_subfamilies_counts():
    assert len(list(subfamilies([1, 2, 3], 3))) == 8
    assert len(list(subfamilies([1, 2, 3], 1))) == 4


def test_sort_rels_is_lexicographic_on_pairs():
    a = rel_from_pairs(2, [(0, 1)])
    b = rel_from_pairs(2, [(0, 0), (1, 1)])
    assert sort_rels({a, b}, 2) == (b, a)


def test_element_map_composition():
    A = BoxAlgebra.identity("ab")
    swap = ElementMap(A, A, (0, 2, 1, 3))
    assert swap.then(swap).table == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        ElementMap(A, A, (0, 1))
