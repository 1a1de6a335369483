import random
from itertools import product

import pytest

from modal_duality.core import BoxAlgebra, ElementMap, KripkeFrame, MRFrame, rel_from_pairs
from modal_duality.functors import G_obj, M_obj, N_obj, U_obj
from modal_duality.generators import (
    GenParams,
    atom_labels,
    enumerate_kripke_frames,
    enumerate_mrframes,
    enumerate_nframes,
    fixture,
    normal_algebras,
    random_mrframe,
)
from modal_duality.morphisms import (
    atom_maps,
    cba_hom_from_atom_map,
    compose,
    identity_map,
    is_cba_hom,
    is_kripke_hom,
    is_mkf_hom,
    is_mkf_iso,
    is_modal_hom,
    is_nfr_hom,
    is_nfr_iso,
    preimage_map,
    replay,
    replay_element_map,
)

import oracles as o


def maps(n1, n2):
    return product(range(n2), repeat=n1)


# -- Kripke frames -----------------------------------------------------------------

def test_kripke_examples():
    F1 = KripkeFrame.from_pairs(1, [(0, 0)])
    F2 = KripkeFrame.from_pairs(2, [(0, 0)])
    assert is_kripke_hom((0,), F1, F2)
    assert is_kripke_hom((0, 1), F2, F2)
    empty = KripkeFrame.from_pairs(1, [])
    rep = is_kripke_hom((0,), empty, F1)
    assert not rep.ok and rep.condition == "lift" and rep.witness == (0, 0)
    assert replay(rep, (0,), empty, F1)


def test_kripke_hom_matches_oracle():
    frames = list(enumerate_kripke_frames(2))
    for F1 in frames:
        for F2 in frames:
            for f in maps(F1.n, F2.n):
                rep = is_kripke_hom(f, F1, F2)
                want = o.kripke_hom(f, F1.n, o.rel_to_pairs(F1.n, F1.rel), F2.n, o.rel_to_pairs(F2.n, F2.rel))
                assert rep.ok == want
                if not rep.ok:
                    assert replay(rep, f, F1, F2)


def test_map_shape_is_validated():
    F = KripkeFrame.from_pairs(2, [])
    with pytest.raises(ValueError):
        is_kripke_hom((0,), F, F)
    with pytest.raises(ValueError):
        is_kripke_hom((0, 2), F, F)


# -- multi-relational frames -------------------------------------------------------

def test_fx3_fails_second_condition_with_named_partner():
    M1, M2, f = fixture("FX3_triple")
    rep = is_mkf_hom(f, M1, M2)
    R1 = rel_from_pairs(3, [(0, 1)])
    Q = rel_from_pairs(2, [(0, 0), (0, 1)])
    assert not rep.ok
    assert rep.condition == "cond2" and rep.witness == (0, R1)
    # the only candidate Q is ruled out because 0 Q 0 while nothing R1-reachable maps to 0
    assert rep.detail["candidates"] == [{"relation": [["0", "0"], ["0", "1"]], "successor": "0"}]
    assert Q in M2.rels
    assert replay(rep, f, M1, M2)


def test_mkf_identity_and_fx2():
    M1, M2, f = fixture("FX2_pair")
    assert is_mkf_hom(f, M1, M2)
    A, _, _ = fixture("FX3_triple")
    assert is_mkf_hom(identity_map(3), A, A)


def _small_frames():
    return list(enumerate_mrframes(GenParams(max_worlds=2, max_relations=2)))


def test_mkf_hom_matches_oracle_exhaustively_on_two_worlds():
    frames = _small_frames()
    sets = {M: o.frame_sets(M) for M in frames}
    for M1 in frames:
        for M2 in frames:
            for f in maps(M1.n, M2.n):
                rep = is_mkf_hom(f, M1, M2)
                assert rep.ok == o.mkf_hom(f, *sets[M1], *sets[M2])
                if not rep.ok:
                    assert replay(rep, f, M1, M2)


def test_mkf_hom_matches_oracle_on_seeded_three_world_frames():
    rng = random.Random(11)
    for _ in range(300):
        M1 = random_mrframe(rng, 3, 3)
        M2 = random_mrframe(rng, 3, 3)
        for f in maps(M1.n, M2.n):
            rep = is_mkf_hom(f, M1, M2)
            assert rep.ok == o.mkf_hom(f, *o.frame_sets(M1), *o.frame_sets(M2))
            if not rep.ok:
                assert replay(rep, f, M1, M2)


def test_mkf_iso():
    M1, _, f = fixture("FX3_triple")
    assert is_mkf_iso((0, 1, 2), M1, M1)
    rep = is_mkf_iso(f, M1, M1)
    assert not rep.ok and rep.condition == "bijective"


def test_bijective_hom_inverse_is_hom_exhaustively():
    # is_mkf_iso raises if the forward and inverse verdicts ever disagree
    frames = _small_frames()
    for M1 in frames:
        for M2 in frames:
            if M1.n == M2.n:
                for f in maps(M1.n, M2.n):
                    is_mkf_iso(f, M1, M2)


# -- fullness of N and of M --------------------------------------------------------

def test_N_is_full_on_two_worlds():
    frames = _small_frames()
    nb = {M: N_obj(M) for M in frames}
    for M1 in frames:
        for M2 in frames:
            for f in maps(M1.n, M2.n):
                assert is_mkf_hom(f, M1, M2).ok == is_nfr_hom(f, nb[M1], nb[M2]).ok


def test_N_is_full_on_seeded_three_world_frames():
    rng = random.Random(5)
    for _ in range(400):
        M1 = random_mrframe(rng, 3, 2)
        M2 = random_mrframe(rng, 3, 2)
        Z1, Z2 = N_obj(M1), N_obj(M2)
        for f in maps(M1.n, M2.n):
            assert is_mkf_hom(f, M1, M2).ok == is_nfr_hom(f, Z1, Z2).ok


def test_M_is_full_and_faithful():
    frames = list(enumerate_kripke_frames(2))
    rng = random.Random(3)
    three = [KripkeFrame(("0", "1", "2"), rng.getrandbits(9)) for _ in range(60)]
    pairs = [(a, b) for a in frames for b in frames] + [(a, b) for a in three for b in three[:20]]
    for F1, F2 in pairs:
        for f in maps(F1.n, F2.n):
            assert is_kripke_hom(f, F1, F2).ok == is_mkf_hom(f, M_obj(F1), M_obj(F2)).ok


# -- neighborhood frames -----------------------------------------------------------

def test_nfr_examples():
    M1, M2, f = fixture("FX3_triple")
    assert is_nfr_hom(f, U_obj(M1), U_obj(M2))
    L1, L2, g = fixture("FX2_pair")
    rep = is_nfr_hom(g, U_obj(L1), U_obj(L2))
    assert not rep.ok and rep.witness == (0, 0b11)
    assert rep.detail["preimage_in_source"] and not rep.detail["set_in_target"]
    assert replay(rep, g, U_obj(L1), U_obj(L2))
    Z = U_obj(M1)
    assert is_nfr_hom((0, 1, 2), Z, Z) and is_nfr_iso((0, 1, 2), Z, Z)


def test_nfr_hom_matches_oracle():
    frames = list(enumerate_nframes(2))
    rng = random.Random(9)
    targets = rng.sample(frames, 40)
    sets = {Z: o.nbhd_sets(Z) for Z in frames}
    for Z1 in frames:
        for Z2 in targets:
            for f in maps(Z1.n, Z2.n):
                rep = is_nfr_hom(f, Z1, Z2)
                assert rep.ok == o.nfr_hom(f, Z1.n, sets[Z1], Z2.n, sets[Z2])
                if not rep.ok:
                    assert replay(rep, f, Z1, Z2)


# -- Boolean and modal algebras ----------------------------------------------------

AB = BoxAlgebra.identity("ab")


def test_cba_examples():
    for n in (1, 2, 3):
        for m in (1, 2, 3):
            A, B = BoxAlgebra.identity(atom_labels(n)), BoxAlgebra.identity(atom_labels(m))
            for g in atom_maps(m, n):
                assert is_cba_hom(preimage_map(g, A, B))
    zero = ElementMap(AB, AB, (0, 0, 0, 0))
    rep = is_cba_hom(zero)
    assert not rep.ok and rep.condition == "one"
    plus_a = ElementMap(AB, AB, tuple(x | 1 for x in AB.elements()))
    rep = is_cba_hom(plus_a)
    assert not rep.ok
    assert plus_a(AB.complement(0)) != AB.complement(plus_a(0))
    assert replay_element_map(rep, plus_a)


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_cba_hom_matches_oracle_on_every_table(n, m):
    A, B = BoxAlgebra.identity(atom_labels(n)), BoxAlgebra.identity("xy"[:m])
    for table in product(range(B.size), repeat=A.size):
        h = ElementMap(A, B, table)
        rep = is_cba_hom(h)
        assert rep.ok == o.cba_hom(o.element_table(h), n, m)
        if not rep.ok:
            assert replay_element_map(rep, h)


def test_modal_examples():
    ident = ElementMap(AB, AB, tuple(AB.elements()))
    assert is_modal_hom(ident)
    M1, M2, f = fixture("FX3_triple")
    h = preimage_map(f, G_obj(M2), G_obj(M1))
    rep = is_modal_hom(h)
    assert not rep.ok and rep.condition == "box"
    assert replay_element_map(rep, h)
    L1, L2, g = fixture("FX2_pair")
    assert is_modal_hom(preimage_map(g, G_obj(L2), G_obj(L1)))


def test_modal_hom_matches_oracle():
    small = [A for n in (1, 2) for A in normal_algebras(n)]
    for A in small:
        for B in small:
            for g in atom_maps(B.n, A.n):
                h = preimage_map(g, A, B)
                t = o.element_table(h)
                ba, bb = o.algebra_sets(A), o.algebra_sets(B)
                want = all(t[ba[x]] == bb[t[x]] for x in t)
                assert is_modal_hom(h).ok == want


def test_hom_from_atom_map():
    C = BoxAlgebra.identity("c")
    assert cba_hom_from_atom_map((0, 1), AB, AB).table == (0, 1, 2, 3)
    h = cba_hom_from_atom_map((0,), AB, C)
    assert (h(0b01), h(0b10), h(0b11)) == (1, 0, 1)


def test_hom_from_atom_map_reverses_composition():
    A = BoxAlgebra.identity("ab")
    for g1 in atom_maps(2, 2):
        for g2 in atom_maps(2, 2):
            # g2 then g1 on atoms corresponds to hom(g1) then hom(g2) on elements
            left = cba_hom_from_atom_map(compose(g2, g1), A, A)
            right = cba_hom_from_atom_map(g1, A, A).then(cba_hom_from_atom_map(g2, A, A))
            assert left.table == right.table


def test_replay_rejects_passing_reports():
    M = MRFrame.from_pairs(1, [[(0, 0)]])
    with pytest.raises(ValueError):
        replay(is_mkf_hom((0,), M, M), (0,), M, M)
