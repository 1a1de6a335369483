"""Homomorphism validators for Kripke frames, multi-relational frames,
neighborhood frames, complete Boolean algebras and modal algebras.

Every validator scans in a fixed order (worlds by index, relations in
canonical order, subsets by mask value) and reports the first failure.
``replay`` re-checks a reported failure on its witness alone.
"""
from __future__ import annotations

from itertools import product
from typing import Sequence

from .core import (
    PASS,
    BoxAlgebra,
    ElementMap,
    KripkeFrame,
    MRFrame,
    NFrame,
    Report,
    join_all,
    mask_of,
    members,
    rel_pairs,
    rel_row,
    subset_labels,
)

WorldMap = Sequence[int]


def _check_map(f: WorldMap, n1: int, n2: int) -> tuple[int, ...]:
    f = tuple(f)
    if len(f) != n1:
        raise ValueError(f"map has {len(f)} entries for {n1} source worlds")
    for y in f:
        if not 0 <= y < n2:
            raise ValueError(f"map value {y} outside target world set of size {n2}")
    return f


def image(f: WorldMap, x: int) -> int:
    return mask_of(f[i] for i in members(x))


def preimage(f: WorldMap, y: int) -> int:
    return mask_of(i for i, fi in enumerate(f) if y >> fi & 1)


def _pairs_labels(rel: int, n: int, labels) -> list[list[str]]:
    return [[labels[i], labels[j]] for i, j in rel_pairs(rel, n)]


# -- Kripke frames -----------------------------------------------------------

def _kripke_forth(f, F1, F2, v, w) -> bool:
    return not (rel_row(F1.rel, F1.n, v) >> w & 1) or bool(rel_row(F2.rel, F2.n, f[v]) >> f[w] & 1)


def _kripke_lift(f, F1, F2, w, u) -> bool:
    if not rel_row(F2.rel, F2.n, f[w]) >> u & 1:
        return True
    return bool(image(f, rel_row(F1.rel, F1.n, w)) >> u & 1)


def is_kripke_hom(f: WorldMap, F1: KripkeFrame, F2: KripkeFrame) -> Report:
    f = _check_map(f, F1.n, F2.n)
    for v in range(F1.n):
        for w in range(F1.n):
            if not _kripke_forth(f, F1, F2, v, w):
                return Report(False, "forth", (v, w), {"pair": [F1.worlds[v], F1.worlds[w]]})
    for w in range(F1.n):
        for u in range(F2.n):
            if not _kripke_lift(f, F1, F2, w, u):
                return Report(False, "lift", (w, u), {"world": F1.worlds[w], "target": F2.worlds[u]})
    return PASS


# -- multi-relational frames -------------------------------------------------

def _forth_ok(f, n1, n2, x, r1, r2) -> bool:
    """Every R1-successor of x maps to an R2-successor of f(x)."""
    return image(f, rel_row(r1, n1, x)) & ~rel_row(r2, n2, f[x]) == 0


def _lift_ok(f, n1, n2, x, r1, r2) -> bool:
    """Every R2-successor of f(x) is the image of an R1-successor of x."""
    return rel_row(r2, n2, f[x]) & ~image(f, rel_row(r1, n1, x)) == 0


def _mkf_cond1(f, M1, M2, x, r2) -> bool:
    return any(_forth_ok(f, M1.n, M2.n, x, r1, r2) for r1 in M1.rels)


def _mkf_cond2(f, M1, M2, x, r1) -> bool:
    return any(_lift_ok(f, M1.n, M2.n, x, r1, r2) for r2 in M2.rels)


def is_mkf_hom(f: WorldMap, M1: MRFrame, M2: MRFrame) -> Report:
    """Both homomorphism conditions for multi-relational frames.

    The witness names the world and the relation that has no partner; the
    detail lists, for every candidate partner, the pair that rules it out.
    """
    f = _check_map(f, M1.n, M2.n)
    n1, n2 = M1.n, M2.n
    rels1, rels2 = M1.ordered_rels, M2.ordered_rels
    w1, w2 = M1.worlds, M2.worlds
    for x in range(n1):
        for r2 in rels2:
            if not _mkf_cond1(f, M1, M2, x, r2):
                blocked = []
                for r1 in rels1:
                    y = members(rel_row(r1, n1, x) & ~preimage(f, rel_row(r2, n2, f[x])))[0]
                    blocked.append({"relation": _pairs_labels(r1, n1, w1), "successor": w1[y]})
                return Report(
                    False,
                    "cond1",
                    (x, r2),
                    {"world": w1[x], "relation": _pairs_labels(r2, n2, w2), "candidates": blocked},
                )
    for x in range(n1):
        for r1 in rels1:
            if not _mkf_cond2(f, M1, M2, x, r1):
                blocked = []
                for r2 in rels2:
                    u = members(rel_row(r2, n2, f[x]) & ~image(f, rel_row(r1, n1, x)))[0]
                    blocked.append({"relation": _pairs_labels(r2, n2, w2), "successor": w2[u]})
                return Report(
                    False,
                    "cond2",
                    (x, r1),
                    {"world": w1[x], "relation": _pairs_labels(r1, n1, w1), "candidates": blocked},
                )
    return PASS


def is_bijection(f: WorldMap, n2: int) -> bool:
    return len(f) == n2 and sorted(f) == list(range(n2))


def inverse(f: WorldMap) -> tuple[int, ...]:
    inv = [0] * len(f)
    for i, y in enumerate(f):
        inv[y] = i
    return tuple(inv)


def is_mkf_iso(f: WorldMap, M1: MRFrame, M2: MRFrame) -> Report:
    """Bijective homomorphism whose inverse is checked as a homomorphism too."""
    f = _check_map(f, M1.n, M2.n)
    if not is_bijection(f, M2.n):
        return Report(False, "bijective", (), {"map": [M2.worlds[y] for y in f]})
    forward = is_mkf_hom(f, M1, M2)
    backward = is_mkf_hom(inverse(f), M2, M1)
    if forward.ok != backward.ok:
        raise AssertionError("bijective homomorphism with a non-homomorphic inverse")
    if not forward:
        return forward
    return PASS


# -- neighborhood frames -----------------------------------------------------

def _nfr_cond(f, Z1, Z2, c, x) -> bool:
    return (preimage(f, x) in Z1.nbhd[c]) == (x in Z2.nbhd[f[c]])


def is_nfr_hom(f: WorldMap, Z1: NFrame, Z2: NFrame) -> Report:
    f = _check_map(f, Z1.n, Z2.n)
    for c in range(Z1.n):
        for x in range(1 << Z2.n):
            if not _nfr_cond(f, Z1, Z2, c, x):
                pre = preimage(f, x)
                return Report(
                    False,
                    "preimage",
                    (c, x),
                    {
                        "world": Z1.worlds[c],
                        "set": subset_labels(Z2.worlds, x),
                        "preimage": subset_labels(Z1.worlds, pre),
                        "preimage_in_source": pre in Z1.nbhd[c],
                        "set_in_target": x in Z2.nbhd[f[c]],
                    },
                )
    return PASS


def is_nfr_iso(f: WorldMap, Z1: NFrame, Z2: NFrame) -> Report:
    f = _check_map(f, Z1.n, Z2.n)
    if not is_bijection(f, Z2.n):
        return Report(False, "bijective", (), {"map": [Z2.worlds[y] for y in f]})
    forward = is_nfr_hom(f, Z1, Z2)
    if not forward:
        return forward
    return is_nfr_hom(inverse(f), Z2, Z1)


# -- Boolean and modal algebras ----------------------------------------------

# Definitional join/meet check runs when the source has at most this many
# families of elements.
DEFINITIONAL_FAMILY_LIMIT = 256


def _el(h: ElementMap, x: int) -> list[str]:
    return subset_labels(h.source.atoms, x)


def is_cba_hom(h: ElementMap) -> Report:
    """Complete Boolean homomorphism test on finite powersets.

    Uses 0, 1, complement, binary meet/join and atom decomposition; for small
    sources the arbitrary-family definition is checked as well and must agree.
    """
    verdict = _cba_shortcut(h)
    if 1 << h.source.size <= DEFINITIONAL_FAMILY_LIMIT:
        definitional = _cba_definitional(h)
        if definitional != verdict.ok:
            raise AssertionError("complete-homomorphism routes disagree")
    return verdict


def _cba_shortcut(h: ElementMap) -> Report:
    A, B = h.source, h.target
    t = h.table
    if t[0] != 0:
        return Report(False, "zero", (), {"image": subset_labels(B.atoms, t[0])})
    if t[A.top] != B.top:
        return Report(False, "one", (), {"image": subset_labels(B.atoms, t[A.top])})
    for x in A.elements():
        if t[A.complement(x)] != B.complement(t[x]):
            return Report(False, "complement", (x,), {"element": _el(h, x)})
    for x in A.elements():
        for y in A.elements():
            if t[x | y] != t[x] | t[y]:
                return Report(False, "join", (x, y), {"elements": [_el(h, x), _el(h, y)]})
            if t[x & y] != t[x] & t[y]:
                return Report(False, "meet", (x, y), {"elements": [_el(h, x), _el(h, y)]})
    for x in A.elements():
        if t[x] != join_all(t[1 << i] for i in members(x)):
            return Report(False, "atoms", (x,), {"element": _el(h, x)})
    return PASS


def _cba_definitional(h: ElementMap) -> bool:
    """Every family X of elements: h(join X) = join h[X], h(meet X) = meet h[X]."""
    A, B = h.source, h.target
    t = h.table
    count = 1 << A.size
    # family masks over the element list; each built from its lowest member
    join = [0] * count
    meet = [A.top] * count
    img_join = [0] * count
    img_meet = [B.top] * count
    for fam in range(1, count):
        low = fam & -fam
        x = low.bit_length() - 1
        rest = fam ^ low
        join[fam] = join[rest] | x
        meet[fam] = meet[rest] & x
        img_join[fam] = img_join[rest] | t[x]
        img_meet[fam] = img_meet[rest] & t[x]
        if t[join[fam]] != img_join[fam] or t[meet[fam]] != img_meet[fam]:
            return False
    if t[0] != 0 or t[A.top] != B.top:
        return False
    return all(t[A.complement(x)] == B.complement(t[x]) for x in A.elements())


def is_modal_hom(h: ElementMap) -> Report:
    verdict = is_cba_hom(h)
    if not verdict:
        return verdict
    A, B = h.source, h.target
    for x in A.elements():
        if h.table[A.box[x]] != B.box[h.table[x]]:
            return Report(
                False,
                "box",
                (x,),
                {
                    "element": _el(h, x),
                    "image_of_box": subset_labels(B.atoms, h.table[A.box[x]]),
                    "box_of_image": subset_labels(B.atoms, B.box[h.table[x]]),
                },
            )
    return PASS


def preimage_map(f: WorldMap, source: BoxAlgebra, target: BoxAlgebra) -> ElementMap:
    """The element map X -> f^{-1}[X] from ``source`` to ``target``, where
    ``f`` sends target atoms to source atoms."""
    f = _check_map(f, target.n, source.n)
    return ElementMap(source, target, tuple(preimage(f, x) for x in source.elements()))


def cba_hom_from_atom_map(g: WorldMap, source: BoxAlgebra, target: BoxAlgebra) -> ElementMap:
    """Complete Boolean homomorphism ``h(X) = g^{-1}[X]`` induced by an atom
    map ``g: atoms(target) -> atoms(source)``."""
    return preimage_map(g, source, target)


def atom_maps(n_from: int, n_to: int):
    """All functions from ``n_from`` indices to ``n_to`` indices."""
    return product(range(n_to), repeat=n_from)


# -- replay ------------------------------------------------------------------

def replay(report: Report, f, src, dst) -> bool:
    """Re-check the single condition instance named by a failed report.

    Returns True when the instance still fails, i.e. the witness is genuine.
    """
    if report.ok:
        raise ValueError("nothing to replay on a passing report")
    cond, w = report.condition, report.witness
    if cond == "forth":
        return not _kripke_forth(tuple(f), src, dst, *w)
    if cond == "lift":
        return not _kripke_lift(tuple(f), src, dst, *w)
    if cond == "cond1":
        return not _mkf_cond1(tuple(f), src, dst, *w)
    if cond == "cond2":
        return not _mkf_cond2(tuple(f), src, dst, *w)
    if cond == "preimage":
        return not _nfr_cond(tuple(f), src, dst, *w)
    if cond == "bijective":
        return not is_bijection(tuple(f), dst.n)
    raise ValueError(f"no replay for condition {cond!r}")


def replay_element_map(report: Report, h: ElementMap) -> bool:
    if report.ok:
        raise ValueError("nothing to replay on a passing report")
    A, B, t = h.source, h.target, h.table
    cond, w = report.condition, report.witness
    if cond == "zero":
        return t[0] != 0
    if cond == "one":
        return t[A.top] != B.top
    if cond == "complement":
        (x,) = w
        return t[A.complement(x)] != B.complement(t[x])
    if cond == "join":
        x, y = w
        return t[x | y] != t[x] | t[y]
    if cond == "meet":
        x, y = w
        return t[x & y] != t[x] & t[y]
    if cond == "atoms":
        (x,) = w
        return t[x] != join_all(t[1 << i] for i in members(x))
    if cond == "box":
        (x,) = w
        return t[A.box[x]] != B.box[t[x]]
    raise ValueError(f"no replay for condition {cond!r}")


def compose(f: WorldMap, g: WorldMap) -> tuple[int, ...]:
    """``g`` after ``f``."""
    return tuple(g[y] for y in f)


def identity_map(n: int) -> tuple[int, ...]:
    return tuple(range(n))
