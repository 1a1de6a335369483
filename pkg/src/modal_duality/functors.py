"""Object and arrow parts of the functors between algebras, multi-relational
frames, neighborhood frames and Kripke frames.

Frames built from algebras have one world per atom, labelled ``{a}`` for
the atom labelled ``a``; algebras built from frames use the world labels as
their atom base.  Arrow parts validate their input before building.
"""
from __future__ import annotations

import enum
from itertools import product

from .core import (
    MAX_RELATIONS,
    MAX_SELECTORS,
    BoxAlgebra,
    CapError,
    ElementMap,
    KripkeFrame,
    Kappa,
    MRFrame,
    NFrame,
    check_nfr,
    full_mask,
    image_down,
    is_normal,
    meet_all,
    rel_from_rows,
    rel_row,
    singleton_label,
    total_rel,
)
from .morphisms import (
    WorldMap,
    is_kripke_hom,
    is_mkf_hom,
    is_modal_hom,
    is_nfr_hom,
    preimage_map,
)
from .order import left_adjoint, up_closure


class FunctorTag(enum.Enum):
    G_mkf_to_alg = "G"
    F_alg_to_mkf = "F"
    N_mkf_to_nfr = "N"
    H_nfr_to_mkf = "H"
    J_alg_to_nfr = "J"
    K_nfr_to_alg = "K"
    M_kfr_to_mkf = "M"
    L_mkf_to_kfr = "L"
    U_underlying = "U"

    @property
    def contravariant(self) -> bool:
        return self.value in {"G", "F", "J", "K"}


def _require(report, what):
    if not report:
        raise ValueError(f"{what} failed: {report.condition} at {report.detail}")


def _atom_worlds(A: BoxAlgebra) -> tuple[str, ...]:
    return tuple(singleton_label(a) for a in A.atoms)


# -- G: frames to algebras ---------------------------------------------------

def G_obj(M: MRFrame) -> BoxAlgebra:
    """Box X = intersection over all relations of the backward image of X."""
    n = M.n
    top = full_mask(n)
    rels = M.ordered_rels
    box = [meet_all((image_down(r, n, x) for r in rels), top) for x in range(1 << n)]
    return BoxAlgebra(M.worlds, tuple(box))


def G_map(f: WorldMap, M1: MRFrame, M2: MRFrame, *, check: bool = True) -> ElementMap:
    """X -> f^{-1}[X], from G(M2) to G(M1)."""
    if check:
        _require(is_mkf_hom(f, M1, M2), "multi-relational homomorphism check")
    return preimage_map(f, G_obj(M2), G_obj(M1))


def thomason_G_obj(K: KripkeFrame) -> BoxAlgebra:
    n = K.n
    return BoxAlgebra(K.worlds, tuple(image_down(K.rel, n, x) for x in range(1 << n)))


# -- F: algebras to frames ---------------------------------------------------

def _singleton_relation(A: BoxAlgebra, x: int) -> int:
    """R({x}): a sees b unless b lies in x while a is outside box(x)."""
    top = A.top
    rows = [top if A.box[x] >> a & 1 else top & ~x for a in range(A.n)]
    return rel_from_rows(rows, A.n)


def f_relation_generators(A: BoxAlgebra) -> dict[int, tuple[int, ...]]:
    """Every relation R(X) mapped to one generating family X.

    R(X) is the intersection of R({x}) over x in X (R of the empty family is
    total), so the relation set is the intersection closure of the
    singleton relations together with the total relation.
    """
    n = A.n
    gens: dict[int, tuple[int, ...]] = {total_rel(n): ()}
    base: list[int] = []
    for x in A.elements():
        r = _singleton_relation(A, x)
        if r not in gens:
            gens[r] = (x,)
            base.append(r)
    frontier = list(gens)
    while frontier:
        nxt = []
        for r in frontier:
            for b in base:
                new = r & b
                if new in gens:
                    continue
                gens[new] = tuple(sorted(set(gens[r]) | set(gens[b])))
                nxt.append(new)
                if len(gens) > MAX_RELATIONS:
                    raise CapError(f"F relation set exceeds cap {MAX_RELATIONS}")
        frontier = nxt
    return gens


def F_obj(A: BoxAlgebra, *, strict: bool = True) -> MRFrame:
    """The frame on atom(A) carrying every relation R(X), X a set of elements.

    ``strict=False`` skips the normality requirement; the construction is
    still well defined and is what the directedness counterexamples need.
    """
    if strict and not is_normal(A):
        raise ValueError("F requires a normal algebra (box 0 = 0 and binary additive)")
    return MRFrame(_atom_worlds(A), frozenset(f_relation_generators(A)))


def relation_from_family(A: BoxAlgebra, X) -> int:
    """R(X) straight from its definition: a R b iff a <= meet box[up(b) & X]."""
    n = A.n
    rows = []
    for a in range(n):
        row = 0
        for b in range(n):
            if all(A.box[x] >> a & 1 for x in X if x >> b & 1):
                row |= 1 << b
        rows.append(row)
    return rel_from_rows(rows, n)


def _left_adjoint_atoms(h: ElementMap) -> tuple[int, ...]:
    out = []
    for b in range(h.target.n):
        a = left_adjoint(h, 1 << b, check=False)
        if a == 0 or a & (a - 1):
            raise AssertionError(f"left adjoint sent atom {b} to non-atom {a}")
        out.append(a.bit_length() - 1)
    return tuple(out)


def F_map(h: ElementMap, *, check: bool = True) -> tuple[int, ...]:
    """Atom map b -> left adjoint of h at b, from F(target) to F(source)."""
    if check:
        _require(is_modal_hom(h), "modal homomorphism check")
        if not (is_normal(h.source) and is_normal(h.target)):
            raise ValueError("F is defined on normal algebras only")
    return _left_adjoint_atoms(h)


def thomason_F_obj(A: BoxAlgebra) -> KripkeFrame:
    """a R b iff a <= box(b)."""
    n = A.n
    rows = [sum(1 << b for b in range(n) if A.box[1 << b] >> a & 1) for a in range(n)]
    return KripkeFrame(_atom_worlds(A), rel_from_rows(rows, n))


# -- N, U, H: multi-relational vs neighborhood frames ------------------------

def U_obj(M: MRFrame) -> NFrame:
    """Successor sets with no closure; not functorial."""
    n = M.n
    return NFrame(M.worlds, tuple(frozenset(rel_row(r, n, x) for r in M.rels) for x in range(n)))


def N_obj(M: MRFrame) -> NFrame:
    n = M.n
    return NFrame(M.worlds, tuple(up_closure({rel_row(r, n, x) for r in M.rels}, n) for x in range(n)))


def N_map(f: WorldMap, M1: MRFrame, M2: MRFrame, *, check: bool = True) -> tuple[int, ...]:
    if check:
        _require(is_mkf_hom(f, M1, M2), "multi-relational homomorphism check")
    return tuple(f)


def selector_count(Z: NFrame) -> int:
    count = 1
    for family in Z.nbhd:
        count *= len(family)
    return count


def H_obj(Z: NFrame, kappa: Kappa | None = None) -> MRFrame:
    """One relation per selector: a choice of neighborhood at every world,
    read as that world's successor set."""
    if kappa is not None:
        _require(check_nfr(Z, kappa), f"{kappa}-completeness check")
    count = selector_count(Z)
    if count == 0:
        raise ValueError("some world has an empty neighborhood family; no selectors exist")
    if count > MAX_SELECTORS:
        raise CapError(f"{count} selectors exceeds cap {MAX_SELECTORS}")
    n = Z.n
    rels = {rel_from_rows(v, n) for v in product(*(sorted(fam) for fam in Z.nbhd))}
    return MRFrame(Z.worlds, frozenset(rels))


def H_map(f: WorldMap, Z1: NFrame, Z2: NFrame, *, check: bool = True) -> tuple[int, ...]:
    if check:
        _require(is_nfr_hom(f, Z1, Z2), "neighborhood homomorphism check")
    return tuple(f)


# -- J, K: algebras vs neighborhood frames -----------------------------------

def J_obj(A: BoxAlgebra) -> NFrame:
    """Neighborhoods of atom a: every X with a outside box(complement X)."""
    if not is_normal(A):
        raise ValueError("J requires a normal algebra")
    nbhd = []
    for a in range(A.n):
        nbhd.append(frozenset(x for x in A.elements() if not A.box[A.complement(x)] >> a & 1))
    return NFrame(_atom_worlds(A), tuple(nbhd))


def J_map(h: ElementMap, *, check: bool = True) -> tuple[int, ...]:
    if check:
        _require(is_modal_hom(h), "modal homomorphism check")
    return _left_adjoint_atoms(h)


def K_obj(Z: NFrame) -> BoxAlgebra:
    """Box X = worlds whose neighborhoods miss the complement of X."""
    n = Z.n
    top = full_mask(n)
    box = []
    for x in range(1 << n):
        comp = top & ~x
        box.append(sum(1 << c for c in range(n) if comp not in Z.nbhd[c]))
    return BoxAlgebra(Z.worlds, tuple(box))


def K_map(g: WorldMap, Z1: NFrame, Z2: NFrame, *, check: bool = True) -> ElementMap:
    """X -> g^{-1}[X], from K(Z2) to K(Z1)."""
    if check:
        _require(is_nfr_hom(g, Z1, Z2), "neighborhood homomorphism check")
    return preimage_map(g, K_obj(Z2), K_obj(Z1))


# -- M, L: Kripke frames vs multi-relational frames --------------------------

def M_obj(K: KripkeFrame) -> MRFrame:
    return MRFrame(K.worlds, frozenset({K.rel}))


def M_map(f: WorldMap, K1: KripkeFrame, K2: KripkeFrame, *, check: bool = True) -> tuple[int, ...]:
    if check:
        _require(is_kripke_hom(f, K1, K2), "Kripke homomorphism check")
    return tuple(f)


def L_obj(M: MRFrame) -> KripkeFrame:
    meet = meet_all(M.rels, total_rel(M.n))
    if meet not in M.rels:
        raise ValueError("L requires the intersection of all relations to be one of them")
    return KripkeFrame(M.worlds, meet)


def L_map(f: WorldMap, M1: MRFrame, M2: MRFrame, *, check: bool = True) -> tuple[int, ...]:
    if check:
        _require(is_mkf_hom(f, M1, M2), "multi-relational homomorphism check")
    return tuple(f)

