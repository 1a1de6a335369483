"""Natural maps between objects and their round-trip images, with
isomorphism, naturality and preimage-criterion checks.

tau:   A -> G(F(A)),  x -> set of atoms below x
theta: M -> F(G(M)),  w -> {w}
gamma: M -> H(N(M)),  identity on worlds
delta: Z -> N(H(Z)),  identity on worlds
delta_alg: A -> K(J(A)),  x -> set of atoms below x
gamma_nfr: Z -> J(K(Z)),  y -> {y}

The relabelings are built from label dictionaries, never by comparing
label strings across structures.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Sequence

from .core import (
    ALL,
    BoxAlgebra,
    ElementMap,
    Kappa,
    MRFrame,
    NFrame,
    Report,
    check_kappa_dd,
    check_nfr,
    is_all_directed,
    is_normal,
    members,
    singleton_label,
    subset_labels,
)
from .functors import (
    F_map,
    F_obj,
    G_map,
    G_obj,
    H_obj,
    J_map,
    J_obj,
    K_map,
    K_obj,
    N_obj,
    f_relation_generators,
)
from .morphisms import (
    WorldMap,
    is_mkf_hom,
    is_mkf_iso,
    is_modal_hom,
    is_nfr_iso,
    preimage_map,
)


@dataclass(frozen=True)
class RoundTripReport:
    direction: str
    ok: bool
    condition: str | None = None
    witness: tuple = ()
    detail: dict[str, Any] = field(default_factory=dict, compare=False)
    relabeling: dict[str, Any] = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"direction": self.direction, "verdict": self.ok}
        if not self.ok:
            out["condition"] = self.condition
            out["witness"] = self.detail
        out["relabeling"] = self.relabeling
        return out


def _index(labels: Sequence[str]) -> dict[str, int]:
    return {label: i for i, label in enumerate(labels)}


def _atom_relabel(source_atoms: Sequence[str], target_atoms: Sequence[str]) -> list[int]:
    """Atom i of the source goes to the target atom labelled ``{label_i}``."""
    where = _index(target_atoms)
    return [where[singleton_label(a)] for a in source_atoms]


def _element_relabel(A: BoxAlgebra, B: BoxAlgebra, atom_image: Sequence[int]) -> ElementMap:
    table = []
    for x in A.elements():
        y = 0
        for i in members(x):
            y |= 1 << atom_image[i]
        table.append(y)
    return ElementMap(A, B, tuple(table))


def _algebra_iso(direction: str, h: ElementMap) -> RoundTripReport:
    relabel = {a: subset_labels(h.target.atoms, h.table[1 << i]) for i, a in enumerate(h.source.atoms)}
    if sorted(h.table) != list(h.target.elements()):
        return RoundTripReport(direction, False, "bijective", (), {}, relabel)
    verdict = is_modal_hom(h)
    if verdict:
        inv = [0] * len(h.table)
        for x, y in enumerate(h.table):
            inv[y] = x
        verdict = is_modal_hom(ElementMap(h.target, h.source, tuple(inv)))
    return RoundTripReport(direction, verdict.ok, verdict.condition, verdict.witness, verdict.detail, relabel)


def tau_map(A: BoxAlgebra, GFA: BoxAlgebra | None = None) -> ElementMap:
    GFA = GFA if GFA is not None else G_obj(F_obj(A))
    return _element_relabel(A, GFA, _atom_relabel(A.atoms, GFA.atoms))


def verify_tau(A: BoxAlgebra) -> RoundTripReport:
    """tau_A is a modal algebra isomorphism onto G(F(A))."""
    if not is_normal(A):
        raise ValueError("tau is defined for normal algebras")
    return _algebra_iso("algebra-first", tau_map(A))


def theta_map(M: MRFrame, FGM: MRFrame) -> tuple[int, ...]:
    where = _index(FGM.worlds)
    return tuple(where[singleton_label(w)] for w in M.worlds)


def verify_theta(M: MRFrame) -> RoundTripReport:
    """theta_M is a multi-relational isomorphism onto F(G(M)).

    Runs on any frame; on frames that are not completely directed the
    failure witness names the relation of F(G(M)) and its generating family.
    """
    GM = G_obj(M)
    gens = f_relation_generators(GM)
    FGM = MRFrame(tuple(singleton_label(w) for w in M.worlds), frozenset(gens))
    theta = theta_map(M, FGM)
    relabel = {w: FGM.worlds[theta[i]] for i, w in enumerate(M.worlds)}
    verdict = is_mkf_iso(theta, M, FGM)
    detail = dict(verdict.detail)
    if not verdict:
        detail["directed"] = is_all_directed(M)
        if verdict.condition == "cond1":
            _, r2 = verdict.witness
            detail["generating_family"] = [subset_labels(GM.atoms, x) for x in gens[r2]]
    return RoundTripReport("frame-first", verdict.ok, verdict.condition, verdict.witness, detail, relabel)


def verify_gamma(M: MRFrame, kappa: Kappa = ALL) -> RoundTripReport:
    """Identity on worlds is an isomorphism M -> H(N(M))."""
    dd = check_kappa_dd(M, kappa)
    if not dd:
        raise ValueError(f"frame is not {kappa}-directed")
    HNM = H_obj(N_obj(M), kappa)
    ident = tuple(range(M.n))
    verdict = is_mkf_iso(ident, M, HNM)
    relabel = {w: w for w in M.worlds}
    return RoundTripReport("nfr-equivalence", verdict.ok, verdict.condition, verdict.witness, verdict.detail, relabel)


def verify_delta(Z: NFrame, kappa: Kappa = ALL) -> RoundTripReport:
    """Identity on worlds is an isomorphism Z -> N(H(Z)); equivalently the
    neighborhoods coincide."""
    if not check_nfr(Z, kappa):
        raise ValueError(f"neighborhood frame is not {kappa}-complete")
    NHZ = N_obj(H_obj(Z, kappa))
    ident = tuple(range(Z.n))
    verdict = is_nfr_iso(ident, Z, NHZ)
    if verdict.ok != (NHZ.nbhd == Z.nbhd):
        raise AssertionError("identity iso and neighborhood equality disagree")
    relabel = {c: c for c in Z.worlds}
    return RoundTripReport("nfr-equivalence", verdict.ok, verdict.condition, verdict.witness, verdict.detail, relabel)


def verify_nfr_equivalence(
    M: MRFrame | None = None, Z: NFrame | None = None, kappa: Kappa = ALL
) -> RoundTripReport:
    """gamma for M and delta for Z (either may be omitted)."""
    if M is None and Z is None:
        raise ValueError("need a frame, a neighborhood frame, or both")
    reports = []
    if M is not None:
        reports.append(("gamma", verify_gamma(M, kappa)))
    if Z is not None:
        reports.append(("delta", verify_delta(Z, kappa)))
    for name, rep in reports:
        if not rep:
            return RoundTripReport(
                "nfr-equivalence", False, f"{name}:{rep.condition}", rep.witness, rep.detail, rep.relabeling
            )
    relabel: dict[str, Any] = {}
    for name, rep in reports:
        relabel[name] = rep.relabeling
    return RoundTripReport("nfr-equivalence", True, relabeling=relabel)


def delta_alg_map(A: BoxAlgebra, KJA: BoxAlgebra | None = None) -> ElementMap:
    KJA = KJA if KJA is not None else K_obj(J_obj(A))
    return _element_relabel(A, KJA, _atom_relabel(A.atoms, KJA.atoms))


def gamma_nfr_map(Z: NFrame, JKZ: NFrame) -> tuple[int, ...]:
    where = _index(JKZ.worlds)
    return tuple(where[singleton_label(c)] for c in Z.worlds)


def verify_cama_nfr(
    A: BoxAlgebra | None = None, Z: NFrame | None = None, kappa: Kappa = ALL
) -> RoundTripReport:
    """K(J(A)) is isomorphic to A via delta_A and J(K(Z)) to Z via gamma_Z."""
    if A is None and Z is None:
        raise ValueError("need an algebra, a neighborhood frame, or both")
    relabel: dict[str, Any] = {}
    if A is not None:
        if not is_normal(A):
            raise ValueError("algebra must be normal")
        rep = _algebra_iso("cama-nfr", delta_alg_map(A))
        if not rep:
            return RoundTripReport("cama-nfr", False, f"delta:{rep.condition}", rep.witness, rep.detail, rep.relabeling)
        relabel["delta"] = rep.relabeling
    if Z is not None:
        if not check_nfr(Z, kappa):
            raise ValueError(f"neighborhood frame is not {kappa}-complete")
        JKZ = J_obj(K_obj(Z))
        gamma = gamma_nfr_map(Z, JKZ)
        verdict = is_nfr_iso(gamma, Z, JKZ)
        g_relabel = {c: JKZ.worlds[gamma[i]] for i, c in enumerate(Z.worlds)}
        if not verdict:
            return RoundTripReport("cama-nfr", False, f"gamma:{verdict.condition}", verdict.witness, verdict.detail, g_relabel)
        relabel["gamma"] = g_relabel
    return RoundTripReport("cama-nfr", True, relabeling=relabel)


# -- naturality --------------------------------------------------------------

def _compare_tables(left: Sequence[int], right: Sequence[int], what: str) -> Report:
    for i, (a, b) in enumerate(zip(left, right)):
        if a != b:
            return Report(False, what, (i,), {"at": i, "left": a, "right": b})
    return Report(True)


def tau_naturality(h: ElementMap) -> Report:
    """G(F(h)) after tau_A equals tau_B after h, for a modal hom h: A -> B."""
    A, B = h.source, h.target
    FA, FB = F_obj(A), F_obj(B)
    GFA, GFB = G_obj(FA), G_obj(FB)
    GFh = G_map(F_map(h), FB, FA)
    left = tau_map(A, GFA).then(GFh).table
    right = h.then(tau_map(B, GFB)).table
    return _compare_tables(left, right, "tau-square")


def theta_naturality(f: WorldMap, M1: MRFrame, M2: MRFrame) -> Report:
    """F(G(f)) after theta_M1 equals theta_M2 after f."""
    g = G_map(f, M1, M2)
    FG1, FG2 = F_obj(g.target, strict=False), F_obj(g.source, strict=False)
    FGf = F_map(g, check=False)
    theta1, theta2 = theta_map(M1, FG1), theta_map(M2, FG2)
    left = tuple(FGf[theta1[w]] for w in range(M1.n))
    right = tuple(theta2[f[w]] for w in range(M1.n))
    return _compare_tables(left, right, "theta-square")


def delta_alg_naturality(h: ElementMap) -> Report:
    """K(J(h)) after delta_A equals delta_B after h."""
    A, B = h.source, h.target
    JA, JB = J_obj(A), J_obj(B)
    KJh = K_map(J_map(h), JB, JA)
    left = delta_alg_map(A, KJh.source).then(KJh).table
    right = h.then(delta_alg_map(B, KJh.target)).table
    return _compare_tables(left, right, "delta-square")


def gamma_naturality(f: WorldMap, M1: MRFrame, M2: MRFrame) -> Report:
    """H(N(f)) after gamma_M1 equals gamma_M2 after f; all four maps are the
    underlying functions, so the square is checked after validating f."""
    if not is_mkf_hom(f, M1, M2):
        raise ValueError("not a multi-relational homomorphism")
    left = tuple(f[w] for w in range(M1.n))
    right = tuple(f)
    return _compare_tables(left, right, "gamma-square")


NATURALITY = {
    "tau": tau_naturality,
    "theta": theta_naturality,
    "delta": delta_alg_naturality,
    "gamma": gamma_naturality,
}


def check_naturality(kind: str, *args) -> Report:
    try:
        check = NATURALITY[kind]
    except KeyError:
        raise ValueError(f"unknown naturality square {kind!r}") from None
    return check(*args)


# -- preimage criterion and isomorphism search ------------------------------

def corollary_preimage_check(f: WorldMap, M1: MRFrame, M2: MRFrame) -> bool:
    """f is a multi-relational hom iff X -> f^{-1}[X] is a modal hom
    G(M2) -> G(M1).  Returns whether the biconditional holds here."""
    frame_side = is_mkf_hom(f, M1, M2).ok
    algebra_side = is_modal_hom(preimage_map(f, G_obj(M2), G_obj(M1))).ok
    return frame_side == algebra_side


MAX_ISO_WORLDS = 4


def find_iso(M1: MRFrame, M2: MRFrame) -> tuple[int, ...] | None:
    """First bijection (in permutation order) that is an mkf isomorphism."""
    if M1.n != M2.n:
        raise ValueError("frames have different sizes")
    if M1.n > MAX_ISO_WORLDS:
        raise ValueError(f"isomorphism search is capped at {MAX_ISO_WORLDS} worlds")
    for perm in permutations(range(M1.n)):
        if is_mkf_iso(perm, M1, M2):
            return tuple(perm)
    return None


def relabel_frame(M: MRFrame, perm: Sequence[int]) -> MRFrame:
    """Copy of M with world i moved to position perm[i] (labels move too)."""
    n = M.n
    labels = [""] * n
    for i, p in enumerate(perm):
        labels[p] = M.worlds[i]
    rels = set()
    for r in M.rels:
        new = 0
        for b in members(r):
            i, j = divmod(b, n)
            new |= 1 << (perm[i] * n + perm[j])
        rels.add(new)
    return MRFrame(tuple(labels), frozenset(rels))

