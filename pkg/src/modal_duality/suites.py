"""Exhaustive and seeded theorem suites plus the counterexample demo.

Each suite returns a plain dict (JSON-ready, deterministic for a given
seed) with the number of cases checked, passed, and the first failures.
"""
from __future__ import annotations

import random
from itertools import combinations
from typing import Any, Callable, Iterable

from .core import (
    ALL,
    Kappa,
    check_kappa_dd,
    check_nfr,
    check_upward_closed,
    rel_from_pairs,
    subset_labels,
    validate_algebra,
)
from .duality import (
    corollary_preimage_check,
    theta_map,
    verify_cama_nfr,
    verify_delta,
    verify_gamma,
    verify_tau,
    verify_theta,
)
from .functors import F_obj, G_obj, H_obj, J_obj, K_obj, N_obj, U_obj, relation_from_family
from .generators import (
    GenParams,
    complete_nframes,
    fixture,
    normal_algebras,
    random_mrframe,
    random_mrframes,
)
from .morphisms import (
    atom_maps,
    is_mkf_hom,
    is_modal_hom,
    is_nfr_hom,
    preimage_map,
    replay,
)
from .order import left_adjoint, p_element, right_adjoint

MAX_LISTED_FAILURES = 5


def _tally(name: str, cases: Iterable[Any], check: Callable[[Any], Any]) -> dict[str, Any]:
    checked = passed = 0
    failures = []
    for i, case in enumerate(cases):
        checked += 1
        outcome = check(case)
        if outcome is True:
            passed += 1
        elif len(failures) < MAX_LISTED_FAILURES:
            failures.append({"case": i, "detail": outcome})
    return {"suite": name, "checked": checked, "passed": passed, "ok": checked == passed, "failures": failures}


def _report_outcome(rep):
    return True if rep.ok else rep.as_dict()


# -- counterexamples ---------------------------------------------------------

def counterexamples() -> dict[str, Any]:
    """The three ways the successor-set map fails to be a functor."""
    items = []

    M = fixture("FX1_single")
    UM = U_obj(M)
    v1 = check_upward_closed(UM)
    dd1 = check_kappa_dd(M, ALL)
    items.append({
        "item": 1,
        "claim": "U(M) is not a complete neighborhood frame although M is directed",
        "frame_directed": dd1.ok,
        "complete": check_nfr(UM, ALL).ok,
        "upward_closure": v1.as_dict(),
        "reproduced": dd1.ok and not v1.ok and v1.witness == (0, 0, 1),
    })

    M1, M2, f = fixture("FX2_pair")
    mkf = is_mkf_hom(f, M1, M2)
    nfr = is_nfr_hom(f, U_obj(M1), U_obj(M2))
    items.append({
        "item": 2,
        "claim": "f is a multi-relational homomorphism but not a neighborhood homomorphism of U-images",
        "mkf_hom": mkf.as_dict(),
        "nfr_hom": nfr.as_dict(),
        "reproduced": mkf.ok and not nfr.ok and nfr.witness == (0, 0b11)
        and replay(nfr, f, U_obj(M1), U_obj(M2)),
    })

    M1, M2, f = fixture("FX3_triple")
    mkf = is_mkf_hom(f, M1, M2)
    nfr = is_nfr_hom(f, U_obj(M1), U_obj(M2))
    q = next(iter(M2.rels))
    r1 = rel_from_pairs(3, [(0, 1)])
    items.append({
        "item": 3,
        "claim": "f is a neighborhood homomorphism of U-images but not a multi-relational homomorphism",
        "mkf_hom": mkf.as_dict(),
        "nfr_hom": nfr.as_dict(),
        "reproduced": nfr.ok and not mkf.ok and mkf.condition == "cond2"
        and mkf.witness == (0, r1) and q & 1 == 1 and not r1 & 1
        and replay(mkf, f, M1, M2),
    })
    return {"suite": "counterexamples", "items": items, "ok": all(i["reproduced"] for i in items)}


# -- duality suites ----------------------------------------------------------

def tau_suite(max_atoms: int = 3) -> dict[str, Any]:
    cases = (A for n in range(1, max_atoms + 1) for A in normal_algebras(n))
    return _tally("tau", cases, lambda A: _report_outcome(verify_tau(A)))


def theta_suite(seed: int = 1, count: int = 1000, max_worlds: int = 3, max_relations: int = 3) -> dict[str, Any]:
    p = GenParams(max_worlds=max_worlds, max_relations=max_relations, seed=seed, count=count, close=True)
    out = _tally("theta", random_mrframes(p), lambda M: _report_outcome(verify_theta(M)))
    M = fixture("FX4_fork")
    fork = verify_theta(M)
    FGM = F_obj(G_obj(M), strict=False)
    replayed = not fork.ok and replay(fork, theta_map(M, FGM), M, FGM)
    out["fork_witness"] = fork.as_dict()
    out["fork_replayed"] = replayed
    out["ok"] = out["ok"] and replayed
    return out


NFR_KAPPAS = (Kappa(2), Kappa(3), ALL)


def nfr_equivalence_suite(seed: int = 2, count: int = 500, max_worlds: int = 3, max_relations: int = 3) -> dict[str, Any]:
    exhaustive = _tally("delta-exhaustive", complete_nframes(2), lambda Z: _report_outcome(verify_delta(Z, ALL)))

    rng = random.Random(seed)

    def cases():
        produced = 0
        while produced < count:
            kappa = NFR_KAPPAS[produced % len(NFR_KAPPAS)]
            M = random_mrframe(rng, max_worlds, max_relations)
            if not check_kappa_dd(M, kappa):
                continue
            produced += 1
            yield M, kappa

    def check(case):
        M, kappa = case
        g = verify_gamma(M, kappa)
        if not g:
            return g.as_dict()
        d = verify_delta(N_obj(M), kappa)
        return True if d else d.as_dict()

    seeded = _tally("gamma-seeded", cases(), check)
    return {
        "suite": "nfr-equivalence",
        "exhaustive": exhaustive,
        "seeded": seeded,
        "ok": exhaustive["ok"] and seeded["ok"],
    }


def cama_nfr_suite() -> dict[str, Any]:
    algebras = [A for n in (1, 2) for A in normal_algebras(n)]
    nframes = list(complete_nframes(2))

    def alg_check(A):
        rep = verify_cama_nfr(A=A)
        if not rep:
            return rep.as_dict()
        if J_obj(A) != N_obj(F_obj(A)):
            return {"route": "J != N.F"}
        return True

    def nfr_check(Z):
        rep = verify_cama_nfr(Z=Z)
        if not rep:
            return rep.as_dict()
        if K_obj(Z) != G_obj(H_obj(Z)):
            return {"route": "K != G.H"}
        return True

    a = _tally("delta-algebras", algebras, alg_check)
    z = _tally("gamma-nframes", nframes, nfr_check)
    return {"suite": "cama-nfr", "algebras": a, "nframes": z, "ok": a["ok"] and z["ok"]}


def _families(elements, max_size):
    for k in range(max_size + 1):
        yield from combinations(elements, k)


def lemma_suite() -> dict[str, Any]:
    """R(X)-adjacency against the p(X, a) criterion, and the inverse-image
    instance X = {right adjoint of p(Y, b)} for modal homs."""
    algebras2 = list(normal_algebras(2))

    def adjacency_cases():
        for A in algebras2:
            for X in _families(list(A.elements()), 2):
                yield A, X

    def adjacency(case):
        A, X = case
        R = relation_from_family(A, X)
        for a in range(A.n):
            p = p_element(A, X, 1 << a)
            for b in range(A.n):
                if bool(R >> (a * A.n + b) & 1) != (not p >> b & 1):
                    return {"atoms": [A.atoms[a], A.atoms[b]], "family": [subset_labels(A.atoms, x) for x in X]}
        return True

    small = [A for n in (1, 2) for A in normal_algebras(n)]

    def hom_cases():
        for A in small:
            for B in small:
                for g in atom_maps(B.n, A.n):
                    h = preimage_map(g, A, B)
                    if is_modal_hom(h):
                        yield h

    def inv_equiv(h):
        A, B = h.source, h.target
        for Y in _families(list(B.elements()), B.size):
            for b in range(B.n):
                target = right_adjoint(h, p_element(B, Y, 1 << b), check=False)
                X = (target,)
                lb = left_adjoint(h, 1 << b, check=False)
                if target != p_element(A, X, lb):
                    return {"identity": "right adjoint of p(Y,b) != p(X, left adjoint b)"}
                R = relation_from_family(A, X)
                i = lb.bit_length() - 1
                for a in range(A.n):
                    if bool(R >> (i * A.n + a) & 1) != (not target >> a & 1):
                        return {"atom": A.atoms[a], "b": B.atoms[b]}
        return True

    adj = _tally("lemma-adjacency", adjacency_cases(), adjacency)
    inv = _tally("lemma-inverse-image", hom_cases(), inv_equiv)
    return {"suite": "lemma", "adjacency": adj, "inverse_image": inv, "ok": adj["ok"] and inv["ok"]}


def corollary_suite(seed: int = 3, pairs: int = 200, max_worlds: int = 3, max_relations: int = 3) -> dict[str, Any]:
    rng = random.Random(seed)
    from itertools import product

    def cases():
        for _ in range(pairs):
            M1 = random_mrframe(rng, max_worlds, max_relations)
            M2 = random_mrframe(rng, max_worlds, max_relations)
            yield M1, M2

    def check(case):
        M1, M2 = case
        for f in product(range(M2.n), repeat=M1.n):
            if not corollary_preimage_check(f, M1, M2):
                return {"map": list(f)}
        return True

    return _tally("corollary", cases(), check)


def adjoint_suite(max_atoms: int = 3) -> dict[str, Any]:
    """Galois laws, unit/counit inequalities and atom preservation for every
    complete Boolean hom between plain powersets of 1..max_atoms atoms."""
    from .core import BoxAlgebra
    from .generators import atom_labels
    from .order import check_atom_characterizations

    plain = [BoxAlgebra.identity(atom_labels(n)) for n in range(1, max_atoms + 1)]

    def cases():
        for A in plain:
            for B in plain:
                for g in atom_maps(B.n, A.n):
                    yield preimage_map(g, A, B)

    def check(h):
        A, B = h.source, h.target
        t = h.table
        right = [right_adjoint(h, b, check=False) for b in B.elements()]
        left = [left_adjoint(h, b, check=False) for b in B.elements()]
        for a in A.elements():
            for b in B.elements():
                if (t[a] & ~b == 0) != (a & ~right[b] == 0):
                    return {"law": "right", "a": a, "b": b}
                if (b & ~t[a] == 0) != (left[b] & ~a == 0):
                    return {"law": "left", "a": a, "b": b}
        for b in B.elements():
            if t[right[b]] & ~b or b & ~t[left[b]]:
                return {"law": "counit", "b": b}
        for a in A.elements():
            if a & ~right[t[a]] or left[t[a]] & ~a:
                return {"law": "unit", "a": a}
        for i in range(B.n):
            x = left[1 << i]
            if x == 0 or x & (x - 1):
                return {"law": "atom", "b": i}
        return True

    homs = _tally("adjoints", cases(), check)
    atoms = _tally(
        "atom-characterizations",
        (A for n in range(1, max_atoms + 1) for A in normal_algebras(n)),
        lambda A: True if check_atom_characterizations(A) else {"atoms": list(A.atoms)},
    )
    return {"suite": "adjoints", "homs": homs, "atoms": atoms, "ok": homs["ok"] and atoms["ok"]}


def nonnormal_witness() -> dict[str, Any]:
    GM = G_obj(fixture("FX4_fork"))
    cls = validate_algebra(GM)
    w = cls.witnesses.get("binary_additive")
    return {
        "suite": "non-normal",
        "classification": cls.as_dict(GM.atoms),
        "ok": cls.monotone and not cls.binary_additive and w == (0b010, 0b100),
    }


def run_all(seed: int = 0, count: int | None = None, max_worlds: int = 3, max_relations: int = 3,
            max_atoms: int = 3) -> dict[str, Any]:
    """Every suite; ``count`` scales the seeded suites (defaults per suite)."""
    seeds = random.Random(seed)
    s_theta, s_nfr, s_cor = (seeds.getrandbits(32) for _ in range(3))
    kw = {"max_worlds": max_worlds, "max_relations": max_relations}
    results = [
        counterexamples(),
        tau_suite(max_atoms),
        theta_suite(s_theta, count if count is not None else 1000, **kw),
        nfr_equivalence_suite(s_nfr, count if count is not None else 500, **kw),
        cama_nfr_suite(),
        lemma_suite(),
        corollary_suite(s_cor, count if count is not None else 200, **kw),
        adjoint_suite(max_atoms),
        nonnormal_witness(),
    ]
    return {"seed": seed, "suites": results, "ok": all(r["ok"] for r in results)}
