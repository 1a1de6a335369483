"""Exhaustive and seeded-random streams of small frames and algebras, plus
the named counterexample fixtures.

Random streams use ``random.Random(seed)`` and only draw through
``getrandbits``, whose output for a given seed is fixed across platforms.
Each object is drawn uniformly over its raw encoding and then filtered.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, NamedTuple

from .core import (
    ALL,
    BoxAlgebra,
    Kappa,
    KripkeFrame,
    MRFrame,
    NFrame,
    check_kappa_dd,
    check_nfr,
    full_mask,
    is_normal,
    make_worlds,
    total_rel,
)

EXHAUSTIVE_MAX_WORLDS = 3
EXHAUSTIVE_MAX_ATOMS = 3
EXHAUSTIVE_MAX_NFR_WORLDS = 2

ATOM_LABELS = "abcdefgh"


@dataclass(frozen=True)
class GenParams:
    max_worlds: int = 3
    max_relations: int = 3
    max_atoms: int = 3
    seed: int = 0
    count: int = 100
    kappa: Kappa | None = None   # filter: kappa-directed frames / kappa-complete nbhd frames
    normal: bool = False         # filter: normal algebras only
    close: bool = False          # close random relation sets under intersection


def atom_labels(n: int) -> tuple[str, ...]:
    return tuple(ATOM_LABELS[:n])


# -- exhaustive --------------------------------------------------------------

def enumerate_mrframes(p: GenParams) -> Iterator[MRFrame]:
    """Every frame with 1..max_worlds worlds and 1..max_relations distinct
    relations, ordered by world count, relation count, then relation codes."""
    if p.max_worlds > EXHAUSTIVE_MAX_WORLDS:
        raise ValueError(f"exhaustive enumeration is capped at {EXHAUSTIVE_MAX_WORLDS} worlds")
    for n in range(1, p.max_worlds + 1):
        labels = make_worlds(n)
        all_rels = range(1 << (n * n))
        for k in range(1, p.max_relations + 1):
            for rels in combinations(all_rels, k):
                M = MRFrame(labels, frozenset(rels))
                if p.kappa is not None and not check_kappa_dd(M, p.kappa):
                    continue
                yield M


def enumerate_kripke_frames(max_worlds: int) -> Iterator[KripkeFrame]:
    if max_worlds > EXHAUSTIVE_MAX_WORLDS:
        raise ValueError(f"exhaustive enumeration is capped at {EXHAUSTIVE_MAX_WORLDS} worlds")
    for n in range(1, max_worlds + 1):
        labels = make_worlds(n)
        for rel in range(1 << (n * n)):
            yield KripkeFrame(labels, rel)


def normal_algebras(n: int) -> Iterator[BoxAlgebra]:
    """Every normal algebra on n atoms: each atom's box is any element."""
    if n > EXHAUSTIVE_MAX_ATOMS:
        raise ValueError(f"exhaustive enumeration is capped at {EXHAUSTIVE_MAX_ATOMS} atoms")
    labels = atom_labels(n)
    for rows in product(range(1 << n), repeat=n):
        yield BoxAlgebra.from_atom_rows(labels, rows)


def enumerate_normal_algebras(p: GenParams) -> Iterator[BoxAlgebra]:
    for n in range(1, p.max_atoms + 1):
        yield from normal_algebras(n)


def all_algebras(n: int) -> Iterator[BoxAlgebra]:
    """Every box table on n atoms, normal or not (n <= 2)."""
    if n > 2:
        raise ValueError("arbitrary box tables are enumerated up to 2 atoms only")
    labels = atom_labels(n)
    size = 1 << n
    for box in product(range(size), repeat=size):
        yield BoxAlgebra(labels, box)


def enumerate_nframes(max_worlds: int, kappa: Kappa | None = None) -> Iterator[NFrame]:
    """Every neighborhood frame on 1..max_worlds worlds, optionally filtered
    to the kappa-complete ones."""
    if max_worlds > EXHAUSTIVE_MAX_NFR_WORLDS:
        raise ValueError(f"exhaustive enumeration is capped at {EXHAUSTIVE_MAX_NFR_WORLDS} worlds")
    for n in range(1, max_worlds + 1):
        labels = make_worlds(n)
        subsets = range(1 << n)
        families = [frozenset(s for s in subsets if code >> s & 1) for code in range(1 << (1 << n))]
        for choice in product(families, repeat=n):
            Z = NFrame(labels, choice)
            if kappa is not None and not check_nfr(Z, kappa):
                continue
            yield Z


def complete_nframes(max_worlds: int) -> Iterator[NFrame]:
    return enumerate_nframes(max_worlds, ALL)


# -- seeded random -----------------------------------------------------------

def _randint(rng: random.Random, lo: int, hi: int) -> int:
    """Uniform on [lo, hi] by rejection over getrandbits."""
    span = hi - lo + 1
    bits = max(1, (span - 1).bit_length())
    while True:
        v = rng.getrandbits(bits)
        if v < span:
            return lo + v


def _close_under_meets(rels: set[int]) -> set[int]:
    out = set(rels)
    frontier = list(out)
    while frontier:
        nxt = []
        for r in frontier:
            for q in list(out):
                m = r & q
                if m not in out:
                    out.add(m)
                    nxt.append(m)
        frontier = nxt
    return out


def random_mrframe(rng: random.Random, max_worlds: int, max_relations: int, close: bool = False) -> MRFrame:
    n = _randint(rng, 1, max_worlds)
    k = _randint(rng, 1, max_relations)
    rels = {rng.getrandbits(n * n) for _ in range(k)}
    if close:
        rels = _close_under_meets(rels)
    return MRFrame(make_worlds(n), frozenset(rels))


def random_mrframes(p: GenParams, max_attempts: int = 1000) -> Iterator[MRFrame]:
    """``p.count`` frames passing the directedness filter (if any)."""
    rng = random.Random(p.seed)
    produced = 0
    misses = 0
    while produced < p.count:
        M = random_mrframe(rng, p.max_worlds, p.max_relations, p.close)
        if p.kappa is not None and not check_kappa_dd(M, p.kappa):
            misses += 1
            if misses > max_attempts * p.count:
                raise RuntimeError("filter rejected too many samples")
            continue
        produced += 1
        yield M


def random_algebra(rng: random.Random, max_atoms: int, normal: bool) -> BoxAlgebra:
    n = _randint(rng, 1, max_atoms)
    labels = atom_labels(n)
    if normal:
        return BoxAlgebra.from_atom_rows(labels, [rng.getrandbits(n) for _ in range(n)])
    return BoxAlgebra(labels, tuple(rng.getrandbits(n) for _ in range(1 << n)))


def random_algebras(p: GenParams) -> Iterator[BoxAlgebra]:
    rng = random.Random(p.seed)
    for _ in range(p.count):
        yield random_algebra(rng, p.max_atoms, p.normal)


def random_nframe(rng: random.Random, max_worlds: int) -> NFrame:
    n = _randint(rng, 1, max_worlds)
    size = 1 << n
    nbhd = []
    for _ in range(n):
        code = rng.getrandbits(size)
        nbhd.append(frozenset(s for s in range(size) if code >> s & 1))
    return NFrame(make_worlds(n), tuple(nbhd))


def random_objects(p: GenParams, kind: str = "mkf") -> Iterator:
    """Seeded stream of frames (``mkf``), algebras (``cama``) or
    neighborhood frames (``nfr``), filtered per ``p``."""
    if kind == "mkf":
        yield from random_mrframes(p)
    elif kind == "cama":
        rng = random.Random(p.seed)
        produced = 0
        while produced < p.count:
            A = random_algebra(rng, p.max_atoms, False)
            if p.normal and not is_normal(A):
                continue
            produced += 1
            yield A
    elif kind == "nfr":
        rng = random.Random(p.seed)
        produced = 0
        while produced < p.count:
            Z = random_nframe(rng, p.max_worlds)
            if p.kappa is not None and not check_nfr(Z, p.kappa):
                continue
            produced += 1
            yield Z
    else:
        raise ValueError(f"unknown object kind {kind!r}")


def random_world_map(rng: random.Random, n1: int, n2: int) -> tuple[int, ...]:
    return tuple(_randint(rng, 0, n2 - 1) for _ in range(n1))


# -- fixtures ----------------------------------------------------------------

class FramePair(NamedTuple):
    M1: MRFrame
    M2: MRFrame
    f: tuple[int, ...]


def _fx1() -> MRFrame:
    return MRFrame.from_pairs(1, [[]])


def _fx2() -> FramePair:
    M1 = MRFrame.from_pairs(1, [[(0, 0)]])
    M2 = MRFrame.from_pairs(2, [[(0, 0)]])
    return FramePair(M1, M2, (0,))


def _fx3() -> FramePair:
    M1 = MRFrame.from_pairs(3, [[(0, 1)], [(0, 0), (0, 1), (0, 2)]])
    M2 = MRFrame.from_pairs(2, [[(0, 0), (0, 1)]])
    return FramePair(M1, M2, (0, 1, 1))


def _fx4() -> MRFrame:
    return MRFrame.from_pairs(3, [[(0, 1)], [(0, 2)]])


def _fx5() -> BoxAlgebra:
    return BoxAlgebra.identity(("a", "b"))


FIXTURES = {
    "FX1_single": _fx1,
    "FX2_pair": _fx2,
    "FX3_triple": _fx3,
    "FX4_fork": _fx4,
    "FX5_idbox2": _fx5,
}

# Single-document addresses for the fx: URI scheme.
FIXTURE_DOCUMENTS = {
    "FX1_single": lambda: _fx1(),
    "FX2_M1": lambda: _fx2().M1,
    "FX2_M2": lambda: _fx2().M2,
    "FX2_map": lambda: _fx2().f,
    "FX3_M1": lambda: _fx3().M1,
    "FX3_M2": lambda: _fx3().M2,
    "FX3_map": lambda: _fx3().f,
    "FX4_fork": lambda: _fx4(),
    "FX5_idbox2": lambda: _fx5(),
}


def fixture(name: str):
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}") from None


def principal_nframe(n: int) -> NFrame:
    """Every world's neighborhoods are the supersets of its own singleton."""
    top = full_mask(n)
    return NFrame(
        make_worlds(n),
        tuple(frozenset(y for y in range(top + 1) if y >> c & 1) for c in range(n)),
    )


def total_frame(n: int) -> MRFrame:
    return MRFrame(make_worlds(n), frozenset({total_rel(n)}))
