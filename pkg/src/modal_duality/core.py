"""Finite structures: world sets, relations, multi-relational and neighborhood
frames, powerset modal algebras, and their structural validators.

Subsets of a world set (or of an atom base) are int bit masks; bit ``i`` is
world ``i``.  A binary relation on ``n`` worlds is a single int of ``n*n``
bits where bit ``i*n + j`` encodes the pair ``(i, j)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

MAX_ATOMS = 5
MAX_WORLDS = 6
# Raised from 64: H(N(M)) on three worlds can carry 512 relations.
MAX_RELATIONS = 4096
MAX_SELECTORS = 4096


class CapError(ValueError):
    """A structure exceeds a configured size cap."""


# -- bit masks ---------------------------------------------------------------

def mask_of(indices: Iterable[int]) -> int:
    value = 0
    for i in indices:
        value |= 1 << i
    return value


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(x: int, y: int) -> bool:
    return x & ~y == 0


def supersets(x: int, n: int) -> Iterable[int]:
    """Supersets of ``x`` within ``n`` worlds, ascending by mask value."""
    for y in range(1 << n):
        if x & ~y == 0:
            yield y


def join_all(elements: Iterable[int]) -> int:
    out = 0
    for x in elements:
        out |= x
    return out


def meet_all(elements: Iterable[int], top: int) -> int:
    out = top
    for x in elements:
        out &= x
    return out


# -- relations ---------------------------------------------------------------

def rel_from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> int:
    value = 0
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"pair ({i}, {j}) out of range for {n} worlds")
        value |= 1 << (i * n + j)
    return value


def rel_pairs(rel: int, n: int) -> list[tuple[int, int]]:
    return [divmod(b, n) for b in members(rel)]


def rel_row(rel: int, n: int, i: int) -> int:
    """Successor mask of world ``i``."""
    return (rel >> (i * n)) & full_mask(n)


def rel_from_rows(rows: Sequence[int], n: int) -> int:
    value = 0
    for i, row in enumerate(rows):
        value |= row << (i * n)
    return value


def total_rel(n: int) -> int:
    return full_mask(n * n)


def rel_key(rel: int, n: int) -> tuple[tuple[int, int], ...]:
    """Canonical order: lexicographic on the sorted pair list."""
    return tuple(rel_pairs(rel, n))


def sort_rels(rels: Iterable[int], n: int) -> tuple[int, ...]:
    return tuple(sorted(rels, key=lambda r: rel_key(r, n)))


def image_up(rel: int, n: int, x: int) -> int:
    """{w | some v in x has v R w}."""
    out = 0
    for v in members(x):
        out |= rel_row(rel, n, v)
    return out


def image_down(rel: int, n: int, x: int) -> int:
    """{w | w R v for some v in x}."""
    out = 0
    for w in range(n):
        if rel_row(rel, n, w) & x:
            out |= 1 << w
    return out


# -- world sets --------------------------------------------------------------

def make_worlds(worlds: int | Iterable[str]) -> tuple[str, ...]:
    if isinstance(worlds, int):
        labels = tuple(str(i) for i in range(worlds))
    else:
        labels = tuple(worlds)
    if not labels:
        raise ValueError("world set must be nonempty")
    for label in labels:
        if not isinstance(label, str):
            raise TypeError(f"world label {label!r} is not a string")
    if len(set(labels)) != len(labels):
        raise ValueError(f"duplicate world labels in {labels}")
    return labels


def _resolve(labels: tuple[str, ...], w: int | str) -> int:
    if isinstance(w, str):
        try:
            return labels.index(w)
        except ValueError:
            raise KeyError(f"unknown world {w!r}") from None
    if not 0 <= w < len(labels):
        raise IndexError(f"world index {w} out of range")
    return w


def subset_of(labels: tuple[str, ...], items: Iterable[int | str]) -> int:
    """Mask from world indices or labels."""
    return mask_of(_resolve(labels, w) for w in items)


def subset_labels(labels: Sequence[str], mask: int) -> list[str]:
    return [labels[i] for i in members(mask)]


def singleton_label(label: str) -> str:
    """World label for the atom ``{label}``."""
    return "{" + label + "}"


# -- kappa -------------------------------------------------------------------

@dataclass(frozen=True)
class Kappa:
    """Closure-strength bound: ``Finite(k)`` quantifies over families of size
    below ``k``; ``k=None`` quantifies over every family."""

    k: int | None = None

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise ValueError("kappa bound must be >= 1")

    @classmethod
    def finite(cls, k: int) -> Kappa:
        return cls(k)

    @classmethod
    def parse(cls, text: str) -> Kappa:
        text = text.strip().lower()
        if text == "all":
            return ALL
        try:
            k = int(text)
        except ValueError:
            raise ValueError(f"kappa must be a positive integer or 'all', got {text!r}") from None
        return cls(k)

    @property
    def is_all(self) -> bool:
        return self.k is None

    def admits(self, size: int) -> bool:
        return self.k is None or size < self.k

    def max_size(self, universe: int) -> int:
        """Largest admitted family size drawn from ``universe`` items."""
        return universe if self.k is None else min(self.k - 1, universe)

    def __str__(self):
        return "all" if self.k is None else str(self.k)


ALL = Kappa()


# -- reports -----------------------------------------------------------------

@dataclass(frozen=True)
class Report:
    """Verdict plus, on failure, the condition that failed and where.

    ``witness`` holds raw indices/masks (enough to replay the check);
    ``detail`` is the same information rendered with labels.
    """

    ok: bool
    condition: str | None = None
    witness: tuple = ()
    detail: dict[str, Any] = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"verdict": self.ok}
        if not self.ok:
            out["condition"] = self.condition
            out["witness"] = self.detail
        return out


PASS = Report(True)


# -- frames ------------------------------------------------------------------

def _check_world_cap(labels):
    if len(labels) > MAX_WORLDS:
        raise CapError(f"{len(labels)} worlds exceeds cap {MAX_WORLDS}")


@dataclass(frozen=True)
class KripkeFrame:
    worlds: tuple[str, ...]
    rel: int

    def __post_init__(self):
        object.__setattr__(self, "worlds", make_worlds(self.worlds))
        _check_world_cap(self.worlds)
        if self.rel < 0 or self.rel >> (self.n * self.n):
            raise IndexError("relation has pairs outside the world set")

    @classmethod
    def from_pairs(cls, worlds, pairs) -> KripkeFrame:
        labels = make_worlds(worlds)
        n = len(labels)
        return cls(labels, rel_from_pairs(n, ((_resolve(labels, a), _resolve(labels, b)) for a, b in pairs)))

    @property
    def n(self) -> int:
        return len(self.worlds)

    def pairs(self) -> list[tuple[int, int]]:
        return rel_pairs(self.rel, self.n)


@dataclass(frozen=True)
class MRFrame:
    """Multi-relational Kripke frame: a world set and a nonempty set of
    relations (deduplicated; input order is irrelevant)."""

    worlds: tuple[str, ...]
    rels: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "worlds", make_worlds(self.worlds))
        object.__setattr__(self, "rels", frozenset(self.rels))
        _check_world_cap(self.worlds)
        if not self.rels:
            raise ValueError("a multi-relational frame needs at least one relation")
        if len(self.rels) > MAX_RELATIONS:
            raise CapError(f"{len(self.rels)} relations exceeds cap {MAX_RELATIONS}")
        limit = self.n * self.n
        for r in self.rels:
            if r < 0 or r >> limit:
                raise IndexError("relation has pairs outside the world set")

    @classmethod
    def from_pairs(cls, worlds, relations) -> MRFrame:
        labels = make_worlds(worlds)
        n = len(labels)
        rels = [
            rel_from_pairs(n, ((_resolve(labels, a), _resolve(labels, b)) for a, b in pairs))
            for pairs in relations
        ]
        return cls(labels, frozenset(rels))

    @property
    def n(self) -> int:
        return len(self.worlds)

    @property
    def ordered_rels(self) -> tuple[int, ...]:
        return sort_rels(self.rels, self.n)

    def relation_pairs(self) -> list[list[tuple[int, int]]]:
        return [rel_pairs(r, self.n) for r in self.ordered_rels]


@dataclass(frozen=True)
class NFrame:
    """Neighborhood frame: each world gets a family of subsets (masks)."""

    worlds: tuple[str, ...]
    nbhd: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "worlds", make_worlds(self.worlds))
        object.__setattr__(self, "nbhd", tuple(frozenset(f) for f in self.nbhd))
        _check_world_cap(self.worlds)
        if len(self.nbhd) != self.n:
            raise ValueError(f"neighborhood map has {len(self.nbhd)} entries for {self.n} worlds")
        top = full_mask(self.n)
        for family in self.nbhd:
            for x in family:
                if x < 0 or x & ~top:
                    raise IndexError("neighborhood set outside the world set")

    @classmethod
    def from_sets(cls, worlds, families) -> NFrame:
        labels = make_worlds(worlds)
        return cls(labels, tuple(frozenset(subset_of(labels, s) for s in fam) for fam in families))

    @property
    def n(self) -> int:
        return len(self.worlds)


@dataclass(frozen=True)
class BoxAlgebra:
    """Powerset algebra over an atom base with an explicit box table.

    ``box[x]`` is the image of element ``x`` (a mask over the atoms); the
    table is total on all ``2**n`` elements so non-normal boxes fit too.
    """

    atoms: tuple[str, ...]
    box: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms", make_worlds(self.atoms))
        object.__setattr__(self, "box", tuple(self.box))
        if self.n > MAX_ATOMS:
            raise CapError(f"{self.n} atoms exceeds cap {MAX_ATOMS}")
        if len(self.box) != 1 << self.n:
            raise ValueError(f"box table has {len(self.box)} entries, expected {1 << self.n}")
        top = self.top
        for y in self.box:
            if y < 0 or y & ~top:
                raise ValueError(f"box value {y} is not an element")

    @classmethod
    def identity(cls, atoms) -> BoxAlgebra:
        labels = make_worlds(atoms)
        return cls(labels, tuple(range(1 << len(labels))))

    @classmethod
    def from_atom_rows(cls, atoms, rows: Sequence[int]) -> BoxAlgebra:
        """Normal algebra whose box sends atom ``i`` to ``rows[i]``, extended
        by unions."""
        labels = make_worlds(atoms)
        n = len(labels)
        if len(rows) != n:
            raise ValueError("one row per atom required")
        return cls(labels, tuple(join_all(rows[i] for i in members(x)) for x in range(1 << n)))

    @property
    def n(self) -> int:
        return len(self.atoms)

    @property
    def top(self) -> int:
        return full_mask(self.n)

    @property
    def size(self) -> int:
        return 1 << self.n

    def elements(self) -> range:
        return range(1 << self.n)

    def atom_masks(self) -> list[int]:
        return [1 << i for i in range(self.n)]

    def complement(self, x: int) -> int:
        return self.top & ~x

    def is_atom(self, x: int) -> bool:
        return x != 0 and x & (x - 1) == 0 and x <= self.top


@dataclass(frozen=True)
class ElementMap:
    """A total map between the carriers of two box algebras."""

    source: BoxAlgebra
    target: BoxAlgebra
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.source.size:
            raise ValueError("element map must be total on the source carrier")
        for y in self.table:
            if y < 0 or y & ~self.target.top:
                raise ValueError(f"image {y} is not a target element")

    def __call__(self, x: int) -> int:
        return self.table[x]

    def then(self, other: ElementMap) -> ElementMap:
        """``other`` after ``self``."""
        return ElementMap(self.source, other.target, tuple(other.table[y] for y in self.table))


# -- algebra classification --------------------------------------------------

@dataclass(frozen=True)
class AlgebraClass:
    box_zero_is_zero: bool
    monotone: bool
    binary_additive: bool
    kappa_additive: bool
    kappa: Kappa = ALL
    witnesses: dict[str, tuple] = field(default_factory=dict, compare=False)

    @property
    def normal(self) -> bool:
        return self.box_zero_is_zero and self.binary_additive

    def as_dict(self, atoms: Sequence[str] | None = None) -> dict[str, Any]:
        out: dict[str, Any] = {
            "box_zero_is_zero": self.box_zero_is_zero,
            "monotone": self.monotone,
            "binary_additive": self.binary_additive,
            "kappa_additive": self.kappa_additive,
            "kappa": str(self.kappa),
        }
        if atoms is not None and self.witnesses:
            out["witnesses"] = {
                name: [subset_labels(atoms, x) for x in w] for name, w in sorted(self.witnesses.items())
            }
        return out


def _additivity_witness(A: BoxAlgebra, kappa: Kappa) -> tuple[int, ...] | None:
    """First family X (|X| admitted by kappa) with join(box[X]) != box(join X).

    Explores the reachable (join X, join box[X]) pairs breadth-first by
    family size; a repeated member never yields a new pair, so every pair
    reached at depth d comes from a genuine family of d distinct elements.
    """
    box = A.box
    seen: dict[tuple[int, int], tuple[int, ...]] = {(0, 0): ()}
    frontier = [(0, 0)]
    if box[0] != 0:
        return ()
    for _ in range(kappa.max_size(A.size)):
        nxt = []
        for state in frontier:
            u, v = state
            fam = seen[state]
            for x in A.elements():
                new = (u | x, v | box[x])
                if new in seen:
                    continue
                seen[new] = fam + (x,)
                if box[new[0]] != new[1]:
                    return tuple(sorted(seen[new]))
                nxt.append(new)
        if not nxt:
            break
        frontier = nxt
    return None


def validate_algebra(A: BoxAlgebra, kappa: Kappa = ALL) -> AlgebraClass:
    """Classify the box of ``A`` against the modal algebra axioms."""
    box = A.box
    witnesses: dict[str, tuple] = {}
    zero = box[0] == 0
    if not zero:
        witnesses["box_zero_is_zero"] = (0,)

    monotone = True
    additive = True
    for x in A.elements():
        for y in A.elements():
            if monotone and x & ~y == 0 and box[x] & ~box[y]:
                monotone = False
                witnesses["monotone"] = (x, y)
            if additive and x <= y and box[x | y] != box[x] | box[y]:
                additive = False
                witnesses["binary_additive"] = (x, y)

    fam = _additivity_witness(A, kappa)
    if fam is not None:
        witnesses["kappa_additive"] = fam
    return AlgebraClass(zero, monotone, additive, fam is None, kappa, witnesses)


def is_normal(A: BoxAlgebra) -> bool:
    return validate_algebra(A, Kappa(3)).normal


# -- frame validators --------------------------------------------------------

def check_kappa_dd(M: MRFrame, kappa: Kappa = ALL) -> Report:
    """Is every admitted subfamily of relations bounded below inside the set?

    On failure the witness is the first unbounded subfamily (smallest size,
    then canonical relation order).
    """
    n = M.n
    rels = M.ordered_rels
    top = total_rel(n)

    def bounded(meet: int) -> bool:
        return any(r & ~meet == 0 for r in rels)

    seen: dict[int, tuple[int, ...]] = {top: ()}
    frontier = [top]
    failure = None
    for _ in range(kappa.max_size(len(rels))):
        nxt = []
        for meet in frontier:
            fam = seen[meet]
            for r in rels:
                new = meet & r
                if new in seen:
                    continue
                seen[new] = fam + (r,)
                if not bounded(new):
                    failure = seen[new]
                    break
                nxt.append(new)
            if failure is not None:
                break
        if failure is not None or not nxt:
            break
        frontier = nxt

    if kappa.is_all:
        # ⋂S ∈ S is the closed-form test for complete directedness.
        direct = meet_all(rels, top) in M.rels
        if direct != (failure is None):
            raise AssertionError("directedness routes disagree")

    if failure is None:
        return PASS
    return Report(
        False,
        "directed",
        (failure,),
        {"relations": [[[M.worlds[i], M.worlds[j]] for i, j in rel_pairs(r, n)] for r in failure]},
    )


def is_all_directed(M: MRFrame) -> bool:
    return meet_all(M.rels, total_rel(M.n)) in M.rels


def _upward_witness(Z: NFrame, c: int) -> Report | None:
    family, labels = Z.nbhd[c], Z.worlds
    for x in sorted(family):
        for y in supersets(x, Z.n):
            if y not in family:
                return Report(
                    False,
                    "upward_closed",
                    (c, x, y),
                    {"world": labels[c], "member": subset_labels(labels, x), "missing": subset_labels(labels, y)},
                )
    return None


def check_upward_closed(Z: NFrame) -> Report:
    """Upward closure alone; the first member with a missing superset."""
    for c in range(Z.n):
        up = _upward_witness(Z, c)
        if up is not None:
            return up
    return PASS


def check_nfr(Z: NFrame, kappa: Kappa = ALL) -> Report:
    """Whole set, upward closure, and closure under admitted nonempty
    intersections, checked world by world."""
    n = Z.n
    top = full_mask(n)
    labels = Z.worlds
    for c in range(n):
        family = Z.nbhd[c]
        if top not in family:
            return Report(False, "whole_set", (c,), {"world": labels[c]})
        up = _upward_witness(Z, c)
        if up is not None:
            return up
        members_sorted = sorted(family)
        seen: dict[int, tuple[int, ...]] = {}
        frontier = []
        for x in members_sorted:
            seen.setdefault(x, (x,))
            frontier.append(x)
        for _ in range(kappa.max_size(len(members_sorted)) - 1):
            nxt = []
            for meet in frontier:
                for x in members_sorted:
                    new = meet & x
                    if new in seen:
                        continue
                    seen[new] = seen[meet] + (x,)
                    if new not in family:
                        fam = seen[new]
                        return Report(
                            False,
                            "intersection",
                            (c, fam),
                            {"world": labels[c], "family": [subset_labels(labels, s) for s in fam]},
                        )
                    nxt.append(new)
            if not nxt:
                break
            frontier = nxt
    return PASS


def subfamilies(items: Sequence[Any], max_size: int) -> Iterable[tuple[Any, ...]]:
    """All subfamilies of ``items`` with at most ``max_size`` members."""
    for size in range(min(max_size, len(items)) + 1):
        yield from combinations(items, size)
