"""Order-theoretic helpers on powerset algebras: relation images, adjoints
of complete homomorphisms, the element ``p(X, a)``, upward closure, and the
equivalent characterizations of atoms.

Empty joins are 0 and empty meets are 1 throughout.
"""
from __future__ import annotations

from typing import Iterable

from .core import (
    BoxAlgebra,
    ElementMap,
    image_down,
    image_up,
    is_subset,
    supersets,
)
from .morphisms import is_cba_hom


def relation_image(rel: int, n: int, x: int, direction: str = "up") -> int:
    """Forward (``up``) or backward (``down``) image of the subset ``x``."""
    if x < 0 or x >> n:
        raise IndexError(f"subset {x} outside {n} worlds")
    if direction == "up":
        return image_up(rel, n, x)
    if direction == "down":
        return image_down(rel, n, x)
    raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")


def adjoint(f: ElementMap, b: int, side: str = "left", *, check: bool = True) -> int:
    """Right adjoint: join of every x with f(x) <= b.
    Left adjoint: meet of every x with b <= f(x)."""
    if check:
        verdict = is_cba_hom(f)
        if not verdict:
            raise ValueError(f"not a complete Boolean homomorphism ({verdict.condition})")
    A = f.source
    if side == "right":
        out = 0
        for x in A.elements():
            if is_subset(f.table[x], b):
                out |= x
        return out
    if side == "left":
        out = A.top
        for x in A.elements():
            if is_subset(b, f.table[x]):
                out &= x
        return out
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def right_adjoint(f: ElementMap, b: int, **kw) -> int:
    return adjoint(f, b, "right", **kw)


def left_adjoint(f: ElementMap, b: int, **kw) -> int:
    return adjoint(f, b, "left", **kw)


def p_element(A: BoxAlgebra, X: Iterable[int], a: int) -> int:
    """Join of the members of X whose box lies below the complement of atom a."""
    if not A.is_atom(a):
        raise ValueError(f"{a} is not an atom")
    not_a = A.complement(a)
    out = 0
    for x in X:
        if is_subset(A.box[x], not_a):
            out |= x
    return out


def up_closure(family: Iterable[int], n: int) -> frozenset[int]:
    out: set[int] = set()
    for x in family:
        if x in out:
            continue
        out.update(supersets(x, n))
    return frozenset(out)


# -- atoms -------------------------------------------------------------------

def atom_conditions(A: BoxAlgebra, e: int) -> tuple[bool, bool, bool, bool]:
    """The four atom characterizations of a nonzero element, by brute force:
    minimal nonzero, completely join-irreducible, join-irreducible, and
    prime against complements."""
    if e == 0:
        raise ValueError("atom conditions are stated for nonzero elements")
    elems = list(A.elements())
    minimal = not any(0 < x and x != e and is_subset(x, e) for x in elems)
    # e <= join X with no member above e happens iff some union of members
    # not above e covers e; reachable unions are closed under |.
    reach = {0}
    for x in elems:
        if not is_subset(e, x):
            reach |= {u | x for u in reach}
    complete_irr = not any(is_subset(e, u) for u in reach)
    join_irr = all(
        not is_subset(e, x | y) or is_subset(e, x) or is_subset(e, y) for x in elems for y in elems
    )
    prime = all(is_subset(e, x) or is_subset(e, A.complement(x)) for x in elems)
    return minimal, complete_irr, join_irr, prime


def check_atom_characterizations(A: BoxAlgebra) -> bool:
    """All four characterizations agree on every nonzero element and pick
    out exactly the singletons."""
    for e in range(1, A.size):
        conds = atom_conditions(A, e)
        if len(set(conds)) != 1 or conds[0] != A.is_atom(e):
            return False
    return True


def atoms_of(A: BoxAlgebra) -> list[int]:
    return [e for e in range(1, A.size) if atom_conditions(A, e)[0]]
