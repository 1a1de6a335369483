"""JSON documents for frames, algebras and maps.

Canonical form: one compact JSON line, fixed key order, worlds in declared
order, subsets listed in world order, relation pairs lexicographic, sets of
subsets and relations sorted by their canonical keys.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Union

from .core import (
    BoxAlgebra,
    ElementMap,
    KripkeFrame,
    MRFrame,
    NFrame,
    make_worlds,
    rel_pairs,
    subset_labels,
)

KINDS = ("kripke", "mkf", "nfr", "cama", "map")

FIELDS = {
    "kripke": ("kind", "worlds", "relation"),
    "mkf": ("kind", "worlds", "relations"),
    "nfr": ("kind", "worlds", "neighborhoods"),
    "cama": ("kind", "atoms", "box"),
    "map": ("kind", "pairs"),
}


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        if line is not None:
            message = f"line {line} column {column}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class MapDocument:
    """A map given by label pairs; world maps pair labels, element maps pair
    label lists.  Resolved against concrete source/target structures."""

    pairs: tuple[tuple[Any, Any], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs, key=lambda p: p[0])))

    @property
    def is_element_map(self) -> bool:
        return bool(self.pairs) and isinstance(self.pairs[0][0], tuple)

    def world_map(self, src: tuple[str, ...], dst: tuple[str, ...]) -> tuple[int, ...]:
        if self.is_element_map:
            raise DocumentError("expected a world map, got an element map")
        table: dict[str, str] = dict(self.pairs)
        missing = [w for w in src if w not in table]
        if missing:
            raise DocumentError(f"map is not total: no image for {missing}")
        extra = [w for w in table if w not in src]
        if extra:
            raise DocumentError(f"map mentions unknown source worlds {extra}")
        where = {w: i for i, w in enumerate(dst)}
        out = []
        for w in src:
            if table[w] not in where:
                raise DocumentError(f"map sends {w!r} to unknown target world {table[w]!r}")
            out.append(where[table[w]])
        return tuple(out)

    def element_map(self, A: BoxAlgebra, B: BoxAlgebra) -> ElementMap:
        if self.pairs and not self.is_element_map:
            raise DocumentError("expected an element map, got a world map")
        table: dict[int, int] = {}
        for x, y in self.pairs:
            xm = _mask(A.atoms, list(x), "map source element")
            if xm in table:
                raise DocumentError(f"element {list(x)} mapped twice")
            table[xm] = _mask(B.atoms, list(y), "map target element")
        missing = [subset_labels(A.atoms, x) for x in A.elements() if x not in table]
        if missing:
            raise DocumentError(f"element map is not total: missing {missing}")
        return ElementMap(A, B, tuple(table[x] for x in A.elements()))


Document = Union[KripkeFrame, MRFrame, NFrame, BoxAlgebra, MapDocument]


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise DocumentError(f"duplicate field {k!r}")
        out[k] = v
    return out


def _labels(value, what: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise DocumentError(f"{what} must be a list of strings")
    try:
        return make_worlds(value)
    except ValueError as exc:
        raise DocumentError(f"{what}: {exc}") from None


def _mask(labels: tuple[str, ...], items, what: str) -> int:
    if not isinstance(items, list):
        raise DocumentError(f"{what} must be a list of labels, got {items!r}")
    mask = 0
    for item in items:
        if item not in labels:
            raise DocumentError(f"{what} references unknown label {item!r}")
        bit = 1 << labels.index(item)
        if mask & bit:
            raise DocumentError(f"{what} repeats label {item!r}")
        mask |= bit
    return mask


def _relation(labels: tuple[str, ...], pairs, what: str) -> int:
    if not isinstance(pairs, list):
        raise DocumentError(f"{what} must be a list of pairs")
    n = len(labels)
    rel = 0
    for pair in pairs:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise DocumentError(f"{what}: malformed pair {pair!r}")
        a, b = pair
        for w in (a, b):
            if w not in labels:
                raise DocumentError(f"{what}: pair {pair!r} references unknown world {w!r}")
        rel |= 1 << (labels.index(a) * n + labels.index(b))
    return rel


def parse_document(text: str) -> Document:
    try:
        data = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    return from_json(data)


def from_json(data: Any) -> Document:
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    kind = data.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"unknown or missing kind {kind!r}; expected one of {list(KINDS)}")
    allowed = FIELDS[kind]
    unknown = sorted(set(data) - set(allowed))
    if unknown:
        raise DocumentError(f"unknown fields for kind {kind!r}: {unknown}")
    missing = [k for k in allowed if k not in data]
    if missing:
        raise DocumentError(f"missing fields for kind {kind!r}: {missing}")

    if kind == "kripke":
        labels = _labels(data["worlds"], "worlds")
        return KripkeFrame(labels, _relation(labels, data["relation"], "relation"))

    if kind == "mkf":
        labels = _labels(data["worlds"], "worlds")
        rels = data["relations"]
        if not isinstance(rels, list) or not rels:
            raise DocumentError("relations must be a nonempty list")
        return MRFrame(labels, frozenset(_relation(labels, r, f"relations[{i}]") for i, r in enumerate(rels)))

    if kind == "nfr":
        labels = _labels(data["worlds"], "worlds")
        nb = data["neighborhoods"]
        if not isinstance(nb, dict):
            raise DocumentError("neighborhoods must be an object keyed by world")
        extra = [k for k in nb if k not in labels]
        if extra:
            raise DocumentError(f"neighborhoods reference unknown worlds {extra}")
        families = []
        for w in labels:
            if w not in nb:
                raise DocumentError(f"no neighborhoods given for world {w!r}")
            fam = nb[w]
            if not isinstance(fam, list):
                raise DocumentError(f"neighborhoods of {w!r} must be a list of subsets")
            masks = [_mask(labels, s, f"neighborhood of {w!r}") for s in fam]
            if len(set(masks)) != len(masks):
                raise DocumentError(f"neighborhoods of {w!r} repeat a subset")
            families.append(frozenset(masks))
        return NFrame(labels, tuple(families))

    if kind == "cama":
        atoms = _labels(data["atoms"], "atoms")
        rows = data["box"]
        if not isinstance(rows, list):
            raise DocumentError("box must be a list of [element, image] pairs")
        table: dict[int, int] = {}
        for row in rows:
            if not (isinstance(row, list) and len(row) == 2):
                raise DocumentError(f"box: malformed entry {row!r}")
            x = _mask(atoms, row[0], "box element")
            if x in table:
                raise DocumentError(f"box: element {row[0]!r} listed twice")
            table[x] = _mask(atoms, row[1], "box image")
        size = 1 << len(atoms)
        missing = [subset_labels(atoms, x) for x in range(size) if x not in table]
        if missing:
            raise DocumentError(f"box table is not total: missing {missing}")
        return BoxAlgebra(atoms, tuple(table[x] for x in range(size)))

    pairs = data["pairs"]
    if not isinstance(pairs, list):
        raise DocumentError("pairs must be a list")
    out = []
    for pair in pairs:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise DocumentError(f"map: malformed pair {pair!r}")
        a, b = pair
        if isinstance(a, str) and isinstance(b, str):
            out.append((a, b))
        elif isinstance(a, list) and isinstance(b, list):
            out.append((tuple(a), tuple(b)))
        else:
            raise DocumentError(f"map: pair {pair!r} mixes labels and element lists")
    if len({type(a) for a, _ in out}) > 1:
        raise DocumentError("map mixes world pairs and element pairs")
    if len({a for a, _ in out}) != len(out):
        raise DocumentError("map lists a source twice")
    return MapDocument(tuple(out))


def _rel_json(rel: int, labels) -> list[list[str]]:
    n = len(labels)
    return [[labels[i], labels[j]] for i, j in rel_pairs(rel, n)]


def to_json(doc: Document) -> dict[str, Any]:
    if isinstance(doc, KripkeFrame):
        return {"kind": "kripke", "worlds": list(doc.worlds), "relation": _rel_json(doc.rel, doc.worlds)}
    if isinstance(doc, MRFrame):
        return {
            "kind": "mkf",
            "worlds": list(doc.worlds),
            "relations": [_rel_json(r, doc.worlds) for r in doc.ordered_rels],
        }
    if isinstance(doc, NFrame):
        return {
            "kind": "nfr",
            "worlds": list(doc.worlds),
            "neighborhoods": {
                w: [subset_labels(doc.worlds, x) for x in sorted(doc.nbhd[i])] for i, w in enumerate(doc.worlds)
            },
        }
    if isinstance(doc, BoxAlgebra):
        return {
            "kind": "cama",
            "atoms": list(doc.atoms),
            "box": [[subset_labels(doc.atoms, x), subset_labels(doc.atoms, doc.box[x])] for x in doc.elements()],
        }
    if isinstance(doc, MapDocument):
        return {
            "kind": "map",
            "pairs": [[list(a), list(b)] if isinstance(a, tuple) else [a, b] for a, b in doc.pairs],
        }
    raise TypeError(f"cannot serialize {type(doc).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False) + "\n"


def serialize_document(doc: Document) -> str:
    return dumps(to_json(doc))


def world_map_document(f, src_labels, dst_labels) -> MapDocument:
    return MapDocument(tuple((src_labels[i], dst_labels[y]) for i, y in enumerate(f)))


def element_map_document(h: ElementMap) -> MapDocument:
    return MapDocument(
        tuple(
            (tuple(subset_labels(h.source.atoms, x)), tuple(subset_labels(h.target.atoms, h.table[x])))
            for x in h.source.elements()
        )
    )
