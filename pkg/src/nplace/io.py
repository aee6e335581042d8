"""JSON documents for algebras, function sets, relations and determining pairs.

Every emitted document carries ``"schema": 1``. Carrier points that are not
plain strings (selectors, the totalisation sentinel, tagged points of a sum)
are rendered to strings, with primes appended if two points would collide.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import MultiSemigroup, Selector, validate
from .core_types import Carrier, PlaceFunction
from .determining_pairs import BinaryRelation, DeterminingPair, PartialEquivalence
from .errors import LoadError, MalformedTuple, NPlaceError
from .representability import Representation, UnitaryExtension

SCHEMA = 1


def read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise LoadError(f"{path}: expected a JSON object")
    return doc


def write_json(doc: dict, path=None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=False)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def _require(doc, key, kind):
    if key not in doc:
        raise LoadError(f"missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise LoadError(f"field {key!r} has the wrong type")
    return value


# --- labels -----------------------------------------------------------------

def render_point(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, Selector):
        return repr(x)
    if isinstance(x, tuple):
        return ":".join(render_point(v) for v in x)
    return str(x) if isinstance(x, int) else repr(x)


def point_names(points) -> dict:
    """Map each point to a distinct string name."""
    names: dict = {}
    used: set = set()
    for x in points:
        name = render_point(x)
        while name in used:
            name += "'"
        used.add(name)
        names[x] = name
    return names


# --- algebras ---------------------------------------------------------------

def algebra_to_doc(G: MultiSemigroup) -> dict:
    return {
        "schema": SCHEMA,
        "n": G.n,
        "elements": [render_point(x) for x in G.elements],
        "tables": [[list(row) for row in t] for t in G.tables],
    }


def algebra_from_doc(doc: dict) -> MultiSemigroup:
    elements = _require(doc, "elements", list)
    tables = _require(doc, "tables", list)
    n = doc.get("n", len(tables))
    if not isinstance(n, int) or n != len(tables):
        raise LoadError(f"'n' is {n!r} but {len(tables)} tables were given")
    for x in elements:
        if not isinstance(x, (str, int)) or isinstance(x, bool):
            raise LoadError(f"element label {x!r} must be a string or integer")
    return validate(elements, tables)


def load_algebra(path) -> MultiSemigroup:
    return algebra_from_doc(read_json(path))


# --- function sets and representations ----------------------------------------

def functions_to_doc(functions: dict, algebra: MultiSemigroup | None = None) -> dict:
    """``functions`` maps names to PlaceFunctions sharing one arity and carrier."""
    first = next(iter(functions.values()))
    names = point_names(first.carrier)
    doc = {
        "schema": SCHEMA,
        "arity": first.arity,
        "carrier": [names[x] for x in first.carrier],
        "functions": {
            str(name): [
                [[names[x] for x in point], names[v]] for point, v in f.items()
            ]
            for name, f in functions.items()
        },
    }
    if algebra is not None:
        doc["algebra"] = algebra_to_doc(algebra)
    return doc


def representation_to_doc(R: Representation) -> dict:
    return functions_to_doc(
        {render_point(R.algebra.label(g)): f for g, f in enumerate(R.assignment)}, R.algebra
    )


def functions_from_doc(doc: dict):
    """Return ``(arity, carrier, {name: PlaceFunction})``."""
    arity = _require(doc, "arity", int)
    carrier_list = _require(doc, "carrier", list)
    raw = _require(doc, "functions", dict)
    try:
        carrier = Carrier(tuple(carrier_list))
    except (ValueError, TypeError) as exc:
        raise LoadError(f"bad carrier: {exc}") from None
    out = {}
    for name, entries in raw.items():
        if not isinstance(entries, list):
            raise LoadError(f"function {name!r}: expected a list of [args, value] entries")
        pairs = []
        for entry in entries:
            if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], list)):
                raise LoadError(f"function {name!r}: malformed entry {entry!r}")
            pairs.append((tuple(entry[0]), entry[1]))
        try:
            out[name] = PlaceFunction(arity, carrier, pairs)
        except MalformedTuple as exc:
            raise LoadError(f"function {name!r}: {exc}") from None
        except NPlaceError as exc:
            raise LoadError(f"function {name!r}: {exc}") from None
    if not out:
        raise LoadError("no functions given")
    return arity, carrier, out


def load_functions(path):
    return functions_from_doc(read_json(path))


def representation_from_doc(doc: dict, algebra: MultiSemigroup | None = None) -> Representation:
    if algebra is None:
        if "algebra" not in doc:
            raise LoadError("representation file has no 'algebra' and none was given")
        algebra = algebra_from_doc(doc["algebra"])
    arity, carrier, functions = functions_from_doc(doc)
    if arity != algebra.n:
        raise LoadError(f"arity {arity} differs from the algebra's n={algebra.n}")
    by_name = {render_point(x): x for x in algebra.elements}
    if set(functions) != set(by_name):
        raise LoadError("function names must be exactly the element labels")
    assignment = tuple(functions[render_point(x)] for x in algebra.elements)
    return Representation(algebra, carrier, assignment)


def load_representation(path, algebra=None) -> Representation:
    return representation_from_doc(read_json(path), algebra)


# --- relations and pairs ------------------------------------------------------

def relation_to_doc(rho: BinaryRelation, G: MultiSemigroup) -> dict:
    return {"schema": SCHEMA, "pairs": rho.labelled(G)}


def relation_from_doc(doc: dict, G: MultiSemigroup) -> BinaryRelation:
    pairs = _require(doc, "pairs", list)
    for p in pairs:
        if not (isinstance(p, list) and len(p) == 2):
            raise LoadError(f"malformed pair {p!r}")
    return BinaryRelation.from_labels(G, [tuple(p) for p in pairs])


def extension_to_doc(ext: UnitaryExtension) -> dict:
    doc = algebra_to_doc(ext.algebra)
    doc["selectors"] = [render_point(ext.algebra.label(k)) for k in ext.selectors]
    return doc


def extension_from_doc(doc: dict, G: MultiSemigroup) -> UnitaryExtension:
    E = algebra_from_doc(doc)
    sel_labels = _require(doc, "selectors", list)
    if len(sel_labels) != E.n:
        raise LoadError(f"need {E.n} selectors, got {len(sel_labels)}")
    selectors = tuple(E.index(x) for x in sel_labels)
    embedding = tuple(E.index(x) for x in G.elements)
    return UnitaryExtension(G, E, selectors, embedding)


def pair_to_doc(dp: DeterminingPair) -> dict:
    X = dp.extension.algebra
    return {
        "schema": SCHEMA,
        "extension": extension_to_doc(dp.extension),
        "classes": [sorted(render_point(X.label(x)) for x in c) for c in dp.E.classes],
        "W": sorted(render_point(X.label(x)) for x in dp.W),
    }


def pair_from_doc(doc: dict, G: MultiSemigroup) -> DeterminingPair:
    ext = extension_from_doc(_require(doc, "extension", dict), G)
    X = ext.algebra
    classes = _require(doc, "classes", list)
    W = _require(doc, "W", list)
    try:
        E = PartialEquivalence(X.size, tuple(frozenset(X.index(x) for x in c) for c in classes))
    except TypeError:
        raise LoadError("classes must be lists of element labels") from None
    return DeterminingPair(ext, E, frozenset(X.index(x) for x in W))
