"""Finite carriers and tabulated partial n-place functions.

A partial n-place function is stored as a dict from n-tuples to values;
partiality is the absence of a key. Values are treated as immutable once
constructed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple

from .errors import ArityMismatch, CarrierMismatch, MalformedTuple

Element = Hashable
Point = tuple


@dataclass(frozen=True)
class Carrier:
    elements: tuple
    _index: Mapping = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise ValueError("carrier must be nonempty")
        index = {x: k for k, x in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError(f"duplicate carrier elements in {elements!r}")
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        try:
            return x in self._index
        except TypeError:
            return False

    def index(self, x) -> int:
        return self._index[x]

    def tuples(self, n: int) -> Iterator[tuple]:
        return itertools.product(self.elements, repeat=n)


class PlaceFunction:
    """A partial map ``carrier**arity -> carrier``.

    Equality is structural: same arity, same carrier, same graph.
    """

    __slots__ = ("arity", "carrier", "_entries", "_hash")

    def __init__(self, arity: int, carrier: Carrier, entries: Mapping | Iterable = (), check=True):
        if not isinstance(carrier, Carrier):
            carrier = Carrier(tuple(carrier))
        if arity < 1:
            raise ArityMismatch(f"arity must be positive, got {arity}")
        if isinstance(entries, Mapping):
            table = dict(entries)
        else:
            table = {}
            for key, value in entries:
                key = tuple(key)
                if key in table:
                    raise MalformedTuple(f"duplicate argument tuple {key!r}")
                table[key] = value
        if check:
            for key, value in table.items():
                _check_tuple(key, arity, carrier)
                if value not in carrier:
                    raise MalformedTuple(f"value {value!r} not in carrier")
        self.arity = arity
        self.carrier = carrier
        self._entries = table
        self._hash = None

    @property
    def entries(self) -> Mapping:
        return MappingProxyType(self._entries)

    def get(self, point, default=None):
        return self._entries.get(point, default)

    def __call__(self, *point):
        return self._entries[point]

    def __contains__(self, point):
        return point in self._entries

    def __len__(self):
        return len(self._entries)

    def items(self):
        return self._entries.items()

    @property
    def is_total(self) -> bool:
        return len(self._entries) == len(self.carrier) ** self.arity

    def __eq__(self, other):
        if not isinstance(other, PlaceFunction):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.carrier == other.carrier
            and self._entries == other._entries
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, frozenset(self._entries.items())))
        return self._hash

    def __repr__(self):
        body = ", ".join(f"{k}->{v!r}" for k, v in sorted(self._entries.items(), key=repr))
        return f"PlaceFunction(n={self.arity}, {{{body}}})"


class TotalityWitness(NamedTuple):
    function: PlaceFunction
    is_total: bool


class Check(NamedTuple):
    """Verdict plus an optional counterexample; truthy iff ``ok``."""

    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


def _check_tuple(point, arity, carrier):
    if not isinstance(point, tuple) or len(point) != arity:
        raise MalformedTuple(f"expected a {arity}-tuple, got {point!r}")
    for x in point:
        if x not in carrier:
            raise MalformedTuple(f"{x!r} is not in the carrier")


def same_shape(f: PlaceFunction, g: PlaceFunction):
    if f.arity != g.arity:
        raise ArityMismatch(f"arities {f.arity} and {g.arity} differ")
    if f.carrier is not g.carrier and f.carrier != g.carrier:
        raise CarrierMismatch("functions live on different carriers")


def totality(f: PlaceFunction) -> TotalityWitness:
    return TotalityWitness(f, f.is_total)


def domain(f: PlaceFunction) -> frozenset:
    return frozenset(f._entries)


def includes(f: PlaceFunction, g: PlaceFunction) -> bool:
    """True iff f is a restriction of g (``f ⊂ g`` as graphs)."""
    same_shape(f, g)
    ge = g._entries
    for point, value in f._entries.items():
        if point not in ge or ge[point] != value:
            return False
    return True


def restrict(f: PlaceFunction, points) -> PlaceFunction:
    points = set(points)
    for point in points:
        _check_tuple(point, f.arity, f.carrier)
    return PlaceFunction(
        f.arity, f.carrier, {p: v for p, v in f._entries.items() if p in points}, check=False
    )


def value_set(f: PlaceFunction, point) -> frozenset:
    _check_tuple(point, f.arity, f.carrier)
    if point in f._entries:
        return frozenset([f._entries[point]])
    return frozenset()


def empty_function(n: int, carrier) -> PlaceFunction:
    return PlaceFunction(n, carrier, {}, check=False)


def constant_function(n: int, carrier, value) -> PlaceFunction:
    carrier = carrier if isinstance(carrier, Carrier) else Carrier(tuple(carrier))
    return PlaceFunction(n, carrier, {p: value for p in carrier.tuples(n)})


def all_functions(carrier, n: int, total=True) -> Iterator[PlaceFunction]:
    """Every total (or every partial) n-place function on ``carrier``, in a fixed order."""
    carrier = carrier if isinstance(carrier, Carrier) else Carrier(tuple(carrier))
    points = list(carrier.tuples(n))
    choices = list(carrier.elements) if total else [None, *carrier.elements]
    for values in itertools.product(choices, repeat=len(points)):
        yield PlaceFunction(
            n,
            carrier,
            {p: v for p, v in zip(points, values) if v is not None},
            check=False,
        )


def random_function(carrier, n: int, rng: random.Random, density=0.7) -> PlaceFunction:
    """Each point is in the domain with probability ``density``; values uniform."""
    carrier = carrier if isinstance(carrier, Carrier) else Carrier(tuple(carrier))
    elements = carrier.elements
    return PlaceFunction(
        n,
        carrier,
        {p: rng.choice(elements) for p in carrier.tuples(n) if rng.random() < density},
        check=False,
    )


def union_functions(functions, carrier, n: int):
    """Graph union on ``carrier``: ``(function, None)`` or ``(None, (point, v1, v2))`` on a clash."""
    carrier = carrier if isinstance(carrier, Carrier) else Carrier(tuple(carrier))
    out: dict = {}
    for f in functions:
        for point, value in f._entries.items():
            prev = out.setdefault(point, value)
            if prev != value:
                return None, (point, prev, value)
    return PlaceFunction(n, carrier, out), None
