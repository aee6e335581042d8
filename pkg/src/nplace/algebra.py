"""Finite (2,n)-semigroups given by operation tables, and μ-tuples of composition sequences.

Elements are interned as indices ``0..m-1``; ``elements`` keeps the external labels.
Operation positions are 1-based.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from .errors import MalformedTable, NotAssociative, PositionOutOfRange, UnknownElement


class OpMove(NamedTuple):
    """One step ``∘_position operand`` of a composition sequence."""

    position: int
    operand: int


@dataclass(frozen=True, order=True)
class Selector:
    """The marker e_i standing in slot i of a μ*-tuple when slot i was never used."""

    index: int

    def __repr__(self):
        return f"e{self.index}"


def selectors(n: int) -> tuple:
    return tuple(Selector(i) for i in range(1, n + 1))


@dataclass(frozen=True)
class MultiSemigroup:
    elements: tuple
    tables: tuple  # tables[i-1][x][y] = x ∘_i y, as indices

    @property
    def n(self) -> int:
        return len(self.tables)

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self):
        return {x: k for k, x in enumerate(self.elements)}

    def index(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"{label!r} is not an element") from None

    def label(self, k: int):
        return self.elements[k]

    def op(self, i: int, x: int, y: int) -> int:
        return self.tables[i - 1][x][y]

    def moves(self) -> list[OpMove]:
        return [OpMove(i, y) for i in range(1, self.n + 1) for y in range(self.size)]

    def __repr__(self):
        return f"MultiSemigroup(n={self.n}, elements={list(self.elements)})"


def _normalize_tables(size, tables):
    out = []
    for t in tables:
        if len(t) != size or any(len(row) != size for row in t):
            raise MalformedTable(f"tables must be {size}x{size}")
        rows = []
        for row in t:
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < size:
                    raise MalformedTable(f"table entry {v!r} is not an element index")
            rows.append(tuple(row))
        out.append(tuple(rows))
    return tuple(out)


def associativity_counterexample(table) -> tuple | None:
    m = len(table)
    for x, y, z in itertools.product(range(m), repeat=3):
        if table[table[x][y]][z] != table[x][table[y][z]]:
            return x, y, z
    return None


def validate(elements: Sequence, tables: Sequence) -> MultiSemigroup:
    """Check shape and associativity of every table; raise on the first defect."""
    elements = tuple(elements)
    if not elements:
        raise MalformedTable("carrier must be nonempty")
    if len(set(elements)) != len(elements):
        raise MalformedTable("duplicate element labels")
    if not tables:
        raise MalformedTable("need at least one operation")
    tables = _normalize_tables(len(elements), tables)
    for i, t in enumerate(tables, start=1):
        bad = associativity_counterexample(t)
        if bad is not None:
            x, y, z = bad
            raise NotAssociative(i, elements[x], elements[y], elements[z])
    return MultiSemigroup(elements, tables)


def eval_sequence(G: MultiSemigroup, g: int, seq) -> int:
    """``g ∘_{i1} y1 ∘_{i2} .. ∘_{ik} yk`` folded from the left."""
    m = G.size
    if not 0 <= g < m:
        raise UnknownElement(f"{g!r} is not an element index")
    for pos, y in seq:
        if not 0 <= y < m:
            raise UnknownElement(f"{y!r} is not an element index")
        g = G.tables[pos - 1][g][y]
    return g


def mu(G: MultiSemigroup, seq, i: int):
    """μ_i of a sequence: residual composite from the first use of slot i, else None."""
    if not 1 <= i:
        raise PositionOutOfRange(f"position {i} must be positive")
    for k, (pos, y) in enumerate(seq):
        if pos == i:
            return eval_sequence(G, y, seq[k + 1:])
    return None


def mu_star(G: MultiSemigroup, seq) -> tuple:
    """μ*-tuple: μ_i where defined, the marker e_i elsewhere."""
    out = []
    for i in range(1, G.n + 1):
        v = mu(G, seq, i)
        out.append(Selector(i) if v is None else v)
    return tuple(out)


def mu_step(G: MultiSemigroup, t: tuple, move) -> tuple:
    """μ*(s ++ [move]) from μ*(s) without replaying s."""
    p, y = move
    table = G.tables[p - 1]
    out = list(t)
    for j, x in enumerate(t):
        if isinstance(x, Selector):
            if j == p - 1:
                out[j] = y
        else:
            out[j] = table[x][y]
    return tuple(out)


def initial_tuple(n: int) -> tuple:
    return selectors(n)


def parse_sequence(G: MultiSemigroup, seq) -> list[OpMove]:
    """Accept ``[(position, label), ...]`` and return index-based moves."""
    out = []
    for pos, label in seq:
        if not 1 <= pos <= G.n:
            raise PositionOutOfRange(f"position {pos} not in 1..{G.n}")
        out.append(OpMove(pos, G.index(label)))
    return out


# A few standard algebras, handy in tests and scripts.

def from_operation(elements, n: int, fn) -> MultiSemigroup:
    """All n operations equal to ``fn(x, y)`` on element indices."""
    m = len(elements)
    table = [[fn(x, y) for y in range(m)] for x in range(m)]
    return validate(elements, [table] * n)


def left_zero(size=2, n=2) -> MultiSemigroup:
    return from_operation(tuple(string.ascii_lowercase[:size]), n, lambda x, y: x)


def right_zero(size=2, n=2) -> MultiSemigroup:
    return from_operation(tuple(string.ascii_lowercase[:size]), n, lambda x, y: y)


def cyclic_add(m=2, n=2) -> MultiSemigroup:
    return from_operation(tuple(str(k) for k in range(m)), n, lambda x, y: (x + y) % m)


def one_element(n=2) -> MultiSemigroup:
    return validate(("a",), [[[0]]] * n)
