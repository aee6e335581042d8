"""Enumerate small (2,n)-semigroups and classify each one as representable or not.

Tables are tuples of rows of element indices over ``range(order)``. The
canonical form of an algebra is the lexicographic minimum, over all carrier
permutations applied to every table at once, of the flattened tables.
"""

from __future__ import annotations

import hashlib
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .algebra import MultiSemigroup, eval_sequence, mu_star
from .errors import TooLarge
from .representability import ClosureAutomaton, closure

MAX_CANDIDATES = 10**8
MAX_ORDER = 4


@lru_cache(maxsize=None)
def associative_tables(order: int) -> tuple:
    """All associative operation tables on ``range(order)``, found by backtracking."""
    if order < 1:
        raise ValueError("order must be positive")
    if order > MAX_ORDER:
        raise TooLarge(f"order {order} exceeds {MAX_ORDER}")
    m = order
    cells = [(x, y) for x in range(m) for y in range(m)]
    t = [[None] * m for _ in range(m)]
    out = []

    def consistent():
        for x in range(m):
            for y in range(m):
                xy = t[x][y]
                if xy is None:
                    continue
                for z in range(m):
                    yz = t[y][z]
                    if yz is None:
                        continue
                    l, r = t[xy][z], t[x][yz]
                    if l is not None and r is not None and l != r:
                        return False
        return True

    def fill(k):
        if k == len(cells):
            out.append(tuple(tuple(row) for row in t))
            return
        x, y = cells[k]
        for v in range(m):
            t[x][y] = v
            if consistent():
                fill(k + 1)
        t[x][y] = None

    fill(0)
    return tuple(out)


def _permute(table, perm):
    m = len(perm)
    inv = [0] * m
    for x, px in enumerate(perm):
        inv[px] = x
    return tuple(tuple(perm[table[inv[a]][inv[b]]] for b in range(m)) for a in range(m))


def encode(tables) -> tuple:
    return tuple(v for t in tables for row in t for v in row)


def canonical_form(tables) -> tuple:
    m = len(tables[0])
    return min(
        encode([_permute(t, perm) for t in tables]) for perm in itertools.permutations(range(m))
    )


def algebra_id(code: tuple) -> str:
    return hashlib.sha256(",".join(map(str, code)).encode()).hexdigest()[:16]


def make_algebra(tables) -> MultiSemigroup:
    m = len(tables[0])
    return MultiSemigroup(tuple(str(k) for k in range(m)), tuple(tables))


@dataclass
class CensusRecord:
    algebra_id: str  # hash of these exact tables
    class_id: str  # hash of the canonical form; shared by isomorphic algebras
    n: int
    size: int
    tables: tuple
    representable: bool
    violation: dict | None
    state_count: int

    def as_dict(self):
        return {
            "algebra_id": self.algebra_id,
            "class_id": self.class_id,
            "n": self.n,
            "size": self.size,
            "tables": [[list(r) for r in t] for t in self.tables],
            "representable": self.representable,
            "violation": self.violation,
            "state_count": self.state_count,
        }


def classify(tables, cap: int = 10**6) -> CensusRecord:
    G = make_algebra(tables)
    result = closure(G, cap=cap)
    ok = isinstance(result, ClosureAutomaton)
    return CensusRecord(
        algebra_id=algebra_id(encode(tables)),
        class_id=algebra_id(canonical_form(tables)),
        n=G.n,
        size=G.size,
        tables=tuple(tables),
        representable=ok,
        violation=None if ok else result.describe(G),
        state_count=len(result) if ok else result.states_seen,
    )


def candidate_count(n: int, order: int) -> int:
    return len(associative_tables(order)) ** n


def candidates(n: int, order: int, dedup: bool = False):
    if n < 1:
        raise ValueError("n must be positive")
    total = candidate_count(n, order)
    if total > MAX_CANDIDATES:
        raise TooLarge(f"{total} candidate table tuples exceeds {MAX_CANDIDATES}")
    tables = associative_tables(order)
    if not dedup:
        yield from itertools.product(tables, repeat=n)
        return
    seen = set()
    for combo in itertools.product(tables, repeat=n):
        code = canonical_form(combo)
        if code not in seen:
            seen.add(code)
            yield combo


def census(n: int, order: int, dedup: bool = False, workers: int = 0, cap: int = 10**6):
    """Stream a :class:`CensusRecord` for every tuple of associative tables (one per class if ``dedup``)."""
    work = list(candidates(n, order, dedup))
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(classify, work, itertools.repeat(cap), chunksize=64))
    else:
        records = (classify(t, cap) for t in work)
    # Candidate order is already deterministic; the pool preserves it.
    yield from records


def oracle_representable(G: MultiSemigroup, max_len: int = 4) -> bool:
    """Brute force: group every sequence up to ``max_len`` by μ*-tuple and compare action maps."""
    moves = [(i, y) for i in range(1, G.n + 1) for y in range(G.size)]
    actions: dict = {}
    for length in range(max_len + 1):
        for seq in itertools.product(moves, repeat=length):
            key = mu_star(G, list(seq))
            act = tuple(eval_sequence(G, g, seq) for g in range(G.size))
            if actions.setdefault(key, act) != act:
                return False
    return True
