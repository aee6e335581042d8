"""Mann compositions, Menger superposition, projectors, and an identity checker.

Positions are 1-based throughout, as in ``f ∘_i g``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core_types import Carrier, PlaceFunction, same_shape
from .errors import PositionOutOfRange, TooLarge, UnknownIdentity, WrongListLength

IDENTITIES = ("EQ4", "EQ5", "EQ6", "EQ7", "EQ8", "EQ9", "EQ10", "EQ11", "EQ12", "EQ13")
DEFAULT_LIMIT = 10**7


def _check_position(i, n):
    if not isinstance(i, int) or not 1 <= i <= n:
        raise PositionOutOfRange(f"position {i!r} not in 1..{n}")


def mann_compose(f: PlaceFunction, g: PlaceFunction, i: int) -> PlaceFunction:
    """``(f ∘_i g)(a) = f(a_1..a_{i-1}, g(a), a_{i+1}..a_n)``; undefined if either side is."""
    same_shape(f, g)
    _check_position(i, f.arity)
    fe = f._entries
    k = i - 1
    out = {}
    for point, v in g._entries.items():
        key = point[:k] + (v,) + point[k + 1:]
        if key in fe:
            out[point] = fe[key]
    return PlaceFunction(f.arity, f.carrier, out, check=False)


def menger_superpose(f: PlaceFunction, gs: Sequence[PlaceFunction]) -> PlaceFunction:
    """``f[g_1..g_n](a) = f(g_1(a), .., g_n(a))``."""
    if len(gs) != f.arity:
        raise WrongListLength(f"need {f.arity} inner functions, got {len(gs)}")
    for g in gs:
        same_shape(f, g)
    fe = f._entries
    tables = [g._entries for g in gs]
    smallest = min(tables, key=len)
    out = {}
    for point in smallest:
        try:
            key = tuple(t[point] for t in tables)
        except KeyError:
            continue
        if key in fe:
            out[point] = fe[key]
    return PlaceFunction(f.arity, f.carrier, out, check=False)


def projector(n: int, i: int, carrier) -> PlaceFunction:
    carrier = carrier if isinstance(carrier, Carrier) else Carrier(tuple(carrier))
    _check_position(i, n)
    return PlaceFunction(n, carrier, {p: p[i - 1] for p in carrier.tuples(n)}, check=False)


def projectors(n: int, carrier) -> list[PlaceFunction]:
    return [projector(n, i, carrier) for i in range(1, n + 1)]


def compose_sequence(f: PlaceFunction, seq) -> PlaceFunction:
    """Left fold ``(..((f ∘_{i1} g1) ∘_{i2} g2)..) ∘_{ik} gk``."""
    for i, g in seq:
        f = mann_compose(f, g, i)
    return f


def function_mu(seq, i: int):
    """Function-level μ_i: the residual composite at the first occurrence of slot i, or None."""
    for k, (pos, g) in enumerate(seq):
        if pos == i:
            return compose_sequence(g, seq[k + 1:])
    return None


def function_mu_tuple(seq, n: int) -> tuple:
    return tuple(function_mu(seq, i) for i in range(1, n + 1))


@dataclass
class IdentityReport:
    identity_id: str
    samples_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self):
        return {
            "identity": self.identity_id,
            "samples_checked": self.samples_checked,
            "passed": self.passed,
            "failures": self.failures,
        }


class _Ops:
    """Composition with optional memoisation over interned functions."""

    def __init__(self, memo: bool):
        self.memo = memo
        self._canon: dict = {}
        self._cache: dict = {}

    def _intern(self, f):
        return self._canon.setdefault(f, f)

    def compose(self, f, g, i):
        if not self.memo:
            return mann_compose(f, g, i)
        key = ("c", id(f), id(g), i)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = self._intern(mann_compose(f, g, i))
        return hit

    def sup(self, f, gs):
        if not self.memo:
            return menger_superpose(f, gs)
        key = ("s", id(f), *map(id, gs))
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = self._intern(menger_superpose(f, gs))
        return hit


def _diagonal_restrict(f, dom):
    return PlaceFunction(f.arity, f.carrier, {p: v for p, v in f._entries.items() if p in dom}, check=False)


# Each entry: (number of function variables, index-parameter generator, sides).
# ``sides(ops, P, vs, idx)`` returns a list of (lhs, rhs) pairs that must be equal.
def _eq4(ops, P, vs, idx):
    (f,) = vs
    return [(ops.sup(f, P), f)]


def _eq5(ops, P, vs, idx):
    (i,) = idx
    common = set.intersection(*(set(g._entries) for g in vs))
    return [(ops.sup(P[i - 1], vs), _diagonal_restrict(vs[i - 1], common))]


def _eq6(ops, P, vs, idx):
    f, g = vs
    (i,) = idx
    inner = list(P)
    inner[i - 1] = g
    return [(ops.compose(f, g, i), ops.sup(f, inner))]


def _eq7(ops, P, vs, idx):
    n = len(P)
    f, gs, hs = vs[0], vs[1:n + 1], vs[n + 1:]
    return [(ops.sup(ops.sup(f, gs), hs), ops.sup(f, [ops.sup(g, hs) for g in gs]))]


def _eq8(ops, P, vs, idx):
    f, g, hs = vs[0], vs[1], list(vs[2:])
    (i,) = idx
    inner = list(hs)
    inner[i - 1] = ops.sup(g, hs)
    return [(ops.sup(ops.compose(f, g, i), hs), ops.sup(f, inner))]


def _eq9(ops, P, vs, idx):
    n = len(P)
    f, gs, h = vs[0], vs[1:n + 1], vs[n + 1]
    (i,) = idx
    return [(ops.compose(ops.sup(f, gs), h, i), ops.sup(f, [ops.compose(g, h, i) for g in gs]))]


def _eq10(ops, P, vs, idx):
    (g,) = vs
    (i,) = idx
    return [(ops.compose(g, P[i - 1], i), g), (ops.compose(P[i - 1], g, i), g)]


def _eq11(ops, P, vs, idx):
    (g,) = vs
    i, k = idx
    return [(ops.compose(P[k - 1], g, i), _diagonal_restrict(P[k - 1], g._entries))]


def _single_index(n):
    return [(i,) for i in range(1, n + 1)]


def _index_pairs(n):
    return [(i, k) for i in range(1, n + 1) for k in range(1, n + 1) if i != k]


_FIXED = {
    "EQ4": (lambda n: 1, lambda n: [()], _eq4),
    "EQ5": (lambda n: n, _single_index, _eq5),
    "EQ6": (lambda n: 2, _single_index, _eq6),
    "EQ7": (lambda n: 2 * n + 1, lambda n: [()], _eq7),
    "EQ8": (lambda n: n + 2, _single_index, _eq8),
    "EQ9": (lambda n: n + 2, _single_index, _eq9),
    "EQ10": (lambda n: 1, _single_index, _eq10),
    "EQ11": (lambda n: 1, _index_pairs, _eq11),
}


def _first_difference(a: PlaceFunction, b: PlaceFunction):
    for point in sorted(set(a._entries) | set(b._entries), key=repr):
        if a._entries.get(point, _MISSING) != b._entries.get(point, _MISSING):
            return list(point)
    return None


_MISSING = object()


def _named(functions):
    if isinstance(functions, Mapping):
        names, funcs = list(functions), list(functions.values())
    else:
        funcs = list(functions)
        names = [f"f{k}" for k in range(len(funcs))]
    if not funcs:
        raise ValueError("need at least one sample function")
    for g in funcs[1:]:
        same_shape(funcs[0], g)
    return names, funcs


def exhaustive_cost(identity_id: str, sample_size: int, n: int, max_len: int = 3) -> int:
    """Number of assignments an exhaustive run evaluates."""
    if identity_id in _FIXED:
        nvars, indices, _ = _FIXED[identity_id]
        return sample_size ** nvars(n) * len(indices(n))
    if identity_id in ("EQ12", "EQ13"):
        seqs = sum((n * sample_size) ** k for k in range(max_len + 1))
        return sample_size * seqs
    raise UnknownIdentity(identity_id)


def verify_identity(
    identity_id: str,
    functions,
    *,
    mode: str = "exhaustive",
    samples: int = 1000,
    seed: int = 0,
    max_len: int = 3,
    limit: int = DEFAULT_LIMIT,
) -> IdentityReport:
    """Evaluate both sides of an identity on sample assignments.

    ``mode="exhaustive"`` ranges over every assignment of sample functions to
    the identity's variables (and every index choice) and refuses when
    :func:`exhaustive_cost` exceeds ``limit``. ``mode="random"`` draws
    ``samples`` assignments with a seeded RNG. EQ13 always enumerates every
    sequence of length ``<= max_len`` over the samples and groups them by
    function-level μ-tuple.
    """
    if identity_id not in IDENTITIES:
        raise UnknownIdentity(identity_id)
    if mode not in ("exhaustive", "random"):
        raise ValueError(f"unknown mode {mode!r}")
    names, funcs = _named(functions)
    n = funcs[0].arity
    P = projectors(n, funcs[0].carrier)
    report = IdentityReport(identity_id)
    rng = random.Random(seed)

    if identity_id == "EQ13" or mode == "exhaustive":
        cost = exhaustive_cost(identity_id, len(funcs), n, max_len)
        if cost > limit:
            raise TooLarge(f"{identity_id}: {cost} assignments exceeds limit {limit}")

    if identity_id == "EQ13":
        _check_eq13(report, names, funcs, n, max_len)
        return report
    if identity_id == "EQ12":
        _check_eq12(report, names, funcs, P, n, max_len, mode, samples, rng)
        return report

    nvars, index_choices, sides = _FIXED[identity_id]
    k = nvars(n)
    indices = index_choices(n)
    ops = _Ops(memo=(mode == "exhaustive"))
    order = range(len(funcs))
    if mode == "exhaustive":
        cases = ((c, idx) for c in itertools.product(order, repeat=k) for idx in indices)
    else:
        cases = (
            (tuple(rng.randrange(len(funcs)) for _ in range(k)), rng.choice(indices))
            for _ in range(samples)
        )
    for choice, idx in cases:
        vs = [funcs[c] for c in choice]
        report.samples_checked += 1
        for lhs, rhs in sides(ops, P, vs, idx):
            if lhs != rhs:
                report.failures.append(
                    {
                        "variables": [names[c] for c in choice],
                        "indices": list(idx),
                        "point": _first_difference(lhs, rhs),
                    }
                )
                break
    return report


def _check_eq12(report, names, funcs, P, n, max_len, mode, samples, rng):
    moves = [(i, k) for i in range(1, n + 1) for k in range(len(funcs))]
    if mode == "exhaustive":
        cases = (
            (fi, seq)
            for fi in range(len(funcs))
            for length in range(max_len + 1)
            for seq in itertools.product(moves, repeat=length)
        )
    else:
        cases = (
            (
                rng.randrange(len(funcs)),
                tuple(rng.choice(moves) for _ in range(rng.randint(0, max_len))),
            )
            for _ in range(samples)
        )
    for fi, seq in cases:
        concrete = [(i, funcs[k]) for i, k in seq]
        f = funcs[fi]
        lhs = compose_sequence(f, concrete)
        rhs = menger_superpose(f, [compose_sequence(p, concrete) for p in P])
        report.samples_checked += 1
        if lhs != rhs:
            report.failures.append(
                {
                    "variables": [names[fi]],
                    "sequence": [[i, names[k]] for i, k in seq],
                    "point": _first_difference(lhs, rhs),
                }
            )


def _check_eq13(report, names, funcs, n, max_len):
    moves = [(i, k) for i in range(1, n + 1) for k in range(len(funcs))]
    groups: dict = {}
    for length in range(max_len + 1):
        for seq in itertools.product(moves, repeat=length):
            concrete = [(i, funcs[k]) for i, k in seq]
            groups.setdefault(function_mu_tuple(concrete, n), []).append((seq, concrete))
    for members in groups.values():
        if len(members) < 2:
            continue
        for fi, f in enumerate(funcs):
            base_seq, base = members[0]
            expected = compose_sequence(f, base)
            for seq, concrete in members[1:]:
                got = compose_sequence(f, concrete)
                report.samples_checked += 1
                if got != expected:
                    report.failures.append(
                        {
                            "variables": [names[fi]],
                            "sequence_u": [[i, names[k]] for i, k in base_seq],
                            "sequence_v": [[i, names[k]] for i, k in seq],
                            "point": _first_difference(expected, got),
                        }
                    )
