"""Relation properties, determining pairs, simplest representations, and decomposition.

Every "for some y_1..y_s" quantifier is evaluated over the finite set of reachable
(μ*-tuple, action) states from :func:`representability.explore` instead of
enumerating sequences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .algebra import MultiSemigroup, Selector
from .core_types import Carrier, Check, PlaceFunction, union_functions
from .errors import EmptySet, InvalidPair, NotARepresentation, NotRepresentable, NotUnitaryExtension
from .representability import (
    Representation,
    StateSpace,
    UnitaryExtension,
    Violation,
    check_unitary,
    closure,
    direct_sum,
    explore,
    extension_from_total,
    faithful_representation,
    fresh_point,
    totalize,
    verify_representation,
)

MATCH = "match"  # selector positions must coincide; ρ tested on element positions
ELEMENTS = "elements"  # only tuples with no selector component take part
SYMMETRIC = "symmetric"  # axiom 4: both sequences have operands in G
MIXED = "mixed"  # axiom 4: the second sequence may use any operand of G*


@dataclass(frozen=True)
class BinaryRelation:
    size: int
    pairs: frozenset

    @classmethod
    def of(cls, size: int, pairs: Iterable) -> "BinaryRelation":
        pairs = frozenset((int(x), int(y)) for x, y in pairs)
        for x, y in pairs:
            if not (0 <= x < size and 0 <= y < size):
                raise ValueError(f"pair {(x, y)} outside 0..{size - 1}")
        return cls(size, pairs)

    @classmethod
    def from_labels(cls, G: MultiSemigroup, pairs) -> "BinaryRelation":
        return cls.of(G.size, ((G.index(x), G.index(y)) for x, y in pairs))

    @classmethod
    def diagonal(cls, size: int) -> "BinaryRelation":
        return cls(size, frozenset((x, x) for x in range(size)))

    @classmethod
    def full(cls, size: int) -> "BinaryRelation":
        return cls(size, frozenset((x, y) for x in range(size) for y in range(size)))

    def __contains__(self, pair):
        return pair in self.pairs

    def __and__(self, other):
        return BinaryRelation(self.size, self.pairs & other.pairs)

    def is_reflexive(self) -> bool:
        return all((x, x) in self.pairs for x in range(self.size))

    def is_symmetric(self) -> bool:
        return all((y, x) in self.pairs for x, y in self.pairs)

    def transitivity_counterexample(self):
        succ: dict = {}
        for x, y in self.pairs:
            succ.setdefault(x, set()).add(y)
        for x, y in sorted(self.pairs):
            for z in sorted(succ.get(y, ())):
                if (x, z) not in self.pairs:
                    return x, y, z
        return None

    def is_transitive(self) -> bool:
        return self.transitivity_counterexample() is None

    def is_quasi_order(self) -> bool:
        return self.is_reflexive() and self.is_transitive()

    def labelled(self, G: MultiSemigroup) -> list:
        return sorted([G.label(x), G.label(y)] for x, y in self.pairs)


@dataclass(frozen=True)
class PartialEquivalence:
    """Symmetric transitive relation given by its classes; reflexive only on their union."""

    size: int
    classes: tuple
    _class_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        classes = tuple(frozenset(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        class_of = {}
        for k, c in enumerate(classes):
            if not c:
                raise ValueError("empty class")
            for x in c:
                if not 0 <= x < self.size:
                    raise ValueError(f"{x} outside 0..{self.size - 1}")
                if x in class_of:
                    raise ValueError(f"classes overlap at {x}")
                class_of[x] = k
        object.__setattr__(self, "_class_of", class_of)

    @property
    def domain(self) -> frozenset:
        return frozenset(self._class_of)

    def class_of(self, x):
        """Class number of x, or None when x is outside the domain."""
        return self._class_of.get(x)

    def related(self, x, y) -> bool:
        k = self._class_of.get(x)
        return k is not None and k == self._class_of.get(y)

    def as_relation(self) -> BinaryRelation:
        return BinaryRelation(
            self.size, frozenset((x, y) for c in self.classes for x in c for y in c)
        )


@dataclass(frozen=True)
class DeterminingPair:
    extension: UnitaryExtension
    E: PartialEquivalence
    W: frozenset


@dataclass(frozen=True)
class ClassIndexing:
    """Index labels and, in the same order, the E-class number each label names."""

    labels: tuple
    classes: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels) or len(set(self.classes)) != len(self.classes):
            raise InvalidPair("class indexing must be injective")
        if len(self.labels) != len(self.classes):
            raise InvalidPair("labels and classes differ in length")

    def label_of(self) -> dict:
        return dict(zip(self.classes, self.labels))


def _seq_labels(G, moves):
    return [[p, G.label(y)] for p, y in moves]


def _space(G: MultiSemigroup, space):
    return explore(G) if space is None else space


def is_l_ideal(W, G: MultiSemigroup, space: StateSpace | None = None) -> Check:
    """``g ∘ seq ∉ W  ⟹  μ_i(seq) ∉ W`` for every used slot i."""
    W = frozenset(W)
    if not W:
        raise EmptySet("an l-ideal must be nonempty")
    space = _space(G, space)
    for k in range(1, len(space)):
        t, act = space.tuples[k], space.actions[k]
        inside = [x for x in t if not isinstance(x, Selector) and x in W]
        if not inside:
            continue
        for g, v in zip(space.watch, act):
            if v not in W:
                return Check(False, {"g": G.label(g), "sequence": _seq_labels(G, space.path(k)),
                                     "result": G.label(v), "mu": G.label(inside[0])})
    return Check(True)


def is_l_regular(rho: BinaryRelation, G: MultiSemigroup) -> Check:
    for x, y in sorted(rho.pairs):
        for i in range(1, G.n + 1):
            for z in range(G.size):
                a, b = G.op(i, x, z), G.op(i, y, z)
                if (a, b) not in rho:
                    return Check(False, {"pair": [G.label(x), G.label(y)], "i": i, "z": G.label(z),
                                         "image": [G.label(a), G.label(b)]})
    return Check(True)


def is_v_negative(rho: BinaryRelation, G: MultiSemigroup, space: StateSpace | None = None) -> Check:
    """``(g ∘ seq, μ_i(seq)) ∈ ρ`` for every used slot i."""
    space = _space(G, space)
    for k in range(1, len(space)):
        t, act = space.tuples[k], space.actions[k]
        for i, x in enumerate(t, start=1):
            if isinstance(x, Selector):
                continue
            for g, v in zip(space.watch, act):
                if (v, x) not in rho:
                    return Check(False, {"g": G.label(g), "sequence": _seq_labels(G, space.path(k)),
                                         "i": i, "pair": [G.label(v), G.label(x)]})
    return Check(True)


def is_v_regular(rho: BinaryRelation, G: MultiSemigroup, space: StateSpace | None = None,
                 reading: str = MATCH) -> Check:
    """Related μ-tuples force related results, over nonempty sequences.

    With ``reading="match"`` two tuples are compared when their selector
    positions coincide; ``reading="elements"`` only compares tuples without
    selectors. The witness records which reading was used.
    """
    if reading not in (MATCH, ELEMENTS):
        raise ValueError(f"unknown reading {reading!r}")
    space = _space(G, space)
    by_pattern: dict = {}
    for k in range(1, len(space)):
        t = space.tuples[k]
        pattern = tuple(isinstance(x, Selector) for x in t)
        if reading == ELEMENTS and any(pattern):
            continue
        by_pattern.setdefault(pattern, []).append(k)
    for members in by_pattern.values():
        for u in members:
            tu, au = space.tuples[u], space.actions[u]
            for v in members:
                tv = space.tuples[v]
                if not all(isinstance(x, Selector) or (x, y) in rho for x, y in zip(tu, tv)):
                    continue
                av = space.actions[v]
                for g, a, b in zip(space.watch, au, av):
                    if (a, b) not in rho:
                        return Check(False, {"reading": reading, "g": G.label(g),
                                             "seq_u": _seq_labels(G, space.path(u)),
                                             "seq_v": _seq_labels(G, space.path(v)),
                                             "pair": [G.label(a), G.label(b)]})
    return Check(True, {"reading": reading})


# -- determining pairs -------------------------------------------------------------

def _spaces(ext: UnitaryExtension):
    """State spaces over G-sequences and over G*-sequences, watched on the image of G."""
    cache = ext.__dict__.setdefault("_space_cache", {})
    if not cache:
        E = ext.algebra
        cache["G"] = explore(E, operands=ext.embedding, watch=ext.embedding)
        cache["G*"] = explore(E, watch=ext.embedding)
    return cache["G"], cache["G*"]


def _components(ext, t):
    return tuple(ext.selectors[x.index - 1] if isinstance(x, Selector) else x for x in t)


@dataclass
class PairReport:
    axioms: dict  # axiom number -> Check
    axiom4_reading: str = SYMMETRIC

    @property
    def ok(self) -> bool:
        return all(self.axioms.values())

    def as_dict(self):
        return {
            "ok": self.ok,
            "axiom4_reading": self.axiom4_reading,
            "axioms": {str(k): {"ok": c.ok, "witness": c.witness} for k, c in self.axioms.items()},
        }


def validate_determining_pair(G: MultiSemigroup, dp: DeterminingPair,
                              axiom4: str = SYMMETRIC) -> PairReport:
    """Check axioms 1)-5) of a determining pair.

    Axiom 3 ranges over sequences with operands in G*. In axiom 4 both
    sequences have operands in G by default; ``axiom4="mixed"`` lets the second
    range over G*, which is stronger. Unused slots contribute the selector e_i.
    """
    if axiom4 not in (SYMMETRIC, MIXED):
        raise ValueError(f"unknown axiom 4 reading {axiom4!r}")
    ext = dp.extension
    ok, reason = check_unitary(ext)
    if not ok:
        raise NotUnitaryExtension(reason)
    if ext.base.tables != G.tables or ext.base.elements != G.elements:
        raise NotUnitaryExtension("extension is built over a different algebra")
    E, W = dp.E, frozenset(dp.W)
    X = ext.algebra
    emb, sel = ext.embedding, ext.selectors
    axioms = {}

    missing = [X.label(x) for x in (*emb, *sel) if x not in E.domain]
    axioms[1] = Check(not missing, {"outside_domain": missing} if missing else None)

    bad = [X.label(e) for e in sel if e in W]
    axioms[2] = Check(not bad, {"selectors_in_W": bad} if bad else None)

    space_g, space_all = _spaces(ext)
    sel_classes = tuple(E.class_of(e) for e in sel)

    axioms[3] = Check(True)
    for k in range(len(space_all)):
        comps = _components(ext, space_all.tuples[k])
        if tuple(E.class_of(x) for x in comps) != sel_classes or None in sel_classes:
            continue
        for g, v in zip(emb, space_all.actions[k]):
            if not E.related(g, v):
                axioms[3] = Check(False, {"g": X.label(g), "sequence": _seq_labels(X, space_all.path(k)),
                                          "result": X.label(v)})
                break
        if not axioms[3]:
            break

    axioms[4] = _axiom4(ext, E, space_g, space_all if axiom4 == MIXED else None)

    if W:
        problems = []
        if W not in E.classes:
            problems.append("W is not an E-class")
        inv = {x: g for g, x in enumerate(emb)}
        WG = frozenset(inv[x] for x in W if x in inv)
        if not WG:
            problems.append("W ∩ G is empty")
        else:
            ideal = is_l_ideal(WG, G)
            if not ideal:
                problems.append({"not_l_ideal": ideal.witness})
        axioms[5] = Check(not problems, problems or None)
    else:
        axioms[5] = Check(True)
    return PairReport(axioms, axiom4)


def _axiom4(ext, E, space_g, space_all) -> Check:
    X = ext.algebra

    def key_and_value(space, k):
        key = tuple(E.class_of(x) for x in _components(ext, space.tuples[k]))
        if None in key:
            return None, None
        return key, tuple(E.class_of(v) for v in space.actions[k])

    reference = {}
    for k in range(len(space_g)):
        key, value = key_and_value(space_g, k)
        if key is None:
            continue
        if None in value:
            return Check(False, {"sequence": _seq_labels(X, space_g.path(k)), "reason": "result outside pr1 E"})
        seen = reference.setdefault(key, (value, k))
        if seen[0] != value:
            return Check(False, {"seq_u": _seq_labels(X, space_g.path(seen[1])),
                                 "seq_v": _seq_labels(X, space_g.path(k))})
    if space_all is None:
        return Check(True)
    for k in range(len(space_all)):
        key, value = key_and_value(space_all, k)
        if key is None or key not in reference:
            continue
        ref_value, ref_k = reference[key]
        if value != ref_value:
            return Check(False, {"seq_u": _seq_labels(X, space_g.path(ref_k)),
                                 "seq_v": _seq_labels(X, space_all.path(k))})
    return Check(True)


def default_indexing(dp: DeterminingPair) -> ClassIndexing:
    """All E-classes other than W that meet G ∪ {e_1..e_n}, labelled H0, H1, ..."""
    ext = dp.extension
    marked = set(ext.embedding) | set(ext.selectors)
    W = frozenset(dp.W)
    chosen = [k for k, c in enumerate(dp.E.classes) if c != W and c & marked]
    return ClassIndexing(tuple(f"H{k}" for k in chosen), tuple(chosen))


def _check_indexing(dp: DeterminingPair, idx: ClassIndexing):
    ext = dp.extension
    marked = set(ext.embedding) | set(ext.selectors)
    W = frozenset(dp.W)
    for k in idx.classes:
        if not 0 <= k < len(dp.E.classes):
            raise InvalidPair(f"class {k} does not exist")
        c = dp.E.classes[k]
        if c == W:
            raise InvalidPair("W cannot be indexed")
        if not c & marked:
            raise InvalidPair("indexed classes must meet G ∪ {e_1..e_n}")
    required = {k for k, c in enumerate(dp.E.classes) if c != W and c & marked}
    if not required <= set(idx.classes):
        raise InvalidPair("every class meeting G ∪ {e_1..e_n} other than W must be indexed")


def simplest_representation(G: MultiSemigroup, dp: DeterminingPair,
                            idx: ClassIndexing | None = None) -> Representation:
    """The representation g ↦ P_(E,W)(g) on the index set of the E-classes.

    A point ``(a_1..a_n)`` is in the domain when the classes H_{a_i} are the
    classes of the μ*-components of some sequence over G; the value is the
    index of the class of ``g ∘ seq``.
    """
    if idx is None:
        idx = default_indexing(dp)
    _check_indexing(dp, idx)
    ext = dp.extension
    space_g, _ = _spaces(ext)
    label_of = idx.label_of()
    carrier = Carrier(idx.labels)
    graphs = [dict() for _ in range(G.size)]
    for k in range(len(space_g)):
        classes = [dp.E.class_of(x) for x in _components(ext, space_g.tuples[k])]
        if any(c not in label_of for c in classes):
            continue
        point = tuple(label_of[c] for c in classes)
        for g, v in enumerate(space_g.actions[k]):
            b = label_of.get(dp.E.class_of(v))
            if b is None:
                continue
            prev = graphs[g].setdefault(point, b)
            if prev != b:
                raise InvalidPair(f"P({G.label(g)}) is not single-valued at {point!r}")
    assignment = tuple(PlaceFunction(G.n, carrier, gr, check=False) for gr in graphs)
    return Representation(G, carrier, assignment)


@dataclass
class DecompositionMember:
    point: tuple
    pair: DeterminingPair
    indexing: ClassIndexing
    representation: Representation
    report: PairReport | None


@dataclass
class Decomposition:
    representation: Representation
    extension: UnitaryExtension
    sentinel: object
    members: list
    union: tuple
    failures: list

    @property
    def holds(self) -> bool:
        return not self.failures

    def theta(self, point) -> PartialEquivalence:
        """The full value-equivalence at ``point`` on G* (every element is in its domain)."""
        return _theta(self.extension, self._values, point)


def _theta(ext, values, point):
    groups: dict = {}
    for x in range(ext.algebra.size):
        groups.setdefault(values(x, point), set()).add(x)
    return PartialEquivalence(ext.algebra.size, tuple(groups.values()))


def decompose(R: Representation, cap: int = 10**5, validate: bool = True) -> Decomposition:
    """Split R into the simplest representations of the pairs (E_a, W_a), one per point a ∈ Aⁿ.

    W_a is the class of points sent to the sentinel when that class meets
    G ∪ {e_1..e_n}, and empty otherwise.
    """
    ok, bad = verify_representation(R)
    if not ok:
        raise NotARepresentation(f"homomorphism fails at {bad}")
    G = R.algebra
    n = G.n
    if R.is_injective():
        host, tag = R, None
    else:
        auto = closure(G)
        if isinstance(auto, Violation):
            raise NotRepresentable(auto.describe(G))
        host, tag = direct_sum([R, faithful_representation(G, auto)]), 0
    c = fresh_point(host.carrier)
    total = totalize(host, c)
    ext = extension_from_total(G, total, cap)
    functions = ext.functions

    if tag is None:
        def values(x, a):
            return functions[x]._entries[a]
    else:
        def values(x, a):
            v = functions[x]._entries[tuple((tag, p) for p in a)]
            return v if v == c else v[1]

    marked = set(ext.embedding) | set(ext.selectors)
    members = []
    for a in R.carrier.tuples(n):
        theta = _theta(ext, values, a)
        by_value = {values(next(iter(cls)), a): cls for cls in theta.classes}
        kept = [cls for cls in theta.classes if cls & marked]
        E = PartialEquivalence(ext.algebra.size, tuple(kept))
        sentinel_class = by_value.get(c, frozenset())
        W = sentinel_class if sentinel_class & marked else frozenset()
        class_no = {cls: k for k, cls in enumerate(E.classes)}
        labels, classes = [], []
        for b in R.carrier:
            cls = by_value.get(b)
            if cls is not None and cls in class_no:
                labels.append(b)
                classes.append(class_no[cls])
        idx = ClassIndexing(tuple(labels), tuple(classes))
        dp = DeterminingPair(ext, E, W)
        report = validate_determining_pair(G, dp) if validate else None
        members.append(DecompositionMember(a, dp, idx, simplest_representation(G, dp, idx), report))

    union, failures = [], []
    for g in range(G.size):
        merged, conflict = union_functions([m.representation(g) for m in members], R.carrier, n)
        if conflict is not None:
            failures.append({"g": G.label(g), "conflict": repr(conflict)})
            union.append(None)
            continue
        union.append(merged)
        if merged != R(g):
            failures.append({"g": G.label(g), "reason": "union differs from P(g)"})
    dec = Decomposition(R, ext, c, members, tuple(union), failures)
    dec._values = values
    return dec
