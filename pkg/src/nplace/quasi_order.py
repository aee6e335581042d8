"""Projection quasi-orders of representations, sums and unions, and the χ-realisation.

``chi_of(R)`` relates g1 to g2 when the domain of R(g1) is contained in that of
R(g2). :func:`build_projection_representation` goes the other way: given an
l-regular, v-negative quasi-order χ on a representable algebra it returns a
faithful representation whose domain-inclusion order is exactly χ.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import MultiSemigroup, Selector, selectors
from .core_types import Carrier, Check, PlaceFunction, union_functions
from .determining_pairs import BinaryRelation, is_l_regular, is_v_negative
from .errors import CarriersNotDisjoint, SystemCheckFailed
from .representability import (
    ClosureAutomaton,
    Representation,
    closure,
    direct_sum,
    faithful_representation,
    totalize,
    verify_representation,
)


def chi_of(R: Representation) -> BinaryRelation:
    domains = [frozenset(f._entries) for f in R.assignment]
    m = len(domains)
    return BinaryRelation(
        m, frozenset((x, y) for x in range(m) for y in range(m) if domains[x] <= domains[y])
    )


def epsilon_of(R: Representation) -> BinaryRelation:
    fs = R.assignment
    m = len(fs)
    return BinaryRelation(m, frozenset((x, y) for x in range(m) for y in range(m) if fs[x] == fs[y]))


@dataclass
class RepresentationFamily:
    members: list

    def __post_init__(self):
        if not self.members:
            raise ValueError("empty family")
        G = self.members[0].algebra
        if any(R.algebra != G for R in self.members):
            raise ValueError("members represent different algebras")

    @property
    def algebra(self) -> MultiSemigroup:
        return self.members[0].algebra

    @property
    def disjoint(self) -> bool:
        seen: set = set()
        for R in self.members:
            pts = set(R.carrier)
            if seen & pts:
                return False
            seen |= pts
        return True


def sum_representations(family, tag: bool = True) -> Representation:
    """Sum of a family. With ``tag`` every carrier is made disjoint by pairing points with the member index."""
    if not isinstance(family, RepresentationFamily):
        family = RepresentationFamily(list(family))
    if tag:
        return direct_sum(family.members)
    if not family.disjoint:
        raise CarriersNotDisjoint("member carriers overlap; pass tag=True")
    result = union_representations(family)
    return result.representation


@dataclass
class UnionResult:
    representation: Representation | None
    conflict: tuple | None  # (g, point, value_1, value_2) when some P(g) is not a function
    is_representation: bool
    failing_triple: tuple | None = None


def union_representations(family, carrier=None) -> UnionResult:
    """Pointwise graph union; not always single-valued and not always a representation."""
    if not isinstance(family, RepresentationFamily):
        family = RepresentationFamily(list(family))
    G = family.algebra
    if carrier is None:
        points: dict = {}
        for R in family.members:
            for x in R.carrier:
                points.setdefault(x, None)
        carrier = Carrier(tuple(points))
    elif not isinstance(carrier, Carrier):
        carrier = Carrier(tuple(carrier))
    assignment = []
    for g in range(G.size):
        f, clash = union_functions([R(g) for R in family.members], carrier, G.n)
        if clash is not None:
            return UnionResult(None, (G.label(g), *clash), False)
        assignment.append(f)
    R = Representation(G, carrier, tuple(assignment))
    ok, triple = verify_representation(R)
    return UnionResult(R, None, ok, triple)


@dataclass
class QuasiOrderInput:
    """An algebra together with a candidate projection quasi-order. Nothing is checked here."""

    algebra: MultiSemigroup
    chi: BinaryRelation


@dataclass
class ProjectionReport:
    condition_14: Check
    quasi_order: Check
    l_regular: Check
    v_negative: Check

    @property
    def ok(self) -> bool:
        return all((self.condition_14, self.quasi_order, self.l_regular, self.v_negative))

    def as_dict(self):
        return {
            "ok": self.ok,
            **{
                name: {"ok": c.ok, "witness": c.witness}
                for name, c in (
                    ("condition_14", self.condition_14),
                    ("quasi_order", self.quasi_order),
                    ("l_regular", self.l_regular),
                    ("v_negative", self.v_negative),
                )
            },
        }


def quasi_order_check(chi: BinaryRelation, G: MultiSemigroup) -> Check:
    for x in range(chi.size):
        if (x, x) not in chi:
            return Check(False, {"not_reflexive_at": G.label(x)})
    bad = chi.transitivity_counterexample()
    if bad is not None:
        return Check(False, {"not_transitive": [G.label(v) for v in bad]})
    return Check(True)


def check_projection_system(Q: QuasiOrderInput) -> ProjectionReport:
    G, chi = Q.algebra, Q.chi
    result = closure(G)
    if isinstance(result, ClosureAutomaton):
        c14 = Check(True, {"states": len(result)})
    else:
        c14 = Check(False, result.describe(G))
    return ProjectionReport(c14, quasi_order_check(chi, G), is_l_regular(chi, G), is_v_negative(chi, G))


def build_Pa(Q: QuasiOrderInput, a: int,
             automaton: ClosureAutomaton | None = None, check: bool = True) -> Representation:
    """P_a: like λ*, but P_a(g) is defined at a tuple only when ``(a, g ∘ seq) ∈ χ``."""
    G, chi = Q.algebra, Q.chi
    if check:
        report = check_projection_system(Q)
        if not report.ok:
            raise SystemCheckFailed(report.as_dict())
    if automaton is None:
        automaton = closure(G)
        if not isinstance(automaton, ClosureAutomaton):
            raise SystemCheckFailed(automaton.describe(G))
    carrier = Carrier(tuple(G.elements) + selectors(G.n))
    labels = G.elements

    def point(t):
        return tuple(x if isinstance(x, Selector) else labels[x] for x in t)

    rows = [(point(t), rec.action) for t, rec in automaton.states.items()]
    assignment = tuple(
        PlaceFunction(
            G.n, carrier, {p: labels[act[g]] for p, act in rows if (a, act[g]) in chi}, check=False
        )
        for g in range(G.size)
    )
    return Representation(G, carrier, assignment)


@dataclass
class ProjectionResult:
    representation: Representation
    homomorphism: bool
    chi_matches: bool
    faithful: bool

    @property
    def ok(self):
        return self.homomorphism and self.chi_matches and self.faithful


def build_projection_representation(Q: QuasiOrderInput) -> ProjectionResult:
    """P = Λ + Σ_a P_a with Λ a full faithful representation; checks χ_P = χ and ε_P = Δ."""
    G, chi = Q.algebra, Q.chi
    report = check_projection_system(Q)
    if not report.ok:
        raise SystemCheckFailed(report.as_dict())
    automaton = closure(G)
    Lambda = totalize(faithful_representation(G, automaton))
    P0 = sum_representations([build_Pa(Q, a, automaton, check=False) for a in range(G.size)])
    P = sum_representations([Lambda, P0])
    ok, _ = verify_representation(P)
    return ProjectionResult(
        P,
        homomorphism=ok,
        chi_matches=chi_of(P) == chi,
        faithful=epsilon_of(P) == BinaryRelation.diagonal(G.size),
    )


def all_relations(size: int):
    """Every binary relation on ``range(size)``, in a fixed order."""
    cells = [(x, y) for x in range(size) for y in range(size)]
    for mask in range(1 << len(cells)):
        yield BinaryRelation(size, frozenset(c for k, c in enumerate(cells) if mask >> k & 1))
