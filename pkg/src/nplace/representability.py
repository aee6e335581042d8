"""Deciding representability by n-place functions and building the representations.

The decision procedure is a breadth-first closure over μ*-tuples. A state is the
μ*-tuple of a composition sequence; it carries the action ``g -> g ∘ seq`` of
that sequence on G. The algebra is representable exactly when every tuple is
reached with a single action, so the search stops at the first conflict and
rebuilds both witness sequences from parent pointers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import MultiSemigroup, OpMove, Selector, initial_tuple, mu_step, selectors
from .core_types import Carrier, PlaceFunction
from .errors import CapExceeded, NotARepresentation, NotRepresentable
from .mann_ops import mann_compose, projectors

DEFAULT_CAP = 1_000_000


@dataclass(frozen=True)
class StateRecord:
    action: tuple
    parent: tuple | None  # (parent tuple, move) or None for the initial state


@dataclass
class ClosureAutomaton:
    algebra: MultiSemigroup
    states: dict  # MuTuple -> StateRecord, in BFS discovery order
    initial: tuple

    def path(self, t) -> list[OpMove]:
        moves = []
        while True:
            rec = self.states[t]
            if rec.parent is None:
                return moves[::-1]
            t, move = rec.parent
            moves.append(move)

    def action(self, t) -> tuple:
        return self.states[t].action

    def __len__(self):
        return len(self.states)


@dataclass(frozen=True)
class Violation:
    """Two sequences with the same μ*-tuple but different results on ``g``."""

    g: int
    seq_u: tuple
    seq_v: tuple
    tuple: tuple
    left: int
    right: int
    states_seen: int = 0

    def describe(self, G: MultiSemigroup) -> dict:
        return {
            "g": G.label(self.g),
            "seq_u": [[p, G.label(y)] for p, y in self.seq_u],
            "seq_v": [[p, G.label(y)] for p, y in self.seq_v],
            "tuple": [render_component(G, x) for x in self.tuple],
            "left": G.label(self.left),
            "right": G.label(self.right),
        }


def render_component(G: MultiSemigroup, x):
    return repr(x) if isinstance(x, Selector) else G.label(x)


def closure(G: MultiSemigroup, cap: int = DEFAULT_CAP) -> ClosureAutomaton | Violation:
    """Explore every μ*-tuple reachable from the empty sequence.

    Returns the closed automaton, or the first :class:`Violation` met in BFS order.
    """
    start = initial_tuple(G.n)
    states = {start: StateRecord(tuple(range(G.size)), None)}
    queue = deque([start])
    moves = G.moves()
    while queue:
        t = queue.popleft()
        act = states[t].action
        for move in moves:
            table = G.tables[move.position - 1]
            y = move.operand
            t2 = mu_step(G, t, move)
            act2 = tuple(table[x][y] for x in act)
            rec = states.get(t2)
            if rec is None:
                if len(states) >= cap:
                    raise CapExceeded(cap)
                states[t2] = StateRecord(act2, (t, move))
                queue.append(t2)
            elif rec.action != act2:
                auto = ClosureAutomaton(G, states, start)
                g = next(k for k in range(G.size) if rec.action[k] != act2[k])
                return Violation(
                    g=g,
                    seq_u=tuple(auto.path(t2)),
                    seq_v=tuple(auto.path(t)) + (move,),
                    tuple=t2,
                    left=rec.action[g],
                    right=act2[g],
                    states_seen=len(states),
                )
    return ClosureAutomaton(G, states, start)


def is_representable(G: MultiSemigroup, cap: int = DEFAULT_CAP):
    """``(True, automaton)`` or ``(False, violation)``."""
    result = closure(G, cap)
    return isinstance(result, ClosureAutomaton), result


@dataclass
class StateSpace:
    """Reachable (μ*-tuple, action) pairs; unlike :func:`closure` this never stops on conflict."""

    tuples: list
    actions: list
    parents: list  # (parent index, move) or None
    watch: tuple  # element indices the actions are recorded on

    def path(self, k: int) -> list[OpMove]:
        moves = []
        while self.parents[k] is not None:
            k, move = self.parents[k]
            moves.append(move)
        return moves[::-1]

    def __len__(self):
        return len(self.tuples)


def explore(G: MultiSemigroup, *, operands=None, watch=None, cap: int = DEFAULT_CAP) -> StateSpace:
    """BFS over (μ*-tuple, action restricted to ``watch``) pairs.

    ``operands`` restricts the right-hand elements used in moves (default: all of G).
    """
    operands = range(G.size) if operands is None else list(operands)
    watch = tuple(range(G.size)) if watch is None else tuple(watch)
    moves = [OpMove(i, y) for i in range(1, G.n + 1) for y in operands]
    start = (initial_tuple(G.n), watch)
    index = {start: 0}
    space = StateSpace([start[0]], [start[1]], [None], watch)
    k = 0
    while k < len(space.tuples):
        t, act = space.tuples[k], space.actions[k]
        for move in moves:
            table = G.tables[move.position - 1]
            y = move.operand
            key = (mu_step(G, t, move), tuple(table[x][y] for x in act))
            if key not in index:
                if len(index) >= cap:
                    raise CapExceeded(cap)
                index[key] = len(space.tuples)
                space.tuples.append(key[0])
                space.actions.append(key[1])
                space.parents.append((k, move))
        k += 1
    return space


@dataclass(frozen=True)
class Representation:
    """``assignment[g]`` is the function representing element index ``g``."""

    algebra: MultiSemigroup
    carrier: Carrier
    assignment: tuple

    @property
    def arity(self) -> int:
        return self.algebra.n

    def __call__(self, g: int) -> PlaceFunction:
        return self.assignment[g]

    def by_label(self) -> dict:
        return {self.algebra.label(g): f for g, f in enumerate(self.assignment)}

    def is_injective(self) -> bool:
        return len(set(self.assignment)) == len(self.assignment)


def verify_representation(R: Representation):
    """Check ``R(g1 ∘_i g2) == R(g1) ∘_i R(g2)`` for every triple.

    Returns ``(True, None)`` or ``(False, (i, g1, g2))`` with the first failing triple.
    """
    G = R.algebra
    for i in range(1, G.n + 1):
        table = G.tables[i - 1]
        for g1 in range(G.size):
            for g2 in range(G.size):
                if R(table[g1][g2]) != mann_compose(R(g1), R(g2), i):
                    return False, (i, g1, g2)
    return True, None


def faithful_representation(G: MultiSemigroup, automaton: ClosureAutomaton | None = None, cap: int = DEFAULT_CAP) -> Representation:
    """g ↦ λ*_g on the carrier G ∪ {e_1..e_n}.

    λ*_g is defined exactly on the reachable μ*-tuples; at the tuple of a
    sequence it returns ``g ∘ seq`` (so ``g`` itself at ``(e_1..e_n)``).
    """
    if automaton is None:
        result = closure(G, cap)
        if isinstance(result, Violation):
            raise NotRepresentable(result.describe(G))
        automaton = result
    carrier = Carrier(tuple(G.elements) + selectors(G.n))
    labels = G.elements

    def point(t):
        return tuple(x if isinstance(x, Selector) else labels[x] for x in t)

    rows = [(point(t), rec.action) for t, rec in automaton.states.items()]
    assignment = tuple(
        PlaceFunction(G.n, carrier, {p: labels[act[g]] for p, act in rows}, check=False)
        for g in range(G.size)
    )
    return Representation(G, carrier, assignment)


@dataclass(frozen=True)
class Fresh:
    """A point guaranteed not to collide with any existing carrier element."""

    name: str = "c"
    tag: int = 0

    def __repr__(self):
        return self.name if self.tag == 0 else f"{self.name}{self.tag}"


def fresh_point(carrier: Carrier, name="c") -> Fresh:
    k = 0
    while Fresh(name, k) in carrier:
        k += 1
    return Fresh(name, k)


def totalize_function(f: PlaceFunction, carrier: Carrier, c) -> PlaceFunction:
    """f⁰ on ``carrier`` (which extends f's carrier by ``c``): f inside pr₁f, ``c`` elsewhere."""
    fe = f._entries
    return PlaceFunction(f.arity, carrier, {p: fe.get(p, c) for p in carrier.tuples(f.arity)}, check=False)


def totalize(R: Representation, c=None) -> Representation:
    """Extend every function to a full one on ``A ∪ {c}`` with value ``c`` outside its domain."""
    if c is None:
        c = fresh_point(R.carrier)
    elif c in R.carrier:
        raise ValueError(f"{c!r} already in the carrier")
    carrier = Carrier(R.carrier.elements + (c,))
    return Representation(
        R.algebra, carrier, tuple(totalize_function(f, carrier, c) for f in R.assignment)
    )


@dataclass
class UnitaryExtension:
    """A unitary (2,n)-semigroup containing an embedded copy of G.

    ``algebra`` is the extension; ``selectors[i-1]`` is the index of e_i and
    ``embedding[g]`` the index of the image of g. ``functions`` is filled when
    the extension was materialised from concrete functions.
    """

    base: MultiSemigroup
    algebra: MultiSemigroup
    selectors: tuple
    embedding: tuple
    functions: tuple | None = None

    @property
    def n(self):
        return self.algebra.n


def unitary_closure(Phi0: Sequence[PlaceFunction], cap: int = 10**5, n=None, carrier=None):
    """Least set containing Φ₀ and the projectors that is closed under every ∘_i.

    Returns ``(functions, tables)`` where ``functions`` lists Φ₀ first (duplicates
    dropped), then the projectors, then composites in discovery order, and
    ``tables[i-1][a][b]`` is the index of ``functions[a] ∘_i functions[b]``.
    An empty Φ₀ needs ``n`` and ``carrier``.
    """
    if Phi0:
        n, carrier = Phi0[0].arity, Phi0[0].carrier
    elif n is None or carrier is None:
        raise ValueError("an empty Φ₀ needs n and carrier")
    carrier = carrier if isinstance(carrier, Carrier) else Carrier(tuple(carrier))
    items: list = []
    index: dict = {}

    def add(f):
        k = index.get(f)
        if k is None:
            if len(items) >= cap:
                raise CapExceeded(cap, "functions")
            k = index[f] = len(items)
            items.append(f)
        return k

    for f in list(Phi0) + projectors(n, carrier):
        if not f.is_total:
            raise ValueError("unitary extension expects full functions")
        add(f)
    products: dict = {}
    done = 0
    while done < len(items):
        # pair the newest element with everything seen so far, both ways round
        k = done
        f = items[k]
        for j in range(k + 1):
            g = items[j]
            for i in range(1, n + 1):
                products[(i, k, j)] = add(mann_compose(f, g, i))
                products[(i, j, k)] = add(mann_compose(g, f, i))
        done += 1
    size = len(items)
    tables = tuple(
        tuple(tuple(products[(i, a, b)] for b in range(size)) for a in range(size))
        for i in range(1, n + 1)
    )
    return items, tables


def unitary_extension(Phi0: Sequence[PlaceFunction], cap: int = 10**5, n=None, carrier=None) -> list[PlaceFunction]:
    """Φ* = closure of Φ₀ ∪ {I_1..I_n} under all compositions."""
    return unitary_closure(Phi0, cap, n, carrier)[0]


def extension_of(R: Representation, cap: int = 10**5) -> UnitaryExtension:
    """Unitary extension of G realised by the totalised functions of a faithful R."""
    if not R.is_injective():
        raise NotARepresentation("the representation must be faithful to embed G")
    total = R if all(f.is_total for f in R.assignment) else totalize(R)
    return extension_from_total(R.algebra, total, cap)


def extension_from_total(G: MultiSemigroup, total: Representation, cap: int = 10**5) -> UnitaryExtension:
    items, tables = unitary_closure(list(total.assignment), cap)
    index = {f: k for k, f in enumerate(items)}
    sel = tuple(index[p] for p in projectors(G.n, total.carrier))
    emb = tuple(index[f] for f in total.assignment)
    if len(set(emb)) != len(emb):
        raise NotARepresentation("the totalised representation is not injective")
    labels = tuple(_extension_label(G, k, emb, sel) for k in range(len(items)))
    return UnitaryExtension(G, MultiSemigroup(labels, tables), sel, emb, tuple(items))


def direct_sum(reps: Sequence[Representation]) -> Representation:
    """Sum over disjoint copies of the carriers; point x of member k becomes ``(k, x)``."""
    if not reps:
        raise ValueError("empty family")
    G = reps[0].algebra
    for R in reps[1:]:
        if R.algebra != G:
            raise ValueError("members represent different algebras")
    carrier = Carrier(tuple((k, x) for k, R in enumerate(reps) for x in R.carrier))
    assignment = []
    for g in range(G.size):
        graph = {}
        for k, R in enumerate(reps):
            for point, v in R(g).items():
                graph[tuple((k, x) for x in point)] = (k, v)
        assignment.append(PlaceFunction(G.n, carrier, graph, check=False))
    return Representation(G, carrier, tuple(assignment))


def _extension_label(G, k, emb, sel):
    if k in emb:
        return G.label(emb.index(k))
    if k in sel:
        return f"e{sel.index(k) + 1}"
    return f"x{k}"


def check_unitary(ext: UnitaryExtension):
    """Verify the selector laws, the embedding, disjointness and generation.

    Returns ``(True, None)`` or ``(False, reason)``.
    """
    G, E, sel, emb = ext.base, ext.algebra, ext.selectors, ext.embedding
    n = E.n
    if G.n != n or len(sel) != n or len(emb) != G.size:
        return False, "shape mismatch"
    if len(set(emb)) != len(emb):
        return False, "embedding is not injective"
    if set(sel) & set(emb):
        return False, "a selector lies in G"
    for i in range(1, n + 1):
        for g1 in range(G.size):
            for g2 in range(G.size):
                if E.op(i, emb[g1], emb[g2]) != emb[G.op(i, g1, g2)]:
                    return False, f"embedding breaks operation {i} at ({G.label(g1)}, {G.label(g2)})"
    for g in range(E.size):
        for i in range(1, n + 1):
            e = sel[i - 1]
            if E.op(i, g, e) != g or E.op(i, e, g) != g:
                return False, f"selector e{i} is not neutral for operation {i} at {E.label(g)!r}"
            for k in range(1, n + 1):
                if k != i and E.op(i, sel[k - 1], g) != sel[k - 1]:
                    return False, f"e{k} ∘{i} {E.label(g)!r} != e{k}"
    reached = set(sel) | set(emb)
    frontier = list(reached)
    while frontier:
        a = frontier.pop()
        for b in list(reached):
            for i in range(1, n + 1):
                for c in (E.op(i, a, b), E.op(i, b, a)):
                    if c not in reached:
                        reached.add(c)
                        frontier.append(c)
    if len(reached) != E.size:
        return False, "G and the selectors do not generate the extension"
    return True, None
