import itertools

import pytest
from hypothesis import given, settings

from nplace.algebra import OpMove, Selector, eval_sequence, mu_star, one_element
from nplace.census import oracle_representable
from nplace.core_types import Carrier, PlaceFunction, constant_function
from nplace.errors import CapExceeded, NotRepresentable
from nplace.mann_ops import mann_compose, projectors
from nplace.representability import (
    ClosureAutomaton,
    Fresh,
    Representation,
    Violation,
    check_unitary,
    closure,
    direct_sum,
    explore,
    extension_of,
    faithful_representation,
    is_representable,
    totalize,
    unitary_closure,
    unitary_extension,
    verify_representation,
)

from conftest import order2_algebras, small_algebras


def replay_ok(G, v: Violation):
    u, w = list(v.seq_u), list(v.seq_v)
    return (
        mu_star(G, u) == mu_star(G, w) == v.tuple
        and eval_sequence(G, v.g, u) == v.left != v.right == eval_sequence(G, v.g, w)
    )


def test_one_element_closure():
    for n in (1, 2, 3):
        auto = closure(one_element(n))
        assert isinstance(auto, ClosureAutomaton)
        assert len(auto) <= 2**n
        assert all(rec.action == (0,) for rec in auto.states.values())


def test_left_zero_every_action_identity(lz):
    auto = closure(lz)
    assert all(rec.action == (0, 1) for rec in auto.states.values())


def test_automaton_invariants(rz):
    auto = closure(rz)
    init = auto.initial
    assert init == (Selector(1), Selector(2))
    assert auto.states[init].parent is None and auto.action(init) == (0, 1)
    for t in auto.states:
        for m in rz.moves():
            from nplace.algebra import mu_step

            assert mu_step(rz, t, m) in auto.states
        assert mu_star(rz, auto.path(t)) == t


def test_z2_violation(z2):
    v = closure(z2)
    assert isinstance(v, Violation)
    assert v.tuple == (0, 1)
    assert list(v.seq_u) == [OpMove(1, 1), OpMove(2, 1)]
    assert list(v.seq_v) == [OpMove(2, 1), OpMove(1, 0)]
    assert replay_ok(z2, v)
    ok, result = is_representable(z2)
    assert not ok and result == v


def test_z2_violation_matches_short_enumeration(z2):
    """Oracle: group all sequences of length <= 2 by μ*-tuple."""
    moves = [OpMove(i, y) for i in (1, 2) for y in (0, 1)]
    seen, conflict = {}, False
    for k in range(3):
        for seq in itertools.product(moves, repeat=k):
            act = tuple(eval_sequence(z2, g, seq) for g in (0, 1))
            if seen.setdefault(mu_star(z2, list(seq)), act) != act:
                conflict = True
    assert conflict


def test_right_and_left_zero_representable(lz, rz):
    assert is_representable(lz)[0] and is_representable(rz)[0]
    assert oracle_representable(rz) and oracle_representable(lz)


def test_cap_exceeded(rz):
    with pytest.raises(CapExceeded):
        closure(rz, cap=2)


@settings(max_examples=40)
@given(small_algebras(max_order=3, max_n=2))
def test_closure_agrees_with_oracle(G):
    result = closure(G)
    if isinstance(result, ClosureAutomaton):
        assert oracle_representable(G, max_len=4)
    else:
        assert replay_ok(G, result)


@settings(max_examples=15)
@given(small_algebras(max_order=2, max_n=3))
def test_closure_agrees_with_oracle_ternary(G):
    result = closure(G)
    if isinstance(result, ClosureAutomaton):
        assert oracle_representable(G, max_len=4)
    else:
        assert replay_ok(G, result)


def test_faithful_representation_examples(one, lz, rz):
    R = faithful_representation(one)
    E = (Selector(1), Selector(2))
    assert R(0)(*E) == "a"
    R = faithful_representation(lz)
    assert R(0) != R(1) and R(0)(*E) == "a" and R(1)(*E) == "b"
    assert verify_representation(faithful_representation(rz)) == (True, None)


def test_faithful_not_representable(z2):
    with pytest.raises(NotRepresentable):
        faithful_representation(z2)


@pytest.mark.parametrize("G", [G for G in order2_algebras() if is_representable(G)[0]],
                         ids=lambda G: str(G.tables))
def test_faithful_on_all_representable_order2(G):
    R = faithful_representation(G)
    assert verify_representation(R)[0] and R.is_injective()


def test_verify_detects_tampering(lz):
    R = faithful_representation(lz)
    f = R(0)
    entries = dict(f.items())
    point = next(iter(entries))
    entries[point] = "b" if entries[point] == "a" else "a"
    bad = Representation(lz, R.carrier, (PlaceFunction(2, R.carrier, entries), R(1)))
    ok, triple = verify_representation(bad)
    assert not ok and triple is not None


def test_totalize_examples(lz):
    R = faithful_representation(lz)
    T = totalize(R)
    c = T.carrier.elements[-1]
    assert isinstance(c, Fresh)
    assert all(f.is_total for f in T.assignment)
    assert verify_representation(T)[0] and T.is_injective()
    for g in range(2):
        for p, v in T(g).items():
            if c in p:
                assert v == c
            else:
                assert v == R(g).get(p, c)


def test_totalize_already_total_and_empty():
    from nplace.algebra import validate

    G = validate(("z",), [[[0]], [[0]]])
    A = Carrier((0, 1))
    R = Representation(G, A, (PlaceFunction(2, A, {}),))
    assert verify_representation(R)[0]
    T = totalize(R)
    c = T.carrier.elements[-1]
    assert set(v for _, v in T(0).items()) == {c}
    Rt = Representation(G, A, (projectors(2, A)[0],))
    assert verify_representation(Rt)[0]
    Tt = totalize(Rt)
    for p, v in Tt(0).items():
        assert v == (c if c in p else p[0])


def test_unitary_extension_of_nothing_is_projectors():
    A0 = Carrier((0, 1, "c"))
    out = unitary_extension([], n=2, carrier=A0)
    assert out == projectors(2, A0)


def test_unitary_extension_constant():
    A0 = Carrier((0, 1, "c"))
    k0 = constant_function(2, A0, 0)
    items, tables = unitary_closure([k0])
    S = set(items)
    assert k0 in S and all(p in S for p in projectors(2, A0))
    for f in items:
        for g in items:
            for i in (1, 2):
                assert mann_compose(f, g, i) in S


def test_selector_laws_in_closure(rz):
    items = unitary_extension(list(totalize(faithful_representation(rz)).assignment))
    P = projectors(2, items[0].carrier)
    for g in items:
        for i in (1, 2):
            assert mann_compose(g, P[i - 1], i) == g == mann_compose(P[i - 1], g, i)
            for k in (1, 2):
                if k != i:
                    assert mann_compose(P[k - 1], g, i) == P[k - 1]


def test_unitary_cap(lz):
    with pytest.raises(CapExceeded):
        unitary_extension(list(totalize(faithful_representation(lz)).assignment), cap=5)


def test_extension_of_checks(lz, rz, one):
    for G in (lz, rz, one):
        ext = extension_of(faithful_representation(G))
        assert check_unitary(ext) == (True, None)


def test_direct_sum_is_representation(lz):
    R = faithful_representation(lz)
    S = direct_sum([R, totalize(R)])
    assert verify_representation(S)[0]
    assert len(S.carrier) == len(R.carrier) * 2 + 1


def test_explore_agrees_with_closure_on_representable(rz):
    auto = closure(rz)
    space = explore(rz)
    assert set(space.tuples) == set(auto.states)
