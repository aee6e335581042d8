import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nplace.core_types import Carrier, PlaceFunction, all_functions, domain, empty_function, restrict
from nplace.errors import ArityMismatch, PositionOutOfRange, TooLarge, UnknownIdentity, WrongListLength
from nplace.mann_ops import (
    IDENTITIES,
    compose_sequence,
    exhaustive_cost,
    function_mu,
    mann_compose,
    menger_superpose,
    projector,
    projectors,
    verify_identity,
)

from conftest import partial_functions

A = Carrier((0, 1))


def naive_compose(f, g, i):
    """Pointwise oracle: evaluate f(a_1..g(a)..a_n) at every point of the carrier."""
    out = {}
    for a in f.carrier.tuples(f.arity):
        if a in g:
            b = a[: i - 1] + (g(*a),) + a[i:]
            if b in f:
                out[a] = f(*b)
    return PlaceFunction(f.arity, f.carrier, out)


def naive_superpose(f, gs):
    out = {}
    for a in f.carrier.tuples(f.arity):
        if all(a in g for g in gs):
            b = tuple(g(*a) for g in gs)
            if b in f:
                out[a] = f(*b)
    return PlaceFunction(f.arity, f.carrier, out)


def test_compose_hand_example():
    f = PlaceFunction(2, A, {(0, 1): 0})
    g = PlaceFunction(2, A, {(0, 1): 1})
    assert mann_compose(f, g, 2) == PlaceFunction(2, A, {(0, 1): 0})


def test_compose_with_projectors():
    for g in all_functions(A, 2, total=False):
        assert mann_compose(g, projector(2, 2, A), 2) == g
        assert mann_compose(projector(2, 1, A), g, 2) == restrict(projector(2, 1, A), domain(g))


def test_compose_errors():
    f = projector(2, 1, A)
    with pytest.raises(PositionOutOfRange):
        mann_compose(f, f, 3)
    with pytest.raises(ArityMismatch):
        mann_compose(f, projector(3, 1, A), 1)


def test_superpose_examples():
    for f in all_functions(A, 2, total=False):
        assert menger_superpose(f, projectors(2, A)) == f
    g1 = PlaceFunction(2, A, {(0, 0): 1, (1, 1): 0})
    g2 = PlaceFunction(2, A, {(0, 0): 0, (0, 1): 1})
    assert menger_superpose(projector(2, 2, A), [g1, g2]) == restrict(g2, {(0, 0)})
    const0 = PlaceFunction(2, A, {p: 0 for p in A.tuples(2)})
    e = empty_function(2, A)
    assert menger_superpose(const0, [e, e]) == e
    with pytest.raises(WrongListLength):
        menger_superpose(const0, [e])


def test_projector_values():
    assert projector(2, 1, A)(0, 1) == 0
    assert projector(2, 2, A)(0, 1) == 1
    assert projector(3, 2, Carrier(("a", "b")))("a", "b", "a") == "b"
    with pytest.raises(PositionOutOfRange):
        projector(2, 0, A)


def test_compose_sequence_examples():
    f = PlaceFunction(2, A, {(0, 1): 1, (1, 1): 0, (0, 0): 0})
    g = PlaceFunction(2, A, {(0, 1): 0, (1, 0): 1})
    h = PlaceFunction(2, A, {(0, 1): 1, (1, 0): 1, (1, 1): 1})
    assert compose_sequence(f, []) == f
    assert compose_sequence(f, [(1, projector(2, 1, A))]) == f
    assert compose_sequence(f, [(1, g), (2, h)]) == mann_compose(mann_compose(f, g, 1), h, 2)


def test_compose_associative_exhaustive():
    fs = list(all_functions(A, 2, total=False))
    ids = {f: k for k, f in enumerate(fs)}
    for i in (1, 2):
        table = [[ids[mann_compose(f, g, i)] for g in fs] for f in fs]
        for x in range(81):
            for y in range(81):
                xy = table[x][y]
                for z in range(81):
                    assert table[xy][z] == table[x][table[y][z]]


@given(partial_functions(3, 2), partial_functions(3, 2), st.sampled_from([1, 2]))
def test_compose_matches_pointwise_oracle(f, g, i):
    assert mann_compose(f, g, i) == naive_compose(f, g, i)


@given(partial_functions(2, 3), st.lists(partial_functions(2, 3), min_size=3, max_size=3))
def test_superpose_matches_pointwise_oracle(f, gs):
    assert menger_superpose(f, gs) == naive_superpose(f, gs)


@given(partial_functions(2, 2), partial_functions(2, 2), st.sampled_from([1, 2]))
def test_compose_is_superpose_with_projectors(f, g, i):
    inner = projectors(2, f.carrier)
    inner[i - 1] = g
    assert mann_compose(f, g, i) == menger_superpose(f, inner)


def test_function_mu_first_occurrence():
    f, g, h = (PlaceFunction(2, A, {(0, 0): v}) for v in (0, 1, 0))
    seq = [(2, f), (1, g), (1, h)]
    assert function_mu(seq, 1) == mann_compose(g, h, 1)
    assert function_mu(seq, 2) == compose_sequence(f, seq[1:])
    assert function_mu([], 1) is None


@pytest.mark.parametrize("ident", [i for i in IDENTITIES if i not in ("EQ7", "EQ12", "EQ13")])
def test_identities_exhaustive_total_binary(ident):
    report = verify_identity(ident, list(all_functions(A, 2)), mode="exhaustive")
    assert report.passed and report.samples_checked > 0


def test_identities_random_partial_ternary():
    rng = random.Random(3)
    from nplace.core_types import random_function

    B = Carrier((0, 1, 2))
    pool = [random_function(B, 3, rng) for _ in range(40)]
    for ident in ("EQ4", "EQ5", "EQ6", "EQ7", "EQ8", "EQ9", "EQ10", "EQ11", "EQ12"):
        report = verify_identity(ident, pool, mode="random", samples=200, seed=1)
        assert report.passed, report.failures[:1]


def test_identity_detects_broken_composition(monkeypatch):
    """A wrong composition must be caught: the checker is not vacuous."""
    import nplace.mann_ops as m

    def broken(f, g, i):
        return m.menger_superpose(f, [g] * f.arity)

    monkeypatch.setattr(m, "mann_compose", broken)
    report = verify_identity("EQ10", list(all_functions(A, 2)), mode="exhaustive")
    assert not report.passed


def test_eq13_nonvacuous():
    rng = random.Random(0)
    from nplace.core_types import random_function

    pool = [random_function(A, 2, rng) for _ in range(2)]
    report = verify_identity("EQ13", pool, max_len=3)
    assert report.passed and report.samples_checked > 0


def test_unknown_identity_and_limits():
    with pytest.raises(UnknownIdentity):
        verify_identity("EQ99", [projector(2, 1, A)])
    assert exhaustive_cost("EQ7", 16, 2) == 16**5
    with pytest.raises(TooLarge):
        verify_identity("EQ7", list(all_functions(A, 2)), limit=1000)
