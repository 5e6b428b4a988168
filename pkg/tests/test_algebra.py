import itertools

import pytest
from hypothesis import given, strategies as st

from dehncol.algebra import (
    Chain1,
    Chain2,
    boundary2,
    boundary2_chain,
    boundary_n_raw,
    boundary_raw_chain,
    canonical_gen2,
    is_canonical_free,
    normalize_chain2,
    normalize_gen1,
    normalize_gen2,
    op_over,
    op_under,
    q_orbit,
    theta_chain,
    theta_exact,
    theta_value,
    tribracket,
    verify_chain_complex,
    verify_theta_cocycle,
)
from oracles import theta_formula

PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
gens = st.sampled_from([3, 5, 7, 11]).flatmap(
    lambda p: st.tuples(st.just(p), st.integers(0, p - 1), st.integers(0, p - 1), st.integers(0, p - 1))
)


def test_theta_values_known():
    assert [theta_value(*g, 7) for g in [(0, 1, 2), (0, 1, 3), (0, 3, 5), (0, 5, 0)]] == [4, 6, 3, 0]
    assert theta_value(0, 1, 3, 11) == 9


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_theta_against_formula_exhaustive(p):
    for a, b, c in itertools.product(range(p), repeat=3):
        assert theta_value(a, b, c, p) == theta_formula(a, b, c, p) == theta_exact(a, b, c, p)


@given(gens, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_theta_independent_of_lifts(g, i, j, k):
    p, a, b, c = g
    assert theta_formula(a + i * p, b + j * p, c + k * p, p) == theta_value(a, b, c, p)


def test_local_operations():
    assert op_under((0, 1), (0, 2), 7) == (2, 1)
    assert op_over((0, 1), (0, 2), 7) == (2, 6)
    with pytest.raises(ValueError):
        op_under((0, 1), (1, 2), 7)


@given(gens)
def test_orbit_closed(g):
    p, a, b, c = g
    orbit = q_orbit(a, b, c, p)
    for x in orbit:
        assert set(q_orbit(x[0], x[1], x[2], p)) == set(orbit)
        assert tribracket(x[0], x[1], x[2], p) == x[3]


@given(gens)
def test_normal_form_classes(g):
    p, a, b, c = g
    nf = normalize_gen2((a, b, c), p)
    if b == c:
        assert nf.is_zero()
    elif a == b:
        assert not nf.free and nf.torsion == {(min(a, c), max(a, c))}
        assert normalize_gen2((a, b, c), p, 2).is_zero()
    else:
        ((gen, k),) = nf.free.items()
        assert abs(k) == 1 and is_canonical_free(*gen, p)
        # the rho relations identify the orbit members up to sign
        d = tribracket(a, b, c, p)
        assert normalize_gen2((b, a, d), p) == -nf
        assert normalize_gen2((c, d, a), p) == -nf


def test_normal_form_example():
    assert normalize_gen2((1, 0, 2), 7) == Chain2({(0, 1, 3): -1})
    assert canonical_gen2(0, 1, 2, 7) == (1, (0, 1, 2))


def test_boundary_example():
    bd = boundary2((0, 1, 2), 7)
    assert bd == Chain1({(0, 1): 1, (0, 2): -1, (1, 2): 1}, frozenset([1]))


@given(gens)
def test_boundary_well_defined_on_normal_form(g):
    p, a, b, c = g
    raw = Chain1()
    for (x, y), s in [((a, c), -1), ((a, b), 1), ((b, tribracket(a, b, c, p)), 1), ((c, tribracket(a, b, c, p)), -1)]:
        raw = raw + normalize_gen1(x, y, p, s)
    assert boundary2_chain(normalize_gen2((a, b, c), p), p) == raw


def test_chain_arithmetic():
    x = Chain2({(0, 1, 2): 2}, frozenset([(0, 1)]))
    y = Chain2({(0, 1, 2): -2, (0, 1, 3): 1})
    assert (x + y) == Chain2({(0, 1, 3): 1}, frozenset([(0, 1)]))
    assert (x - x).is_zero()
    assert x.scale(2) == Chain2({(0, 1, 2): 4})
    assert Chain2.from_json(x.to_json()) == x
    assert hash(x) == hash(Chain2.from_json(x.to_json()))


def test_normalize_chain2_pair_keys():
    raw = {((0, 1), (0, 2)): 1, ((1, 0), (1, 3)): 1}
    assert normalize_chain2(raw, 7) == Chain2({(0, 1, 2): 1, (0, 1, 4): -1})
    with pytest.raises(ValueError):
        normalize_chain2({((0, 1), (1, 2)): 1}, 7)


@given(st.sampled_from([3, 5]).flatmap(lambda p: st.tuples(st.just(p), st.lists(st.integers(0, p - 1), min_size=4, max_size=5))))
def test_dd_zero_random(g):
    p, gen = g
    assert not boundary_raw_chain(boundary_n_raw(gen, p), p)


def test_theta_kills_torsion_and_is_additive():
    p = 7
    c = Chain2({(0, 1, 2): 3, (0, 1, 3): -1}, frozenset([(0, 4)]))
    assert theta_chain(c, p) == (3 * 4 - 6) % 7


@pytest.mark.parametrize("p", PRIMES)
def test_cocycle_suite(p):
    rep = verify_theta_cocycle(p)
    assert rep.passed, rep.counterexample
    assert rep.checked["delta"] == p ** 4


def test_cocycle_suite_detects_perturbation():
    p = 5
    rep = verify_theta_cocycle(p, lambda a, b, c: theta_value(a, b, c, p) + (1 if (a, b, c) == (0, 1, 2) else 0))
    assert not rep.passed and rep.counterexample is not None


def test_cocycle_suite_rejects_nonzero_degenerate():
    rep = verify_theta_cocycle(3, lambda a, b, c: 1)
    assert not rep.passed and rep.counterexample["check"] == "degenerate"


@pytest.mark.parametrize("p", [3, 5])
def test_chain_complex_suite(p):
    rep = verify_chain_complex(p)
    assert rep.passed, rep.counterexample
