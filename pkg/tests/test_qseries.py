from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from artifact import qseries as Q
from artifact.errors import InsufficientOrder, InvertZeroLeading, OddWeight, RootNotRational
from expected import DIRECT, ORACLE, REFERENCE


def terms(series):
    return [(e, c) for e, c in series.items()]


# --- frozen values ---------------------------------------------------------


def test_geometric_inverse():
    s = Q.FracSeries({0: 1, 1: -1}, 1, 6).invert()
    assert terms(s) == DIRECT["geometric"]


def test_half_powers_multiply():
    h = Q.FracSeries.monomial(F(1, 2), order=3)
    assert terms(Q.series_arith("mul", h, h)) == [(1, 1)]


def test_j_cube_root():
    root = Q.series_arith("principal_root", Q.named_form_series("j", 3), 3)
    assert terms(root)[:3] == REFERENCE["j_cube_root"]


@pytest.mark.parametrize("l", [0, 2, 4, 6, 12, 20])
def test_bernoulli_even(l):
    assert Q.bernoulli(l) == oracles.bernoulli(l)


def test_bernoulli_reference():
    for l, b in REFERENCE["bernoulli"].items():
        assert Q.bernoulli(l) == b


@pytest.mark.parametrize("l,n", [(3, 1), (3, 2), (1, 6), (5, 12), (0, 30), (7, 97)])
def test_divisor_sigma(l, n):
    assert Q.divisor_sigma(l, n) == oracles.sigma(l, n)
    if (l, n) in DIRECT["sigma"]:
        assert Q.divisor_sigma(l, n) == DIRECT["sigma"][(l, n)]


def test_g4_head():
    assert terms(Q.eisenstein_series(4, order=4)) == [(0, F(1, 240)), (1, 1), (2, 9), (3, 28)]
    assert terms(Q.named_form_series("g4_240", 3)) == REFERENCE["g4_240"]


def test_f2_constant_and_half_power():
    s = Q.eisenstein_series(2, 1, 1, F(3, 2))
    assert s.coefficient(0) == DIRECT["g2_11_constant"]
    assert s.coefficient(F(1, 2)) == 1


def test_twisted_series_matches_lattice_sum():
    value = complex(Q.eisenstein_series(4, 0, 1, order=30).evaluate(1j))
    assert abs(value - ORACLE["g4_01_at_i"]) < 1e-10


@pytest.mark.slow
def test_twisted_series_against_fresh_double_sum():
    tau = 0.2 + 1j
    for kappa, lam in ((1, 0), (1, 1)):
        ref = complex(oracles.eisenstein_double_sum(6, kappa, lam, tau, M=20))
        got = complex(Q.eisenstein_series(6, kappa, lam, order=30).evaluate(tau))
        assert abs(got - ref) < 1e-10


def test_odd_weight_rejected():
    with pytest.raises(OddWeight):
        Q.eisenstein_series(3)


def test_named_forms():
    assert terms(Q.named_form_series("j", 3)) == REFERENCE["j_coefficients"]
    assert terms(Q.named_form_series("delta", 4)) == DIRECT["delta_head"]


def test_theta_nulls():
    assert terms(Q.theta_null_series(0, 0, 3)) == DIRECT["theta00_head"]
    assert terms(Q.theta_null_series(1, 0, 2)) == DIRECT["theta10_head"]
    assert Q.theta_null_series(1, 1, 7).is_zero()


def test_lattice_theta():
    assert terms(Q.lattice_theta_series([[2, 0], [0, 2]], 6)) == REFERENCE["theta_x1sq_x2sq"]
    assert terms(Q.lattice_theta_series([], 5)) == [(0, 1)]
    assert [Q.lattice_theta_series(oracle_e8(), 8).coefficient(n) for n in range(8)] == ORACLE["e8_theta"]


def oracle_e8():
    from artifact.lattice import E8_CARTAN
    return E8_CARTAN


@pytest.mark.parametrize("gram", [[[2, 1], [1, 2]], [[4, 1], [1, 2]], [[2, 0, 0], [0, 2, 1], [0, 1, 4]]])
def test_lattice_theta_brute_force(gram):
    counts = oracles.lattice_theta_brute(gram, 5)
    series = Q.lattice_theta_series(gram, 5)
    assert {int(e): int(c) for e, c in series.items()} == counts


def test_partition_series():
    ns = Q.partition_series("weyl_NS_product", F(2) - F(1, 24))
    at_one = [(e, c.evaluate(1)) for e, c in ns.items()]
    assert [(e + F(1, 24), v) for e, v in at_one] == [(0, 1), (F(1, 2), 2), (1, 1), (F(3, 2), 2)]
    r = Q.partition_series("ising_R", F(2) + F(1, 24))
    assert [(e - F(1, 24), c.evaluate(1)) for e, c in r.items()] == [(0, 1), (1, 1)]
    r3 = Q.partition_series("ising_R", F(3) + F(1, 24))
    assert [c.evaluate(1) for _, c in r3.items()] == [1, 1, 1]
    theta = Q.partition_series("weyl_NS_theta", 1)
    coeff = theta.coefficient(F(1, 2) - F(1, 24))
    assert coeff == Q.UnitPoly({-1: 1, 1: 1})  # y + 1/y


def test_triple_product_through_q10():
    assert Q.series_equal(Q.partition_series("weyl_NS_product", 10), Q.partition_series("weyl_NS_theta", 10), 10)


def test_energy_mean_series():
    assert Q.series_equal(Q.energy_mean_series("chiral_weyl", 2), Q.eisenstein_series(2, 1, 1, 2), 2)
    assert terms(Q.energy_mean_series("scalar4", 3)) == [(0, F(1, 240)), (1, 1), (2, 9)]
    maxwell = Q.energy_mean_series("maxwell", 6)
    assert Q.series_equal(maxwell, 2 * Q.eisenstein_series(4, order=6) - 2 * Q.eisenstein_series(2, order=6), 6)


@pytest.mark.parametrize("model", ["chiral_weyl", "scalar4", "scalar6", "weyl4_canonical", "weyl4_subcanonical",
                                   "maxwell", "gauge", "ising_NS", "ising_R"])
def test_energy_mean_matches_closed_form(model):
    assert Q.series_equal(Q.energy_mean_series(model, 8), Q.energy_closed_form_series(model, 8), 8)


def test_series_equal_reports_first_mismatch():
    m = Q.first_mismatch(Q.FracSeries.monomial(1, order=5), Q.FracSeries.monomial(2, order=5), 5)
    assert m.exponent == 1
    assert Q.series_equal(Q.named_form_series("delta", 10), Q.delta_from_eisenstein(10), 10)
    j_delta = Q.named_form_series("j", 10) * Q.named_form_series("delta", 11)
    assert Q.series_equal(j_delta.truncate(10), Q.named_form_series("g4_240", 10).int_pow(3), 10)


def test_errors():
    with pytest.raises(InvertZeroLeading):
        Q.FracSeries({}, 1, 3).invert()
    with pytest.raises(RootNotRational):
        Q.series_arith("principal_root", Q.FracSeries({0: 2}, 1, 3), 2)
    with pytest.raises(InsufficientOrder):
        Q.named_form_series("j", 3).coefficient(5)


def test_json_round_trip():
    s = Q.partition_series("weyl_NS_theta", 3)
    assert Q.series_from_json(s.to_json()) == s


# --- properties ------------------------------------------------------------

coeff = st.fractions(min_value=-5, max_value=5, max_denominator=6)
exps = st.integers(min_value=0, max_value=6)


@st.composite
def series(draw, unit=False):
    items = draw(st.dictionaries(exps, coeff, max_size=5))
    if unit:
        items[0] = draw(st.sampled_from([F(1), F(-2), F(3, 4)]))
    return Q.FracSeries({k: v for k, v in items.items() if v}, 2, 4)


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(series(unit=True))
def test_inverse_and_roots(a):
    one = Q.FracSeries.constant(1).truncate(4)
    assert a * a.invert() == one
    square = a * a
    root = square.principal_root(2)
    assert root * root == square
    assert root.leading()[1] > 0


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=40), st.integers(min_value=1, max_value=40))
def test_sigma_multiplicative(m, n):
    from math import gcd
    if gcd(m, n) == 1:
        assert Q.divisor_sigma(3, m * n) == Q.divisor_sigma(3, m) * Q.divisor_sigma(3, n)
