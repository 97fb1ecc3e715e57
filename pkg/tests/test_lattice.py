import cmath
import itertools
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.functions.combinatorial.numbers import partition

from artifact import lattice as L
from artifact import qseries as Q
from artifact.errors import DegenerateGram, InvalidLabels, NotEven, WindowTooSmall
from expected import REFERENCE

A2 = [[2, -1], [-1, 2]]


def terms(series):
    return [(e, c) for e, c in series.items()]


# --- discriminant groups -----------------------------------------------------


@pytest.mark.parametrize("gram,order", [("e8", 1), ([[2]], 2), ([[3]], 3), (A2, 3), ([[4, 1], [1, 2]], 7)])
def test_discriminant_order(gram, order):
    n, reps = L.discriminant_group(gram)
    assert n == order == len(reps)
    g = L.parse_gram(gram)
    # differences of representatives never lie in the lattice
    for a, b in itertools.combinations(reps, 2):
        assert any((x - y) % 1 for x, y in zip(a, b))
    # every representative pairs integrally with the lattice basis
    for v in reps:
        for i in range(len(g)):
            assert sum(g[i][j] * v[j] for j in range(len(g))).denominator == 1


def test_a1_representatives():
    assert L.discriminant_group([[2]])[1] == [(F(0),), (F(1, 2),)]


def test_degenerate_gram():
    with pytest.raises(DegenerateGram):
        L.discriminant_group([[2, 2], [2, 2]])


# --- characters ----------------------------------------------------------------


def test_e8_character_is_cube_root_of_j():
    assert terms(L.voa_character("e8", order=2).series) == REFERENCE["j_cube_root"]
    cube = L.voa_character("e8", order=7).series.int_pow(3)
    assert Q.series_equal(cube, Q.named_form_series("j", 6), 6)


def test_a1_character_against_partitions():
    # eta^{-1} sum_n q^{n^2}: convolve theta counts with partition numbers
    order = 8
    series = L.voa_character([[2]], order=order).series
    theta = {n * n: (1 if n == 0 else 2) for n in range(0, 4)}
    for e, c in series.items():
        n = e + F(1, 24)
        assert n.denominator == 1
        expected = sum(mult * partition(int(n) - k) for k, mult in theta.items() if k <= n)
        assert c == expected


def test_character_leading_term():
    for gram in ([[2]], A2, [[4, 1], [1, 2]]):
        lead = L.voa_character(gram, order=1).series.leading()
        assert lead == (F(-len(gram), 24), 1)


def test_character_value_matches_series():
    tau = 0.1 + 0.9j
    c = L.voa_character(A2, lam=[F(1, 3), F(2, 3)], tau=tau, order=12)
    assert abs(complex(c.series.evaluate(tau)) - c.value) < 1e-10


def test_formal_mu_evaluates_to_numeric():
    tau, mu = 0.05 + 1.0j, [F(1, 4)]
    c = L.voa_character([[2]], tau=tau, mu=mu, order=14)
    assert abs(complex(c.series.evaluate(tau, 1)) - c.value) < 1e-10


def test_not_even_rejected():
    with pytest.raises(NotEven):
        L.voa_character([[3]], order=2)


def test_modular_checks():
    e8 = L.char_modular_check("e8", 0.1 + 1j)
    assert e8["S"] < 1e-7 and e8["classes"] == 1
    a1_t = L.char_modular_check([[2]], 0.3 + 1.1j)
    assert a1_t["T"] < 1e-9
    a1_s = L.char_modular_check([[2]], 2j)
    assert a1_s["S"] < 1e-7
    charged = L.char_modular_check(A2, 0.1 + 1.2j, [0.2 + 0.05j, -0.1])
    assert charged["S"] < 1e-7 and charged["T"] < 1e-9


def test_a1_t_phase_directly():
    tau = 0.2 + 1.3j
    chi = lambda t: L.voa_character([[2]], tau=t, order=1).value  # noqa: E731
    assert abs(chi(tau + 1) - cmath.exp(-2j * math.pi / 24) * chi(tau)) < 1e-9


# --- cocycles --------------------------------------------------------------------


def brute_force_cocycle(gram, table, radius):
    """Check the five conditions one pair/triple at a time in plain Python."""
    r = len(gram)
    vecs = [np.array(v) for v in itertools.product(range(-radius, radius + 1), repeat=r)]
    ip = lambda a, b: int(a @ np.array(gram) @ b)  # noqa: E731
    zero = np.zeros(r, dtype=int)
    pairs = 0
    for a in vecs:
        assert table(a, zero) == 1 and table(zero, a) == 1
        assert table(a, -a) == 1
        for b in vecs:
            pairs += 1
            eab, eba = table(a, b), table(b, a)
            assert abs(eab) == 1
            assert eab / eba == (-1) ** (ip(a, b) + ip(a, a) * ip(b, b))
            assert table(-b, -a) == eab.conjugate()
    for a, b, c in itertools.product(vecs[:: max(1, len(vecs) // 12)], repeat=3):
        assert table(a, b) * table(a + b, c) == table(a, b + c) * table(b, c)
    return pairs


@pytest.mark.parametrize("gram,window,radius", [([[2]], 9, 3), (A2, 6, 2)])
def test_cocycle_conditions_by_brute_force(gram, window, radius):
    table = L.cocycle_build(gram, window)
    assert brute_force_cocycle(gram, table, radius) >= 49


def test_e8_cocycle_window():
    table = L.cocycle_build("e8", 3)
    report = L.cocycle_conditions(table)
    assert report["checked"] >= 200
    assert all(report[k] == 0 for k in ("unit", "cocycle", "symmetry", "inverse", "conjugation"))


def test_cocycle_window_too_small():
    with pytest.raises(WindowTooSmall):
        L.cocycle_build([[2]], 2)
    table = L.CocycleTable(((2,),), 2)
    with pytest.raises(WindowTooSmall):
        table((5,), (0,))


# --- N = 2 characters ---------------------------------------------------------------


def test_n2_weights_and_charge():
    assert L.n2_weights(2, 1, 1) == REFERENCE["n2_k2_l1_m1"]
    assert L.n2_central_charge(1) == 1
    assert L.n2_central_charge(2) == F(3, 2)
    with pytest.raises(InvalidLabels):
        L.n2_weights(1, 1, 0)
    with pytest.raises(InvalidLabels):
        L.n2_weights(3, 0, 0)


def test_k1_vacuum_leading_exponent():
    lead = L.n2_character_series(1, 0, 0, 3).leading()
    assert lead[0] == -F(1, 24)


def test_splitting_identity():
    for m in range(3):
        left = L.k_series(m, 3, 5)
        right = L.k_series(2 * m, 12, 5).y_scaled(2) + L.k_series(2 * m + 6, 12, 5).y_scaled(2)
        assert Q.series_equal(left, right, 5)


def test_smatrix():
    s = L.n2_smatrix(1)
    assert abs(s[0, 0] - 2 / 3 * math.sin(math.pi / 3)) < 1e-15
    for k in (1, 2):
        s = L.n2_smatrix(k)
        # symmetric up to conjugating the phase, and unitary
        assert np.allclose(s, s.T)
        assert np.allclose(s @ s.conj().T, np.eye(len(s)), atol=1e-12)


def test_s_closure_and_t2():
    assert L.n2_s_residual(1, 1.3j) < 1e-6
    assert L.n2_s_residual(1, 1.1j) < 1e-6
    assert L.n2_s_residual(2, 1.1j) < 1e-6
    for k in (1, 2):
        for l, m in L.n2_labels(k):
            assert L.n2_t2_residual(k, l, m, 0.1 + 1.2j) < 1e-8


def test_k_s_law():
    for l in (2, 3):
        for m in range(1, l + 1):
            assert L.k_modular_residual(m, l, 1.1j, 0.2) < 1e-6


def test_n2_series_matches_value():
    tau = 0.07 + 1.0j
    for k in (1, 2):
        for l, m in L.n2_labels(k):
            series = L.n2_character_series(k, l, m, 12)
            assert abs(complex(series.evaluate(tau)) - L.n2_character_value(k, l, m, tau)) < 1e-9


# --- properties ------------------------------------------------------------------


@st.composite
def even_gram(draw):
    a = draw(st.integers(1, 3))
    c = draw(st.integers(1, 3))
    b = draw(st.integers(-2, 2))
    if 4 * a * c - b * b <= 0:
        b = 0
    return [[2 * a, b], [b, 2 * c]]


@settings(max_examples=20, deadline=None)
@given(even_gram(), st.floats(-0.5, 0.5), st.floats(0.9, 1.4))
def test_rank_two_modular_laws(gram, x, y):
    report = L.char_modular_check(gram, complex(x, y))
    assert report["classes"] == abs(gram[0][0] * gram[1][1] - gram[0][1] ** 2)
    assert report["T"] < 1e-9 and report["S"] < 1e-7


@settings(max_examples=20, deadline=None)
@given(even_gram())
def test_rank_two_cocycles(gram):
    report = L.cocycle_conditions(L.CocycleTable(gram, 6))
    assert all(report[k] == 0 for k in ("unit", "cocycle", "symmetry", "inverse", "conjugation"))
