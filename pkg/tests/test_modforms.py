import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from artifact import modforms as M
from artifact import modgroup as G
from artifact.errors import NonconvergentTolerance, WrongSubgroup
from expected import DIRECT, ORACLE

TAU = 0.3 + 1.2j


def form(name):
    return M.FormId.parse(name)


def test_parse_names():
    assert form("g4") == M.FormId("Eisenstein", 4)
    assert form("g6_10") == M.FormId("EisensteinTwisted", 6, 1, 0)
    assert form("delta").weight == 12
    with pytest.raises(ValueError):
        form("nonsense")
    with pytest.raises(ValueError):
        M.FormId("Eisenstein", 3)


def test_eta_and_delta_against_products():
    assert abs(M.form_eval(form("eta"), TAU) - ORACLE["eta"]) < 1e-13
    assert abs(M.form_eval(form("delta"), TAU) - ORACLE["delta"]) < 1e-16
    fresh = complex(oracles.delta(0.1 + 0.9j))
    assert abs(M.form_eval(form("delta"), 0.1 + 0.9j) - fresh) < 1e-14


def test_j_vanishes_at_cube_root_of_unity():
    assert abs(M.form_eval(form("j"), cmath.exp(2j * math.pi / 3))) < 1e-6


def test_j_against_oracle():
    tau = -0.2 + 1.1j
    assert abs(M.form_eval(form("j"), tau) / complex(oracles.j_invariant(tau)) - 1) < 1e-12


def test_g4_constant_term_dominates_high_up():
    assert abs(M.form_eval(form("g4"), 10j) - float(DIRECT["g4_constant"])) < 1e-20


def test_g2_anomaly_under_inversion():
    # the weight-2 series picks up i/(4 pi tau) under tau -> -1/tau
    res = M.covariance_residual(M.FormId("Eisenstein", 2), 2, G.S, TAU)
    assert abs(res - 1j / (4 * math.pi * TAU)) < 1e-12
    assert abs(M.covariance_residual(form("g2star"), 2, G.S, TAU)) < 1e-12


def test_delta_covariant_under_inversion():
    assert abs(M.covariance_residual(form("delta"), 12, G.S, TAU)) < 1e-9


def test_theta_of_square_lattice_on_gamma0_4():
    theta = M.FormId("LatticeTheta", gram=((2, 0), (0, 2)))
    gamma = G.UnimodularMatrix(1, 0, 4, 1)
    assert abs(M.covariance_residual(theta, 1, gamma, 0.1 + 0.8j)) < 1e-7


def test_lattice_theta_against_brute_force():
    gram = [[2, 1], [1, 2]]
    tau = 0.05 + 0.7j
    counts = oracles.lattice_theta_brute(gram, 40)
    ref = sum(c * cmath.exp(2j * math.pi * tau * n) for n, c in counts.items())
    got = M.form_eval(M.FormId("LatticeTheta", gram=((2, 1), (1, 2))), tau)
    assert abs(got - ref) < 1e-12


def test_twisted_against_lattice_sum():
    assert abs(M.form_eval(form("g4_01"), 1j) - ORACLE["g4_01_at_i"]) < 1e-12


def test_wrong_subgroup_rejected():
    with pytest.raises(WrongSubgroup):
        M.covariance_residual(form("f2"), 2, G.T, TAU)
    with pytest.raises(WrongSubgroup):
        M.covariance_residual(form("g4_10"), 4, G.S, TAU)


def test_lower_half_plane_and_tolerance():
    with pytest.raises(ValueError):
        M.form_eval(form("g4"), 0.1 - 1j)
    with pytest.raises(NonconvergentTolerance):
        M.form_eval(form("g4"), 1e-9j + 0.3, tol=1e-14)


# --- properties ------------------------------------------------------------

letters = st.lists(st.one_of(st.just(G.S), st.integers(-2, 2).map(G.T_power)), min_size=1, max_size=5)


def compose(ms):
    g = G.IDENTITY
    for m in ms:
        g = g @ m
    return g


@settings(max_examples=40, deadline=None)
@given(letters, st.floats(-0.5, 0.5), st.floats(0.9, 1.5))
def test_level_one_covariance(word, x, y):
    gamma = compose(word)
    tau = complex(x, y)
    image = G.moebius_act(gamma, tau)
    if image.imag < 0.3:
        return  # keep the image where the expansions converge quickly
    for name, weight in (("g4", 4), ("g6", 6), ("delta", 12)):
        f = form(name)
        scale = abs(M.form_eval(f, tau)) + 1e-3
        assert abs(M.covariance_residual(f, weight, gamma, tau)) < 1e-9 * scale


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(1, 0), (0, 1), (1, 1)]), st.floats(-0.5, 0.5), st.floats(0.8, 1.5))
def test_twisted_covariant_on_gamma2(kl, x, y):
    tau = complex(x, y)
    f = M.FormId("EisensteinTwisted", 4, *kl)
    for gamma in (G.T_power(2), G.UnimodularMatrix(1, 0, 2, 1), G.UnimodularMatrix(3, 2, 4, 3)):
        # images can sink to Im 0.1, where float rounding alone is about 1e-12
        assert abs(M.covariance_residual(f, 4, gamma, tau, tol=1e-11)) < 1e-9
