"""Thermodynamics in a spherical box of radius R and its infinite-volume limit.

Units are hbar = c = 1 except in planck_spectrum.  The box partition
function lives at tau_R = i beta / (2 pi R), which is deep in the cusp for
R >> beta; the asymptotic expansions come from inverting to -1/tau_R.
"""

import cmath
import math
from collections import namedtuple
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import integrate

from .cft import Kinematics, thermal_2pt
from .errors import PoleKinematics, QuadratureFailure, UnknownModel
from .modforms import eisenstein_value

PI = math.pi
MODELS = ("scalar4", "maxwell")
IEPS_FRACTION = 1e-6


@dataclass(frozen=True)
class BoxState:
    beta: float
    R: float

    def __post_init__(self):
        if not (self.beta > 0 and self.R > 0):
            raise ValueError("beta and R must be positive")

    @property
    def tau(self):
        return 1j * self.beta / (2 * PI * self.R)

    @property
    def volume(self):
        return 2 * PI**2 * self.R**3


def _model(name):
    key = name.strip().lower()
    if key not in MODELS:
        raise UnknownModel(f"box densities exist for {MODELS}, not {name!r}")
    return key


def _g(two_k, tau):
    # absolute tolerance scaled to the size of G_{2k} near the cusp
    size = abs(tau) ** (-two_k) + 1.0
    return eisenstein_value(two_k, tau, 1e-15 * size)[0].real


def energy_density(model, state):
    """<H_R>/Vol_R from the Eisenstein closed forms at tau_R."""
    model = _model(model)
    tau = state.tau
    if model == "scalar4":
        mean = _g(4, tau) - 1 / 240
    else:
        mean = 2 * _g(4, tau) - 2 * _g(2, tau) - 11 / 120
    return mean / (state.R * state.volume)


def energy_density_inverted(model, state):
    """The same density from G_4, G_2 at -1/tau_R = 2 pi i R/beta.

    G_4(tau) = tau^-4 G_4(-1/tau) and G_2(tau) = tau^-2 G_2(-1/tau) - i/(4 pi tau).
    """
    model = _model(model)
    tau = state.tau
    g4 = tau**-4 * eisenstein_value(4, -1 / tau)[0]
    if model == "scalar4":
        mean = g4 - 1 / 240
    else:
        g2 = tau**-2 * eisenstein_value(2, -1 / tau)[0] - 1j / (4 * PI * tau)
        mean = 2 * g4 - 2 * g2 - 11 / 120
    return mean.real / (state.R * state.volume)


def asymptotic_coefficients(model):
    """beta^4 density = sum_k c_k (beta/R)^k up to O(e^{-4 pi^2 R/beta})."""
    model = _model(model)
    if model == "scalar4":
        return {0: PI**2 / 30, 4: -1 / (480 * PI**2)}
    return {0: PI**2 / 15, 2: -1 / 6, 3: 1 / (2 * PI**2), 4: -11 / (240 * PI**2)}


def _mp_density_beta4(model, beta, R, dps=80):
    """beta^4 * density at high precision from the q-expansions at tau_R."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(beta) / mpmath.mpf(R)
        q = mpmath.exp(-x)

        def lambert(power):
            total = mpmath.mpf(0)
            n = 1
            eps = mpmath.mpf(10) ** (-dps - 5)
            while True:
                qn = q**n
                term = mpmath.mpf(n) ** power * qn / (1 - qn)
                total += term
                if term < eps * total and n > 10:
                    return total
                n += 1

        # the constants of 2 G_4 - 2 G_2 cancel the Maxwell vacuum energy 11/120
        mean = lambert(3) if model == "scalar4" else 2 * lambert(3) - 2 * lambert(1)
        pref = x**4 / (2 * mpmath.pi**2)
        return pref * mean, x


Asymptotics = namedtuple("Asymptotics", "coefficients prediction residual")


def density_asymptotics(model, state, dps=None):
    """The polynomial prediction for beta^4 density and its exact remainder.

    The remainder is O(e^{-4 pi^2 R/beta}), far below double precision once
    R/beta > 1, so the comparison runs in mpmath.  By default the working
    precision grows with R/beta so the remainder keeps about 30 digits.
    """
    model = _model(model)
    coeffs = asymptotic_coefficients(model)
    if dps is None:
        dps = 40 + int(4 * PI**2 * state.R / state.beta / math.log(10))
    with mpmath.workdps(dps):
        value, x = _mp_density_beta4(model, state.beta, state.R, dps)
        exact = {0: mpmath.pi**2 / 30, 4: -1 / (480 * mpmath.pi**2)} if model == "scalar4" else {
            0: mpmath.pi**2 / 15, 2: -mpmath.mpf(1) / 6, 3: 1 / (2 * mpmath.pi**2),
            4: -mpmath.mpf(11) / (240 * mpmath.pi**2)}
        prediction = sum(c * x**k for k, c in exact.items())
        residual = value - prediction
        return Asymptotics(coeffs, float(prediction), float(residual))


SBResult = namedtuple("SBResult", "value closed_form residual")


def sb_constant(model, ratio=100.0):
    """lim_{R->oo} beta^4 density, extrapolated from R/beta = ratio * (1, 2, 4, 8).

    The fit c0 + c2 x^2 + c3 x^3 + c4 x^4 in x = beta/R has the exact shape of
    the large-R expansion, so c0 is free of the 1/R^2 approach.
    """
    model = _model(model)
    xs = np.array([1.0, 0.5, 0.25, 0.125]) / ratio
    values = np.array([energy_density(model, BoxState(1.0, 1 / x)) for x in xs])
    design = np.stack([np.ones_like(xs), xs**2, xs**3, xs**4], axis=1)
    c0 = float(np.linalg.solve(design, values)[0])
    closed = asymptotic_coefficients(model)[0]
    return SBResult(c0, closed, c0 - closed)


# ---------------------------------------------------------------------------
# Minkowski 2-point function


TwoPoint = namedtuple("TwoPoint", "value epsilon")


def _separation(x1, x2, beta):
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if x1.shape != (4,) or x2.shape != (4,):
        raise ValueError("points are 4-vectors (x0, x1, x2, x3)")
    t = float(x1[0] - x2[0])
    r = float(np.linalg.norm(x1[1:] - x2[1:]))
    eps = IEPS_FRACTION * beta if abs(t) >= r else 0.0
    if r == 0 and t == 0:
        raise PoleKinematics("coincident points")
    return t, r, eps


def _limit(t, r, beta):
    a = 2 * PI / beta
    if r == 0:
        return a / (4 * PI * beta * (1 - cmath.cosh(a * t)))
    return cmath.sinh(a * r) / (4 * PI * beta * r * (cmath.cosh(a * r) - cmath.cosh(a * t)))


def _fourier(t, r, beta, tol=1e-13):
    """(2 pi)^{-2} [1/x^2 + (2/r) int_0^oo e^{-bp}/(1-e^{-bp}) cos(pt) sin(pr) dp]."""
    p_max = (math.log(1 / tol) + 10) / beta
    damp = abs(t.imag)
    if damp * p_max > 1:
        raise QuadratureFailure("imaginary time shift too large for the damped integrand")

    def occ(p):
        return 1 / math.expm1(beta * p) if p > 0 else 0.0

    def part(fn):
        val, err = integrate.quad(fn, 0, p_max, limit=500, epsabs=tol, epsrel=tol)
        if err > 1e-9:
            raise QuadratureFailure(f"quadrature error estimate {err:.1e}")
        return val

    if r == 0:
        re = part(lambda p: occ(p) * p * math.cos(p * t.real) * math.cosh(p * t.imag))
        im = part(lambda p: -occ(p) * p * math.sin(p * t.real) * math.sinh(p * t.imag))
        integral = 2 * complex(re, im)
    else:
        # cos(p (t_r + i t_i)) = cos(p t_r) cosh(p t_i) - i sin(p t_r) sinh(p t_i)
        re = part(lambda p: occ(p) * math.cos(p * t.real) * math.cosh(p * t.imag) * math.sin(p * r))
        im = part(lambda p: -occ(p) * math.sin(p * t.real) * math.sinh(p * t.imag) * math.sin(p * r))
        integral = 2 * complex(re, im) / r
    # analytic tail: |integrand| <= 2 e^{-beta p}/(1-e^{-beta p}) * max(1, p) beyond p_max
    x2 = r * r - t * t
    return (1 / x2 + integral) / (4 * PI**2)


def _compact_point(x, R):
    """(zeta, |omega|, u) for a Minkowski point under z = x / 2R."""
    z = np.asarray(x, dtype=float) / (2 * R)
    zz = float(z[1:] @ z[1:] - z[0] ** 2)
    omega = abs(complex(1 + zz, -2 * z[0]) / 2)
    zeta = math.atan2(z[0] / omega, (1 + zz) / (2 * omega)) / (2 * PI)
    u = np.concatenate([z[1:] / omega, [(1 - zz) / (2 * omega)]])
    return zeta, omega, u


def _finite_r(x1, x2, beta, R, eps):
    zeta1, om1, u1 = _compact_point(x1, R)
    zeta2, om2, u2 = _compact_point(x2, R)
    kin = Kinematics(complex(zeta1) - 1j * eps / (2 * PI * R), complex(zeta2),
                     tuple(u1 / np.linalg.norm(u1)), tuple(u2 / np.linalg.norm(u2)))
    value = thermal_2pt("scalar4", kin, 1j * beta / (2 * PI * R))
    return value / (16 * PI**2 * R**2 * om1 * om2)


def minkowski_thermal_2pt(x1, x2, beta, mode="limit", R=None):
    """Thermal Wightman function of the massless scalar in Minkowski space.

    Timelike pairs are evaluated at x0_12 - i eps with eps = 1e-6 beta; the
    eps used is returned alongside the value.
    """
    t, r, eps = _separation(x1, x2, beta)
    if eps == 0 and abs(abs(t) - r) < 1e-14 * max(1.0, r):
        raise PoleKinematics("lightlike separation")
    tc = complex(t, -eps)
    if mode == "limit":
        return TwoPoint(_limit(tc, r, beta), eps)
    if mode == "fourier":
        return TwoPoint(_fourier(tc, r, beta), eps)
    if mode in ("finite_R", "finiteR"):
        if R is None:
            raise ValueError("finite_R mode needs the box radius R")
        return TwoPoint(_finite_r(x1, x2, beta, R, eps), eps)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Planck spectrum

PlanckMode = namedtuple("PlanckMode", "n frequency occupancy energy")


def planck_spectrum(beta, R, n_max, h=1.0, c=1.0):
    """Mode n has frequency n c/R, n^2 states and energy n h c/R per quantum;
    the energy column sums to <H_R> = (G_4 - 1/240)/R in natural units."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    x = beta * c / R
    out = []
    for n in range(1, n_max + 1):
        occ = 1 / math.expm1(n * x)
        out.append(PlanckMode(n, n * c / R, occ, h * n**3 * occ / R))
    return out


def planck_riemann_sum(x, n_max):
    """x sum_n f(n x), f(t) = t^3 e^{-t}/(1-e^{-t}); tends to pi^4/15 as x -> 0."""
    t = np.arange(1, n_max + 1) * x
    return float(x * np.sum(t**3 * np.exp(-t) / -np.expm1(-t)))
