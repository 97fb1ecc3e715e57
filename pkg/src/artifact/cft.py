"""Vacuum and thermal 2-point functions of free conformal fields.

Every thermal function is built twice: once from the elliptic p-functions,
and once as an image sum of the vacuum function along the thermal
direction, which is how the tests cross-check the closed forms.
"""

import cmath
import math
from collections import namedtuple
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import models
from .elliptic import PIndex, _cot_csc, on_lattice, p_eval
from .errors import (
    CollinearVectors,
    ExtractionUnstable,
    PoleKinematics,
    UnknownModel,
)
from .modforms import eisenstein_value
from .models import ModelId, degeneracy  # noqa: F401  (re-exported)

PI = math.pi
COLLINEAR_TOL = 1e-8

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
# quaternion units Q_k = -i sigma_k, Q_4 = 1, and their conjugates
QUATERNION = tuple(-1j * s for s in SIGMA) + (np.eye(2, dtype=complex),)
QUATERNION_PLUS = tuple(1j * s for s in SIGMA) + (np.eye(2, dtype=complex),)


# ---------------------------------------------------------------------------
# Gegenbauer polynomials


def gegenbauer(n, lam, x):
    """C_n^lam(x) as the finite sum sum_k (-1)^k (lam)_{n-k} / (k! (n-2k)!) (2x)^{n-2k}.

    Exact when lam and x are rational.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    exact = isinstance(x, (int, Fraction)) and isinstance(lam, (int, Fraction))
    lam = Fraction(lam) if exact else lam
    total = Fraction(0) if exact else 0
    for k in range(n // 2 + 1):
        rising = Fraction(1) if exact else 1.0
        for j in range(n - k):
            rising *= lam + j
        coeff = (-1) ** k * rising / (math.factorial(k) * math.factorial(n - 2 * k))
        total += coeff * (2 * x) ** (n - 2 * k)
    return total


# ---------------------------------------------------------------------------
# kinematics


@dataclass(frozen=True)
class FrameVectors:
    v: np.ndarray
    vbar: np.ndarray


@dataclass(frozen=True)
class Kinematics:
    zeta1: complex
    zeta2: complex
    u1: tuple
    u2: tuple
    alpha: float = field(init=False)

    def __post_init__(self):
        u1 = np.asarray(self.u1, dtype=float)
        u2 = np.asarray(self.u2, dtype=float)
        if u1.shape != u2.shape:
            raise ValueError("u1 and u2 must have the same dimension")
        for u in (u1, u2):
            if abs(np.linalg.norm(u) - 1) > 1e-12:
                raise ValueError("u1 and u2 must be unit vectors")
        cosine = float(np.clip(u1 @ u2, -1.0, 1.0))
        object.__setattr__(self, "alpha", math.acos(cosine) / (2 * PI))

    @classmethod
    def from_alpha(cls, zeta12, alpha, dim=4, zeta2=0j):
        """Standard frame u_{1,2} = (0, ..., 0, +-sin pi alpha, cos pi alpha)."""
        if not 0 <= alpha <= 0.5:
            raise ValueError("alpha must lie in [0, 1/2]")
        s, c = math.sin(PI * alpha), math.cos(PI * alpha)
        pad = (0.0,) * (dim - 2)
        return cls(complex(zeta12) + zeta2, zeta2, pad + (s, c), pad + (-s, c))

    @property
    def dim(self):
        return len(self.u1)

    @property
    def zeta12(self):
        return complex(self.zeta1) - complex(self.zeta2)

    @property
    def zeta_plus(self):
        return self.zeta12 + self.alpha

    @property
    def zeta_minus(self):
        return self.zeta12 - self.alpha

    def sin2a(self):
        s = math.sin(2 * PI * self.alpha)
        if abs(s) < COLLINEAR_TOL:
            raise CollinearVectors("u1 and u2 are collinear; the frame degenerates")
        return s

    def shifted(self, dz):
        return Kinematics(complex(self.zeta1) + dz, self.zeta2, self.u1, self.u2)


def moving_frame(u1, u2):
    """The complex vectors v, vbar with u1 = e^{i pi a} v + e^{-i pi a} vbar
    and u2 = e^{-i pi a} v + e^{i pi a} vbar, cos 2 pi a = u1.u2."""
    kin = Kinematics(0j, 0j, tuple(u1), tuple(u2))
    s = kin.sin2a()
    u1 = np.asarray(u1, dtype=float)
    u2 = np.asarray(u2, dtype=float)
    ph = cmath.exp(1j * PI * kin.alpha)
    v = (ph * u1 - u2 / ph) / (2j * s)
    vbar = (ph * u2 - u1 / ph) / (2j * s)
    return FrameVectors(v, vbar)


def slash(z, conjugate=False):
    """z-slash = sum z_k Q_k (or Q_k^+ when conjugate) for a complex 4-vector."""
    units = QUATERNION_PLUS if conjugate else QUATERNION
    return sum(complex(c) * q for c, q in zip(z, units))


# ---------------------------------------------------------------------------
# vacuum functions


def _csc(z):
    return complex(_cot_csc(z)[1])


def _cot(z):
    return complex(_cot_csc(z)[0])


def _check_vacuum_poles(*points):
    for z in points:
        if abs(z - round(z.real)) < 1e-13:
            raise PoleKinematics(f"zeta = {z} is on the vacuum pole set")


def _check_thermal_poles(tau, *points):
    for z in points:
        if on_lattice(z, tau):
            raise PoleKinematics(f"zeta = {z} is on the thermal pole set")


def _needs_frame(model):
    return model.tag in ("weyl4_canonical", "weyl4_subcanonical", "maxwell")


def _frame_matrices(kin):
    if kin.dim != 4:
        raise ValueError("spinor and tensor fields need 4-vectors")
    frame = moving_frame(kin.u1, kin.u2)
    return slash(frame.v, True), slash(frame.vbar, True)


def _spinor_vacuum_terms(model, kin):
    """Scalar coefficients (a, b) of v-slash^+ and vbar-slash^+."""
    zm, zp = kin.zeta_minus, kin.zeta_plus
    if model.tag == "weyl4_subcanonical":
        return _csc(zm) / 2j, _csc(zp) / 2j
    # canonical = (D=4 scalar vacuum) x (subcanonical)
    base = -_csc(zm) * _csc(zp) / (8j)
    return base * _csc(zm), base * _csc(zp)


def _maxwell_w0(zeta12, alpha):
    zm, zp = zeta12 - alpha, zeta12 + alpha
    s = math.sin(2 * PI * alpha)
    c = math.cos(2 * PI * alpha) / s
    return (_cot(zm) - _cot(zp)) / (4 * s**3) - (
        _cot(zp) * _csc(zp) ** 2 - c * _csc(zp) ** 2
    ) / (4 * s)


def vacuum_2pt(model, kin):
    """Compact-picture vacuum 2-point function.

    Scalars in D = 2 d0 + 2 give (-4 sin pi zeta_+ sin pi zeta_-)^{-d0}; the
    Weyl fields give 2x2 matrices; Maxwell gives a dict of the diagonal
    frame components W_plus, W_minus and F3.
    """
    model = ModelId.parse(model)
    z12 = kin.zeta12
    if model.tag in ("chiral_weyl", "ising_NS"):
        _check_vacuum_poles(z12)
        return _csc(z12) / 2j
    if model.tag == "ising_R":
        _check_vacuum_poles(z12)
        return _cot(z12) / 2j
    if model.tag == "chiral_u1_restriction":
        _check_vacuum_poles(z12)
        return -(_csc(z12) / 2) ** 2
    if model.tag == "n2_super":
        _check_vacuum_poles(z12)
        c = float(model.central_charge)
        return 1j * c / 12 * _csc(z12) ** 3
    zm, zp = kin.zeta_minus, kin.zeta_plus
    _check_vacuum_poles(zm, zp)
    if model.tag == "scalar":
        d0 = (model.dimension - 2) // 2
        return (-_csc(zp) * _csc(zm) / 4) ** d0
    if model.tag in ("weyl4_canonical", "weyl4_subcanonical"):
        vp, vbp = _frame_matrices(kin)
        a, b = _spinor_vacuum_terms(model, kin)
        return a * vp + b * vbp
    if model.tag == "maxwell":
        kin.sin2a()
        return {
            "W_plus": _maxwell_w0(z12, kin.alpha),
            "W_minus": _maxwell_w0(z12, -kin.alpha),
            "F3": (_csc(zp) * _csc(zm)) ** 2 / 4,
        }
    raise UnknownModel(f"no 2-point function for {model.name}")


# ---------------------------------------------------------------------------
# thermal functions


def _p(k, kappa, lam, zeta, tau, mu=0j):
    return p_eval(PIndex(k, kappa, lam, mu), zeta, tau)


def _maxwell_wq(zeta12, alpha, tau):
    zm, zp = zeta12 - alpha, zeta12 + alpha
    s = math.sin(2 * PI * alpha)
    c = math.cos(2 * PI * alpha) / s
    first = (_p(1, 0, 0, zm, tau) - _p(1, 0, 0, zp, tau)) / (4 * PI * s**3)
    second = (_p(3, 0, 0, zp, tau) / PI - c * _p(2, 0, 0, zp, tau)) / (4 * PI**2 * s)
    return first - second


def thermal_2pt(model, kin, tau, mu=0j):
    """Gibbs (grand canonical for charged fields) 2-point function."""
    model = ModelId.parse(model)
    tau = complex(tau)
    z12 = kin.zeta12
    if model.tag in ("chiral_weyl", "ising_NS"):
        _check_thermal_poles(tau, z12)
        return _p(1, 1, 1, z12, tau, mu) / (2j * PI)
    if model.tag == "ising_R":
        _check_thermal_poles(tau, z12)
        return _p(1, 1, 0, z12, tau, mu) / (2j * PI)
    if model.tag == "chiral_u1_restriction":
        _check_thermal_poles(tau, z12)
        return -_p(2, 0, 0, z12, tau) / (2 * PI) ** 2
    if model.tag == "n2_super":
        _check_thermal_poles(tau, z12)
        c = float(model.central_charge)
        l0 = complex(model.l0_mean or 0)
        return (1j * c / (12 * PI**3) * _p(3, 1, 1, z12, tau, mu)
                - 1j / PI * l0 * _p(1, 1, 1, z12, tau, mu))
    zm, zp = kin.zeta_minus, kin.zeta_plus
    _check_thermal_poles(tau, zm, zp)
    if model.tag == "scalar":
        s = kin.sin2a()
        if model.dimension == 4:
            return (_p(1, 0, 0, zp, tau) - _p(1, 0, 0, zm, tau)) / (4 * PI * s)
        if model.dimension == 6:
            c = math.cos(2 * PI * kin.alpha) / s
            return (_p(2, 0, 0, zm, tau) + _p(2, 0, 0, zp, tau)
                    - 2 * PI * c * (_p(1, 0, 0, zm, tau) - _p(1, 0, 0, zp, tau))) / (4 * PI * s) ** 2
        return mode_sum_2pt(model, kin, tau)
    if model.tag == "weyl4_subcanonical":
        vp, vbp = _frame_matrices(kin)
        return (_p(1, 1, 1, zm, tau, mu) * vp + _p(1, 1, 1, zp, tau, mu) * vbp) / (2j * PI)
    if model.tag == "weyl4_canonical":
        vp, vbp = _frame_matrices(kin)
        s = kin.sin2a()
        c = math.cos(2 * PI * kin.alpha) / s
        p1m, p1p = _p(1, 1, 1, zm, tau, mu), _p(1, 1, 1, zp, tau, mu)
        p2m, p2p = _p(2, 1, 1, zm, tau, mu), _p(2, 1, 1, zp, tau, mu)
        a = p2m / PI - c * p1m + p1p / s
        b = p2p / PI + c * p1p - p1m / s
        return 1j / (8 * PI * s) * (a * vp - b * vbp)
    if model.tag == "maxwell":
        s = kin.sin2a()
        c = math.cos(2 * PI * kin.alpha) / s
        f3 = (_p(2, 0, 0, zp, tau) + _p(2, 0, 0, zm, tau)
              + 2 * PI * c * (_p(1, 0, 0, zp, tau) - _p(1, 0, 0, zm, tau))) / (4 * PI**2 * s**2)
        return {
            "W_plus": _maxwell_wq(z12, kin.alpha, tau),
            "W_minus": _maxwell_wq(z12, -kin.alpha, tau),
            "F3": f3,
        }
    raise UnknownModel(f"no thermal 2-point function for {model.name}")


def _field_dimension(model):
    return {
        "chiral_weyl": Fraction(1, 2), "ising_NS": Fraction(1, 2), "ising_R": Fraction(1, 2),
        "weyl4_subcanonical": Fraction(1, 2), "weyl4_canonical": Fraction(3, 2),
        "n2_super": Fraction(3, 2), "chiral_u1_restriction": Fraction(1), "maxwell": Fraction(2),
    }.get(model.tag, Fraction(model.dimension - 2, 2))


def image_sum_2pt(model, kin, tau, cutoff=200, mu=0j):
    """sum_{|k| <= cutoff} (-1)^{2dk} e^{2 pi i k mu} W_vac(zeta_12 + k tau)."""
    model = ModelId.parse(model)
    tau = complex(tau)
    sign = -1 if _field_dimension(model).denominator == 2 else 1
    total = None
    for k in range(-cutoff, cutoff + 1):
        weight = sign**k * cmath.exp(2j * PI * k * mu)
        term = vacuum_2pt(model, kin.shifted(k * tau))
        if isinstance(term, dict):
            term = {key: weight * val for key, val in term.items()}
            total = term if total is None else {key: total[key] + term[key] for key in total}
        else:
            total = weight * term if total is None else total + weight * term
    return total


def mode_sum_2pt(model, kin, tau, tol=1e-14):
    """Scalar thermal function from its mode expansion:
    (-4 s_+ s_-)^{-d0} + 2 sum_{n>=d0} q^n/(1-q^n) cos(2 pi n zeta_12) C^{d0}_{n-d0}(cos 2 pi alpha)."""
    model = ModelId.parse(model)
    if model.tag != "scalar":
        raise UnknownModel("mode sums are implemented for scalars only")
    d0 = (model.dimension - 2) // 2
    tau = complex(tau)
    x = math.cos(2 * PI * kin.alpha)
    total = vacuum_2pt(model, kin)
    q = cmath.exp(2j * PI * tau)
    growth = 2 * PI * abs(kin.zeta12.imag)
    n = d0
    while True:
        term = 2 * q**n / (1 - q**n) * cmath.cos(2 * PI * n * kin.zeta12) * gegenbauer(n - d0, d0, x)
        total += term
        if n > d0 + 5 and abs(q) ** n * math.exp(growth * n) * (n + 1) ** (2 * d0) < tol:
            return total
        n += 1


def mode_coefficients(model, alpha, tau, n_max, samples=256):
    """Fourier coefficients c_n of the thermal function in e^{-2 pi i n zeta_12},
    read off numerically along Im zeta_12 = -Im tau / 2."""
    model = ModelId.parse(model)
    tau = complex(tau)
    depth = -tau.imag / 2
    xs = np.arange(samples) / samples
    values = np.array([thermal_2pt(model, Kinematics.from_alpha(x + 1j * depth, alpha, model.dimension), tau)
                       for x in xs])
    spectrum = np.fft.fft(values) / samples  # coefficient of e^{-2 pi i n x} at index n
    out = {}
    for n in range(-n_max, n_max + 1):
        out[n] = spectrum[n % samples] * math.exp(2 * PI * n * depth)
    return out


# ---------------------------------------------------------------------------
# energy means

EnergyMean = namedtuple("EnergyMean", "numeric closed_form residual")

_ARG = {"tau": lambda t: t, "2tau": lambda t: 2 * t, "(tau+1)/2": lambda t: (t + 1) / 2}


def _degeneracy_sum(model, tau, tol=1e-15):
    spec = models.spectrum(model)
    q = cmath.exp(2j * PI * tau)
    total = complex(models.vacuum_energy(model))
    if abs(q) >= 1:
        raise ValueError("|q| must be below 1")
    # the weights are polynomials of degree <= 3 in the energy; stop on a geometric bound
    n_max = 10
    while abs(q) ** n_max * (n_max + 1) ** 4 / (1 - abs(q)) > tol:
        n_max *= 2
    n = np.arange(1, n_max + 1, dtype=float)
    if spec.boson:
        weight = n * np.array([float(models.poly_eval(spec.boson, int(k))) for k in range(1, n_max + 1)])
        arg = 2j * PI * tau * n
        total += complex(np.sum(weight * np.exp(arg) / -np.expm1(arg)))
    if spec.fermion:
        e = n - float(spec.fermion_offset)
        poly = {p: float(c) for p, c in spec.fermion.items()}
        weight = e * sum(c * e**p for p, c in poly.items())
        arg = 2j * PI * tau * e
        total += complex(np.sum(weight * np.exp(arg) / (1 + np.exp(arg))))
    return total


def energy_closed_form(model, tau):
    return sum(float(c) * eisenstein_value(w, _ARG[arg](complex(tau)), 1e-15)[0]
               for c, w, arg in models.energy_closed_form(model))


def energy_mean(model, tau):
    """<H + E0>_q from the degeneracy-weighted sum, and its Eisenstein closed form."""
    model = ModelId.parse(model)
    tau = complex(tau)
    numeric = _degeneracy_sum(model, tau)
    closed = energy_closed_form(model, tau)
    return EnergyMean(numeric, closed, numeric - closed)


# ---------------------------------------------------------------------------
# Laurent data


def _pole_order(model):
    return {"n2_super": 3, "chiral_u1_restriction": 2}.get(model.tag, 1)


def laurent_coeffs(model, tau, depth=3, tol=1e-8, mu=0j, samples=32):
    """Coefficients of zeta_12^{-m}, ..., zeta_12^{-m+depth-1} of the thermal
    function (m the pole order), from circular sampling at radii r and r/2
    combined by Richardson elimination of the first aliased term."""
    model = ModelId.parse(model)
    if depth < 1 or depth > 4:
        raise ExtractionUnstable("depth must be between 1 and 4")
    tau = complex(tau)
    order = _pole_order(model)
    radius = 0.25 * min(1.0, tau.imag, abs(tau), abs(tau - 1), abs(tau + 1))
    theta = 2 * PI * np.arange(samples) / samples
    kin0 = Kinematics.from_alpha(0.25, 0.25, 4)

    def sampled(r):
        points = r * np.exp(1j * theta)
        vals = np.array([thermal_2pt(model, Kinematics(z, 0j, kin0.u1, kin0.u2), tau, mu) for z in points])
        return vals, float(np.max(np.abs(vals)))

    def coeffs(r, vals):
        out = []
        for power in range(-order, -order + depth):
            out.append(complex(np.mean(vals * np.exp(-1j * power * theta))) / r**power)
        return out

    big, big_max = sampled(radius)
    small, small_max = sampled(radius / 2)
    first, second = coeffs(radius, big), coeffs(radius / 2, small)
    factor = 2.0**samples
    result = []
    for j, power in enumerate(range(-order, -order + depth)):
        value = (factor * second[j] - first[j]) / (factor - 1)
        rounding = np.finfo(float).eps * small_max * (radius / 2) ** (-power) * samples
        if rounding > tol * max(1.0, abs(value)):
            raise ExtractionUnstable(f"coefficient of zeta^{power} lost to rounding ({rounding:.2e})")
        result.append(value)
    return result


def n2_model(central_charge, l0_mean=0):
    return ModelId("n2_super", central_charge=Fraction(central_charge), l0_mean=l0_mean)
