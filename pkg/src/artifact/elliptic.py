"""Elliptic functions with sign characters, Jacobi theta functions and the
group law on Weierstrass cubics.

The basic functions p_k^{kappa lam}(zeta, tau, mu) are summed as images of a
trigonometric kernel along the tau direction,

    p_k = sum_n w^n (f_k(zeta + n tau) - c_n),   w = e^{i pi (2 mu + kappa)},

where f_1 = pi cot(pi z) (lam = 0) or pi / sin(pi z) (lam = 1), f_{k+1} is
-(1/k) f_k', and c_n = -i pi sgn(n) only for k = 1, lam = 0.  The
subtraction makes the sum absolutely convergent and supplies the cotangent
term of the theta-ratio representation.
"""

import cmath
import math
from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import Polynomial

from .errors import (
    NonconvergentMu,
    NotOnCurve,
    PoleAtLatticePoint,
    PoleEncountered,
    RepeatedRoot,
    SingularCurve,
)
from .modforms import eisenstein_value

PI = math.pi
LATTICE_TOL = 1e-13


@dataclass(frozen=True)
class PIndex:
    k: int
    kappa: int = 0
    lam: int = 0
    mu: complex = 0j

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.kappa not in (0, 1) or self.lam not in (0, 1):
            raise ValueError("kappa and lam are 0 or 1")


def _tau(tau):
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    return tau


def lattice_coordinates(zeta, tau):
    """(a, b) real with zeta = a tau + b."""
    a = zeta.imag / tau.imag
    return a, zeta.real - a * tau.real


def _near_integer(x, tol=LATTICE_TOL):
    return abs(x - round(x)) <= tol * max(1.0, abs(x))


def on_lattice(zeta, tau):
    a, b = lattice_coordinates(complex(zeta), complex(tau))
    return _near_integer(a) and _near_integer(b)


# ---------------------------------------------------------------------------
# trigonometric kernels


def _cot_csc(z):
    """cot(pi z) and 1/sin(pi z) for an array, stable for large |Im z|."""
    z = np.asarray(z, dtype=complex)
    upper = z.imag >= 0
    a = np.exp(1j * PI * np.where(upper, z, -z))  # small for large |Im z|
    a2 = a * a
    cot = np.where(upper, -1j * (1 + a2) / (1 - a2), 1j * (1 + a2) / (1 - a2))
    csc = np.where(upper, 2j * a / (a2 - 1), 2j * a / (1 - a2))
    return cot, csc


def _kernel_polys(k, lam):
    """Polynomial P with f_k = P(cot) (lam = 0) or csc * P(cot) (lam = 1)."""
    poly = Polynomial([0, PI]) if lam == 0 else Polynomial([PI])
    dcot = Polynomial([-PI, 0, -PI])  # d cot(pi z)/dz = -pi (1 + cot^2)
    cot = Polynomial([0, 1])
    for j in range(1, k):
        if lam == 0:
            poly = poly.deriv() * dcot
        else:
            poly = -PI * cot * poly + poly.deriv() * dcot
        poly = poly * (-1.0 / j)
    return poly


def kernel(k, lam, z):
    cot, csc = _cot_csc(z)
    value = _kernel_polys(k, lam)(cot)
    return value if lam == 0 else csc * value


# ---------------------------------------------------------------------------
# p-functions


def _decay_rates(idx, tau):
    """Geometric ratios of the image terms for n -> +infinity and n -> -infinity."""
    decay = (2 if idx.lam == 0 else 1) * PI * tau.imag
    twist = 2 * PI * complex(idx.mu).imag
    return math.exp(-decay - twist), math.exp(-decay + twist)


def p_eval_with_error(idx, zeta, tau, tol=1e-12):
    tau = _tau(tau)
    zeta = complex(zeta)
    if on_lattice(zeta, tau):
        raise PoleAtLatticePoint(f"zeta = {zeta} lies on the period lattice")
    up, down = _decay_rates(idx, tau)
    if up >= 1 or down >= 1:
        raise NonconvergentMu(f"|Im mu| = {abs(complex(idx.mu).imag)} too large for Im tau = {tau.imag}")
    scale = (2 * PI) ** idx.k * (1 + idx.k)
    reach = 2 * PI * abs(zeta.imag) + math.log(scale / tol) + 5
    n_up = int(math.ceil(reach / -math.log(up))) + 2
    n_down = int(math.ceil(reach / -math.log(down))) + 2
    n = np.arange(-n_down, n_up + 1)
    terms = kernel(idx.k, idx.lam, zeta + n * tau)
    if idx.k == 1 and idx.lam == 0:
        terms = terms + 1j * PI * np.sign(n)
    weights = np.exp(n * (1j * PI * (2 * complex(idx.mu) + idx.kappa)))
    value = complex(np.sum(weights * terms))
    edge = abs(weights[0] * terms[0]) * down / (1 - down) + abs(weights[-1] * terms[-1]) * up / (1 - up)
    rounding = np.finfo(float).eps * float(np.sum(np.abs(weights * terms)))
    return value, edge + rounding


def p_eval(idx, zeta, tau, tol=1e-12):
    """p_k^{kappa lam}(zeta, tau, mu)."""
    return p_eval_with_error(idx, zeta, tau, tol)[0]


def p_function(k, kappa, lam, zeta, tau, mu=0j, tol=1e-12):
    return p_eval(PIndex(k, kappa, lam, mu), zeta, tau, tol)


def p_covariance_residual(k, kappa, lam, gamma, zeta, tau):
    """(c tau + d)^{-k} p_k^{gamma(kappa, lam)}(zeta/(c tau + d), gamma tau) - p_k^{kappa lam}(zeta, tau).

    For kappa = lam = 0 the k = 1, 2 functions carry the G_2 anomaly, which
    is subtracted: 2 pi i c zeta for p_1 and -2 pi i c (c tau + d) for p_2.
    """
    from .modgroup import index_act, moebius_act

    tau = _tau(tau)
    zeta = complex(zeta)
    a, b, c, d = gamma.entries()
    f = c * tau + d
    image = index_act(gamma, kappa, lam)
    lhs = p_function(k, *image, zeta / f, moebius_act(gamma, tau))
    if (kappa, lam) == (0, 0) and k == 1:
        lhs -= 2j * PI * c * zeta
    elif (kappa, lam) == (0, 0) and k == 2:
        lhs += 2j * PI * c * f
    return lhs / f**k - p_function(k, kappa, lam, zeta, tau)


# ---------------------------------------------------------------------------
# theta functions


def theta_eval(mu, nu, z, tau, method="series", derivative=0, tol=1e-15):
    """theta_{mu nu}(z, tau) = sum_n exp(i pi tau (n - mu/2)^2 + 2 pi i (n - mu/2)(z - nu/2)).

    ``derivative`` (series only) differentiates in z.
    """
    tau = _tau(tau)
    z = complex(z)
    if method == "series":
        return _theta_series(mu, nu, z, tau, derivative, tol)
    if method == "product":
        if derivative:
            raise ValueError("the product form is only used for values")
        return _theta_product(mu, nu, z, tau, tol)
    raise ValueError(f"unknown theta method {method!r}")


def _theta_series(mu, nu, z, tau, derivative, tol):
    y = tau.imag
    centre = -z.imag / y + mu / 2
    # exponent real part is -pi y (m - centre)^2 + const; widen until below tol
    peak = PI * y * centre**2
    width = math.sqrt(max(peak + math.log(1 / tol) + 10 * (derivative + 1), 1.0) / (PI * y)) + 2
    n = np.arange(math.floor(centre - width), math.ceil(centre + width) + 1)
    m = n - mu / 2
    expo = 1j * PI * tau * m * m + 2j * PI * m * (z - nu / 2)
    terms = np.exp(expo)
    if derivative:
        terms = terms * (2j * PI * m) ** derivative
    return complex(np.sum(terms))


def _theta_product(mu, nu, z, tau, tol):
    y = cmath.exp(2j * PI * z)
    reach = 2 * PI * abs(z.imag) + math.log(1 / tol) + 5
    n_max = int(math.ceil(reach / (PI * tau.imag))) + 2
    n = np.arange(1, n_max + 1)
    qn = np.exp(2j * PI * tau * n)
    euler = np.prod(1 - qn)
    if mu == 0:
        half = np.exp(2j * PI * tau * (n - 0.5))
        sign = 1 if nu == 0 else -1
        return complex(euler * np.prod((1 + sign * half * y) * (1 + sign * half / y)))
    lead = 2 * cmath.exp(1j * PI * tau / 4)
    if nu == 0:
        return complex(lead * cmath.cos(PI * z) * euler * np.prod((1 + qn * y) * (1 + qn / y)))
    return complex(lead * cmath.sin(PI * z) * euler * np.prod((1 - qn * y) * (1 - qn / y)))


def theta_ratio_p1(kappa, lam, zeta, tau, mu=0j):
    """The theta-ratio form of p_1^{kappa lam}(zeta, tau, mu), cotangent term included."""
    tau = _tau(tau)
    a, b = 1 - lam, 1 - kappa
    slope = theta_eval(1, 1, 0, tau, derivative=1)
    ratio = theta_eval(a, b, zeta + mu, tau) / (theta_eval(a, b, mu, tau) * theta_eval(1, 1, zeta, tau))
    value = slope * ratio
    if lam == 0:
        value -= PI / cmath.tan(PI * (mu + kappa / 2))
    return value


# ---------------------------------------------------------------------------
# Weierstrass functions

HalfPeriodRoots = namedtuple("HalfPeriodRoots", "e1 e2 e3")


def _g2_shift(tau):
    g2, _ = eisenstein_value(2, tau, 1e-15)
    return 8 * PI * PI * g2


def weierstrass(which, zeta=None, tau=1j, tol=1e-12):
    """wp, wp', the Weierstrass zeta function, g2, g3 or the half-period roots.

    Normalized periods (tau, 1): wp = p_2 + 8 pi^2 G_2 and Z = p_1 - 8 pi^2 G_2 zeta.
    e1, e2, e3 are wp at tau/2, 1/2 and (1 + tau)/2.
    """
    tau = _tau(tau)
    if which == "g2":
        return (2 * PI) ** 4 * 20 * eisenstein_value(4, tau, 1e-15)[0]
    if which == "g3":
        return -((2 * PI) ** 6) * 7 * eisenstein_value(6, tau, 1e-15)[0] / 3
    if which == "half_period_roots":
        return HalfPeriodRoots(*(weierstrass("p", h, tau, tol) for h in (tau / 2, 0.5, (1 + tau) / 2)))
    zeta = complex(zeta)
    if which == "p":
        return p_eval(PIndex(2), zeta, tau, tol) + _g2_shift(tau)
    if which == "p_prime":
        return -2 * p_eval(PIndex(3), zeta, tau, tol)
    if which == "zeta_fn":
        return p_eval(PIndex(1), zeta, tau, tol) - _g2_shift(tau) * zeta
    raise ValueError(f"unknown Weierstrass quantity {which!r}")


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class CurvePoint:
    x: object = None
    y: object = None
    at_infinity: bool = False

    @classmethod
    def infinity(cls):
        return cls(at_infinity=True)

    def __neg__(self):
        return self if self.at_infinity else CurvePoint(self.x, -self.y)

    def to_json(self):
        if self.at_infinity:
            return {"infinity": True}

        def enc(v):
            if isinstance(v, (Fraction, int)):
                return str(Fraction(v))
            v = complex(v)
            return [v.real, v.imag]

        return {"x": enc(self.x), "y": enc(self.y)}


@dataclass(frozen=True)
class Curve:
    """y^2 = 4x^3 - c1 x - c2 (four_x_cubed) or y^2 = x^3 + c1 x + c2 (short)."""

    convention: str
    c1: object
    c2: object

    def __post_init__(self):
        if self.convention not in ("four_x_cubed", "short"):
            raise ValueError(f"unknown curve convention {self.convention!r}")
        if self.discriminant() == 0:
            raise SingularCurve(f"{self} is singular")

    @classmethod
    def parse(cls, text):
        """'y2=x3-x+1' style short forms, or 'g2,g3' for the Weierstrass form."""
        import re

        compact = text.replace(" ", "").replace("^", "")
        m = re.fullmatch(r"y2=(4?)x3(?:([+-]\d*(?:/\d+)?)x)?([+-]\d+(?:/\d+)?)?", compact)
        if not m:
            g2, g3 = (Fraction(v) for v in compact.split(","))
            return cls("four_x_cubed", g2, g3)
        four, a, b = m.groups()
        a = Fraction(0) if a is None else Fraction(a + "1" if a in "+-" else a)
        b = Fraction(0) if b is None else Fraction(b)
        if four:
            return cls("four_x_cubed", -a, -b)
        return cls("short", a, b)

    def discriminant(self):
        if self.convention == "four_x_cubed":
            return self.c1**3 - 27 * self.c2**2
        return -16 * (4 * self.c1**3 + 27 * self.c2**2)

    def rhs(self, x):
        if self.convention == "four_x_cubed":
            return 4 * x**3 - self.c1 * x - self.c2
        return x**3 + self.c1 * x + self.c2

    def contains(self, point, tol=1e-8):
        if point.at_infinity:
            return True
        gap = point.y**2 - self.rhs(point.x)
        if _exact(point.x, point.y, self.c1, self.c2):
            return gap == 0
        scale = 1 + abs(point.y) ** 2 + abs(self.rhs(point.x)) + abs(point.x) ** 3
        return abs(gap) <= tol * scale


def _exact(*values):
    return all(isinstance(v, (int, Fraction)) for v in values)


def curve_add(p, q, curve, tol=1e-8):
    """Chord-tangent addition with the point at infinity as neutral element."""
    for point in (p, q):
        if not curve.contains(point, tol):
            raise NotOnCurve(f"{point} is not on {curve}")
    if p.at_infinity:
        return q
    if q.at_infinity:
        return p
    exact = _exact(p.x, p.y, q.x, q.y, curve.c1, curve.c2)

    def same(u, v):
        return u == v if exact else abs(u - v) <= tol * (1 + abs(u) + abs(v))

    lead = 4 if curve.convention == "four_x_cubed" else 1
    if same(p.x, q.x):
        if same(p.y, -q.y):
            return CurvePoint.infinity()
        # tangent: slope of y^2 = lead x^3 + ... at p
        linear = -curve.c1 if curve.convention == "four_x_cubed" else curve.c1
        slope = (3 * lead * p.x**2 + linear) / (2 * p.y)
    else:
        slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope**2 / lead - p.x - q.x
    y3 = -p.y - slope * (x3 - p.x)
    return CurvePoint(x3, y3)


def quartic_reduce(e0, e1, e2, e3):
    """Moebius reduction of y^2 = prod (x - e_nu) to y^2 = 4 prod_j (x - e_j').

    Returns (a, A^2, e1', e2', e3') for x -> e0 + 1/(x - a); the shift a makes
    the new roots sum to zero.
    """
    roots = [e0, e1, e2, e3]
    for i in range(4):
        for j in range(i + 1, 4):
            if roots[i] == roots[j]:
                raise RepeatedRoot(f"root {roots[i]} is repeated")
    if all(isinstance(v, (int, Fraction)) for v in roots):
        roots = [Fraction(v) for v in roots]
        e0 = roots[0]
    inv = [1 / (e0 - e) for e in roots[1:]]
    a = sum(inv) / 3
    a_squared = (e0 - roots[1]) * (e0 - roots[2]) * (e0 - roots[3]) / 4
    return (a, a_squared, *(a - v for v in inv))


SnValue = namedtuple("SnValue", "sn k_squared")


def sn_from_tau(z, tau, tol=1e-12):
    """sn(z sqrt(e2 - e3), k^2) from p_1^{11}, principal square root, k^2 = (e1-e3)/(e2-e3)."""
    tau = _tau(tau)
    z = complex(z)
    e1, e2, e3 = weierstrass("half_period_roots", tau=tau, tol=tol)
    k_squared = (e1 - e3) / (e2 - e3)
    if z == 0:
        return SnValue(0j, k_squared)
    root = cmath.sqrt(e2 - e3)
    # p_1^{11} vanishes exactly at the half period (1 + tau)/2 mod the lattice
    if on_lattice(z - (1 + tau) / 2, tau):
        raise PoleEncountered(f"sn has a pole at z = {z}")
    p11 = p_eval(PIndex(1, 1, 1), z, tau, tol)
    return SnValue(root / p11, k_squared)


def curve_for_tau(tau):
    return Curve("four_x_cubed", weierstrass("g2", tau=tau), weierstrass("g3", tau=tau))


def uniformize(zeta, tau, tol=1e-12):
    """(wp(zeta), wp'(zeta)) on y^2 = 4x^3 - g2 x - g3, or infinity on the lattice."""
    tau = _tau(tau)
    if on_lattice(zeta, tau):
        return CurvePoint.infinity()
    return CurvePoint(weierstrass("p", zeta, tau, tol), weierstrass("p_prime", zeta, tau, tol))
