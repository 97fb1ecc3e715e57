"""Numeric modular forms with explicit truncation bounds.

Everything is a q-expansion summed until a geometric tail bound drops below
the requested tolerance.  No argument reduction is done, so covariance
checks compare two independent evaluations.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy.functions.combinatorial.numbers import kronecker_symbol

from .errors import NonconvergentTolerance, WrongSubgroup
from .modgroup import SubgroupId, moebius_act, subgroup_member
from .qseries import bernoulli

EPS = np.finfo(float).eps
MAX_TERMS = 20_000_000


@dataclass(frozen=True)
class FormId:
    tag: str
    two_k: int = 0
    kappa: int = 0
    lam: int = 0
    gram: tuple = ()

    TAGS = ("Eisenstein", "EisensteinTwisted", "G2Star", "F2", "Eta", "Delta", "J", "LatticeTheta")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise ValueError(f"unknown form {self.tag!r}")
        if self.tag in ("Eisenstein", "EisensteinTwisted") and (self.two_k < 2 or self.two_k % 2):
            raise ValueError("Eisenstein weight must be even and positive")

    @classmethod
    def parse(cls, name):
        """Short names used on the command line: g4, g2star, f2, eta, delta, j, g4_11, ..."""
        key = name.strip().lower()
        simple = {"g2star": cls("G2Star"), "f2": cls("F2"), "eta": cls("Eta"),
                  "delta": cls("Delta"), "j": cls("J")}
        if key in simple:
            return simple[key]
        if key.startswith("g"):
            head, _, tail = key[1:].partition("_")
            if head.isdigit():
                if tail:
                    return cls("EisensteinTwisted", int(head), int(tail[0]), int(tail[1]))
                return cls("Eisenstein", int(head))
        raise ValueError(f"unknown form name {name!r}")

    @property
    def weight(self):
        if self.tag in ("Eisenstein", "EisensteinTwisted"):
            return self.two_k
        if self.tag in ("G2Star", "F2"):
            return 2
        if self.tag == "Eta":
            return Fraction(1, 2)
        if self.tag == "Delta":
            return 12
        if self.tag == "J":
            return 0
        return Fraction(len(self.gram), 2)


def _nome(tau):
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    return tau, cmath.exp(2j * math.pi * tau)


def _terms_needed(power, absq, tol):
    """Smallest N with sum_{n>=N} n^power |q|^n / (1-|q|) below tol."""
    if absq == 0:
        return 1
    log_q = math.log(absq)
    denom = -math.log1p(-absq)

    def log_tail(n):
        ratio = power * math.log1p(1 / n) + log_q
        if ratio >= 0:
            return math.inf
        return power * math.log(n) + n * log_q + 2 * denom - math.log1p(-math.exp(ratio))

    target = math.log(tol)
    hi = 1
    while log_tail(hi) > target:
        hi *= 2
        if hi > MAX_TERMS:
            raise NonconvergentTolerance(f"|q| = {absq} needs more than {MAX_TERMS} terms")
    lo = hi // 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if log_tail(mid) > target:
            lo = mid
        else:
            hi = mid
    return hi


def _check_budget(tol, scale):
    # asking for far less than one rounding unit of the partial sums is hopeless
    if tol < EPS * scale / 64:
        raise NonconvergentTolerance(f"tolerance {tol:g} is below rounding error {EPS * scale:g}")


def lambert_sum(power, tau, tol=1e-14):
    """(sum_{n>=1} n^power q^n/(1-q^n), error bound)."""
    tau, q = _nome(tau)
    n_max = _terms_needed(power, abs(q), tol / 2)
    n = np.arange(1, n_max + 1, dtype=float)
    arg = 2j * math.pi * tau * n
    terms = n**power * np.exp(arg) / -np.expm1(arg)
    total = complex(np.sum(terms))
    _check_budget(tol, float(np.sum(np.abs(terms))))
    return total, tol / 2 + EPS * n_max * float(np.max(np.abs(terms), initial=0.0))


def eisenstein_value(two_k, tau, tol=1e-14):
    """G_{2k}(tau) = -B_{2k}/4k + sum sigma_{2k-1}(n) q^n."""
    total, err = lambert_sum(two_k - 1, tau, tol)
    return float(-bernoulli(two_k) / (2 * two_k)) + total, err


def _at(two_k, tau, where, tol):
    tau = complex(tau)
    arg = {"tau": tau, "2tau": 2 * tau, "tau/2": tau / 2, "(tau+1)/2": (tau + 1) / 2}[where]
    return eisenstein_value(two_k, arg, tol)


def twisted_eisenstein_value(two_k, kappa, lam, tau, tol=1e-14):
    """G_{2k}^{kappa lam}(tau) from half-period rescalings; (1,1) at weight 2 is F2."""
    g, e0 = _at(two_k, tau, "tau", tol)
    if (kappa, lam) == (0, 0):
        return g, e0
    if (kappa, lam) == (1, 0):
        h, e1 = _at(two_k, tau, "2tau", tol)
        return 2 * h - g, 2 * e1 + e0
    scale = 2.0 ** (1 - two_k)
    if (kappa, lam) == (0, 1):
        h, e1 = _at(two_k, tau, "tau/2", tol)
        return scale * h - g, scale * e1 + e0
    h, e1 = _at(two_k, tau, "(tau+1)/2", tol)
    if two_k == 2:
        return 2 * g - h, 2 * e0 + e1
    return scale * h - g, scale * e1 + e0


def eta_value(tau, tol=1e-14):
    tau, q = _nome(tau)
    n_max = _terms_needed(0, abs(q), tol / 4)
    n = np.arange(1, n_max + 1, dtype=float)
    logs = np.log1p(-np.exp(2j * math.pi * tau * n))
    val = cmath.exp(2j * math.pi * tau / 24 + complex(np.sum(logs)))
    return val, abs(val) * tol / 2 + tol / 4


def _lattice_level(gram):
    from sympy import Matrix

    inv = Matrix(gram).inv()
    r = len(gram)
    n = 1
    while True:
        scaled = n * inv
        if all(scaled[i, j].is_integer for i in range(r) for j in range(r)) and all(
            int(scaled[i, i]) % 2 == 0 for i in range(r)
        ):
            return n
        n += 1


def lattice_character(gram, d):
    """chi(d) = ((-1)^{r/2} det A / d) for an even-rank lattice."""
    from sympy import Matrix

    r = len(gram)
    disc = (-1) ** (r // 2) * int(Matrix(gram).det())
    return int(kronecker_symbol(disc, d))


def lattice_theta_value(gram, tau, tol=1e-14):
    """sum over x of q^{x.A.x/2}, with a shell-count tail bound."""
    from .enumeration import short_vectors

    tau, q = _nome(tau)
    r = len(gram)
    if r == 0:
        return 1.0 + 0j, 0.0
    # number of vectors of norm <= m grows like m^{r/2}; bound shells by that
    bound = _terms_needed(r / 2, abs(q), tol / 4)
    if bound ** (r / 2) > 5e6 * max(1.0, math.sqrt(abs(np.linalg.det(np.array(gram, float))))):
        raise NonconvergentTolerance("lattice theta needs too many vectors at this tau")
    _, norms, scale = short_vectors(gram, 2 * bound)
    expo = norms.astype(float) / (2 * scale * scale)
    terms = np.exp(2j * math.pi * tau * expo)
    return complex(np.sum(terms)), tol / 2


def form_eval_with_error(f, tau, tol=1e-14):
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    if f.tag == "Eisenstein":
        return eisenstein_value(f.two_k, tau, tol)
    if f.tag == "EisensteinTwisted":
        return twisted_eisenstein_value(f.two_k, f.kappa, f.lam, tau, tol)
    if f.tag == "F2":
        return twisted_eisenstein_value(2, 1, 1, tau, tol)
    if f.tag == "G2Star":
        g, e = eisenstein_value(2, tau, tol)
        return g + 1 / (8 * math.pi * tau.imag), e
    if f.tag == "Eta":
        return eta_value(tau, tol)
    if f.tag == "Delta":
        eta, e = eta_value(tau, tol / 100)
        val = eta**24
        return val, 24 * abs(eta) ** 23 * e
    if f.tag == "J":
        g4, e4 = eisenstein_value(4, tau, tol / 100)
        delta, ed = form_eval_with_error(FormId("Delta"), tau, tol / 100)
        e4c = 240 * g4
        val = e4c**3 / delta
        err = abs(val) * (3 * 240 * e4 / max(abs(e4c), 1e-300) + ed / abs(delta))
        return val, err
    return lattice_theta_value([list(row) for row in f.gram], tau, tol)


def form_eval(f, tau, tol=1e-14):
    """Value of the form at tau; the truncation tail is below tol."""
    return form_eval_with_error(f, tau, tol)[0]


def _level_group(f):
    if f.tag == "F2":
        return SubgroupId("Theta")
    if f.tag == "EisensteinTwisted" and (f.kappa, f.lam) != (0, 0):
        return SubgroupId("PrincipalN", 2)
    if f.tag == "LatticeTheta":
        return SubgroupId("Gamma0N", _lattice_level([list(r) for r in f.gram]))
    return SubgroupId("Full")


def covariance_residual(f, weight, gamma, tau, tol=1e-14):
    """(c tau + d)^{-weight} chi(d)^{-1} f(gamma tau) - f(tau).

    Only the lattice theta series carries a character.  The weight-2
    Eisenstein series is not covariant; its residual is the anomaly.
    """
    group = _level_group(f)
    if not subgroup_member(gamma, group):
        raise WrongSubgroup(f"{gamma.to_list()} is outside {group.tag}({group.N})")
    tau = complex(tau)
    a, b, c, d = gamma.entries()
    image = moebius_act(gamma, tau)
    factor = (c * tau + d) ** (-weight)
    if f.tag == "LatticeTheta":
        if len(f.gram) % 2:
            raise WrongSubgroup("odd-rank theta series have no integer-weight law here")
        factor /= lattice_character([list(r) for r in f.gram], d)
    return factor * form_eval(f, image, tol) - form_eval(f, tau, tol)
