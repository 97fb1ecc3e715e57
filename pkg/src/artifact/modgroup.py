"""SL(2,Z): Moebius action, reduction to the fundamental domain, congruence
subgroups and the index / genus / dimension formulas."""

import math
from dataclasses import dataclass
from fractions import Fraction

BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class UnimodularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.entries()} is not 1")

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other):
        return UnimodularMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self):
        return UnimodularMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out @ base
        return out

    def __neg__(self):
        return UnimodularMatrix(-self.a, -self.b, -self.c, -self.d)

    def to_list(self):
        return [[self.a, self.b], [self.c, self.d]]


IDENTITY = UnimodularMatrix(1, 0, 0, 1)
S = UnimodularMatrix(0, -1, 1, 0)
T = UnimodularMatrix(1, 1, 0, 1)


def T_power(n):
    return UnimodularMatrix(1, n, 0, 1)


@dataclass(frozen=True)
class SubgroupId:
    tag: str  # "Full", "PrincipalN", "Gamma0N", "Theta"
    N: int = 1

    def __post_init__(self):
        if self.tag not in ("Full", "PrincipalN", "Gamma0N", "Theta"):
            raise ValueError(f"unknown subgroup tag {self.tag!r}")
        if self.N < 1:
            raise ValueError("level must be positive")


def moebius_act(gamma, tau):
    """(a tau + b)/(c tau + d); exact when tau is a pair of Fractions."""
    a, b, c, d = gamma.entries()
    if isinstance(tau, tuple):
        re, im = tau
        # (a z + b)/(c z + d) for z = re + i im, in exact arithmetic
        nr = (a * re + b) * (c * re + d) + a * c * im * im
        den = (c * re + d) ** 2 + (c * im) ** 2
        return (nr / den, im / den)
    tau = complex(tau)
    return (a * tau + b) / (c * tau + d)


def index_act(gamma, kappa, lam):
    """Action on the sign characters: (kappa, lam) -> (a k + b l, c k + d l) mod 2."""
    a, b, c, d = gamma.entries()
    return ((a * kappa + b * lam) % 2, (c * kappa + d * lam) % 2)


def _as_exact(tau):
    if isinstance(tau, tuple):
        return tuple(Fraction(x) for x in tau), True
    tau = complex(tau)
    return (tau.real, tau.imag), False


def reduce_fundamental(tau):
    """Map tau into {|Re| <= 1/2, |tau| >= 1}.

    Returns (tau_star, gamma, word) with gamma tau = tau_star and word a list of
    ("T", n) and ("S", 1) factors whose product, leftmost first, equals gamma.
    Ties: Re in [-1/2, 1/2), and Re <= 0 on the unit circle.
    """
    (re, im), exact = _as_exact(tau)
    if im <= 0:
        raise ValueError("tau must lie in the upper half plane")
    tol = 0 if exact else BOUNDARY_TOL
    gamma = IDENTITY
    word = []

    def translate(x, y, g, w):
        n = -_round_half_down(x)
        if n:
            x = x + n
            g = T_power(n) @ g
            w = [("T", n)] + w
        return x, y, g, w

    for _ in range(10000):
        re, im, gamma, word = translate(re, im, gamma, word)
        norm = re * re + im * im
        if norm < 1 - tol:
            re, im = -re / norm, im / norm
            gamma = S @ gamma
            word = [("S", 1)] + word
            continue
        break
    # boundary conventions
    if re >= Fraction(1, 2) - tol:
        re = re - 1
        gamma = T_power(-1) @ gamma
        word = [("T", -1)] + word
    norm = re * re + im * im
    if abs(norm - 1) <= tol and re > tol:
        re, im = -re / norm, im / norm
        gamma = S @ gamma
        word = [("S", 1)] + word
    word = _merge_word(word)
    return (re, im) if exact else complex(re, im), gamma, word


def _round_half_down(x):
    """Nearest integer with halves rounded down, so x - n lands in [-1/2, 1/2)."""
    return math.floor(x + Fraction(1, 2) if isinstance(x, Fraction) else x + 0.5)


def _merge_word(word):
    out = []
    for letter, n in word:
        if out and out[-1][0] == letter == "T":
            n = out[-1][1] + n
            out.pop()
            if n == 0:
                continue
        out.append((letter, n))
    return out


def word_to_matrix(word):
    g = IDENTITY
    for letter, n in word:
        g = g @ (T_power(n) if letter == "T" else S**n)
    return g


def in_fundamental_domain(tau, tol=BOUNDARY_TOL):
    tau = complex(tau)
    return abs(tau.real) <= 0.5 + tol and abs(tau) >= 1 - tol


def subgroup_member(gamma, group):
    a, b, c, d = gamma.entries()
    N = group.N
    if group.tag == "Full":
        return True
    if group.tag == "PrincipalN":
        return (a - 1) % N == 0 and b % N == 0 and c % N == 0 and (d - 1) % N == 0
    if group.tag == "Gamma0N":
        return c % N == 0
    # theta group: matrices congruent to I or S mod 2, equivalently ac and bd even
    return (a * c) % 2 == 0 and (b * d) % 2 == 0


def _prime_factors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def gamma_n_data(N):
    """(index, cusp count, genus) for the principal subgroup Gamma(N).

    The index is taken in the modular group acting on the upper half plane,
    i.e. modulo -1, which halves N^3 prod(1 - p^-2) once N > 2.
    """
    if N < 1:
        raise ValueError("level must be positive")
    if N == 1:
        return 1, 1, 0
    mu = Fraction(N**3)
    for p in _prime_factors(N):
        mu *= 1 - Fraction(1, p * p)
    if N > 2:
        mu /= 2  # -1 is not in Gamma(N): index in the projective group
    mu = int(mu)
    cusps = mu // N
    genus = 1 + Fraction(mu, 12) - Fraction(cusps, 2)
    return mu, cusps, int(genus)


def genus_formula(mu, nu2, nu3, nu_inf):
    return 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(nu_inf, 2)


def dim_forms(two_k, g, nu_inf, nu2, nu3):
    """Dimension of the space of modular forms of weight two_k."""
    if two_k % 2:
        raise ValueError("weight must be even")
    k = two_k // 2
    if k < 0:
        return 0
    if k == 0:
        return 1
    return (2 * k - 1) * (g - 1) + k * nu_inf + (k * nu2) // 2 + (2 * k * nu3) // 3


LEVEL_ONE = dict(g=0, nu_inf=1, nu2=1, nu3=1)
