"""Exact truncated series in fractional powers of q.

A FracSeries stores exponents as integers over a common denominator and
rational coefficients; everything at or above ``order`` is unknown.  A
BiSeries has the same shape with Laurent polynomials in y = e^{2 pi i mu}
(UnitPoly) as coefficients.  ``order=None`` marks an exact, finite series.
"""

import cmath
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import (
    InsufficientOrder,
    InvertZeroLeading,
    OddWeight,
    RootNotRational,
    UnknownModel,
)

Mismatch = namedtuple("Mismatch", "exponent left right")


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def _min_order(*orders):
    known = [o for o in orders if o is not None]
    return min(known) if known else None


def rational_root(c, n):
    """Exact n-th root of a rational, or RootNotRational."""
    c = _frac(c)
    if c < 0 and n % 2 == 0:
        raise RootNotRational(f"{c} has no real {n}-th root")
    sign = -1 if c < 0 else 1

    def iroot(m):
        lo, hi = 0, 1
        while hi**n <= m:
            hi *= 2
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if mid**n <= m:
                lo = mid
            else:
                hi = mid
        return lo

    num, den = iroot(abs(c.numerator)), iroot(c.denominator)
    if num**n != abs(c.numerator) or den**n != c.denominator:
        raise RootNotRational(f"{c} is not an exact {n}-th power")
    return sign * Fraction(num, den)


class UnitPoly:
    """Finite Laurent polynomial in y with exponents in (1/den) Z."""

    __slots__ = ("den", "terms")

    def __init__(self, terms=None, den=1):
        terms = {int(k): _frac(v) for k, v in (terms or {}).items() if v}
        g = den
        for k in terms:
            g = gcd(g, k)
        g = g or 1
        self.den = den // g
        self.terms = {k // g: v for k, v in terms.items()}

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent, c=1):
        e = _frac(exponent)
        return cls({e.numerator: c}, e.denominator)

    @classmethod
    def coerce(cls, x):
        return x if isinstance(x, UnitPoly) else cls.const(x)

    def _rescaled(self, den):
        f = den // self.den
        return {k * f: v for k, v in self.terms.items()}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = UnitPoly.coerce(other)
        return self.den == other.den and self.terms == other.terms

    def __hash__(self):
        return hash((self.den, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        other = UnitPoly.coerce(other)
        den = lcm(self.den, other.den)
        out = self._rescaled(den)
        for k, v in other._rescaled(den).items():
            out[k] = out.get(k, 0) + v
        return UnitPoly(out, den)

    __radd__ = __add__

    def __neg__(self):
        return UnitPoly({k: -v for k, v in self.terms.items()}, self.den)

    def __sub__(self, other):
        return self + (-UnitPoly.coerce(other))

    def __rsub__(self, other):
        return UnitPoly.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UnitPoly):
            c = _frac(other)
            return UnitPoly({k: v * c for k, v in self.terms.items()}, self.den)
        den = lcm(self.den, other.den)
        a, b = self._rescaled(den), other._rescaled(den)
        out = {}
        for i, x in a.items():
            for j, y in b.items():
                out[i + j] = out.get(i + j, 0) + x * y
        return UnitPoly(out, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * UnitPoly.coerce(other).inverse()

    def inverse(self):
        if len(self.terms) != 1:
            raise InvertZeroLeading("only monomials in y are invertible")
        (k, v), = self.terms.items()
        return UnitPoly({-k: 1 / v}, self.den)

    def root(self, n):
        if len(self.terms) != 1:
            raise RootNotRational("only monomials in y have exact roots")
        (k, v), = self.terms.items()
        return UnitPoly({k: rational_root(v, n)}, self.den * n)

    def power(self, alpha):
        """Monomial raised to a rational power."""
        alpha = _frac(alpha)
        if len(self.terms) != 1:
            raise RootNotRational("only monomials in y have rational powers")
        (k, v), = self.terms.items()
        c = rational_root(v, alpha.denominator) ** alpha.numerator
        e = Fraction(k, self.den) * alpha
        return UnitPoly({e.numerator: c}, e.denominator)

    def items(self):
        """(exponent, coefficient) pairs sorted by exponent."""
        return [(Fraction(k, self.den), v) for k, v in sorted(self.terms.items())]

    def scaled(self, factor):
        factor = _frac(factor)
        out = {}
        den = self.den * factor.denominator
        for k, v in self.terms.items():
            out[k * factor.numerator] = v
        return UnitPoly(out, den)

    def shifted(self, shift):
        """Substitute mu -> mu + shift; every phase must be a sign."""
        shift = _frac(shift)
        out = {}
        for k, v in self.terms.items():
            t = Fraction(k, self.den) * shift
            if (2 * t).denominator != 1:
                raise ValueError("shift produces a non-real phase")
            out[k] = -v if (2 * t) % 2 else v
        return UnitPoly(out, self.den)

    def evaluate(self, mu=0):
        return sum(float(v) * cmath.exp(2j * cmath.pi * mu * k / self.den)
                   for k, v in self.terms.items())

    def to_json(self):
        return {"y_den": self.den,
                "y_terms": [[k, str(v)] for k, v in sorted(self.terms.items())]}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, v in self.items():
            parts.append(str(v) if e == 0 else f"{v}*y^{e}")
        return "(" + " + ".join(parts) + ")"


class _Series:
    __slots__ = ("den", "coeffs", "order")

    def __init__(self, coeffs=None, den=1, order=None):
        order = None if order is None else _frac(order)
        kept = {}
        for k, v in (coeffs or {}).items():
            v = self._coerce(v)
            if not v:
                continue
            if order is not None and Fraction(k, den) >= order:
                continue
            kept[int(k)] = v
        g = den
        for k in kept:
            g = gcd(g, k)
        g = g or 1
        self.den = den // g
        self.coeffs = {k // g: v for k, v in kept.items()}
        self.order = order

    # coefficient ring hooks
    @staticmethod
    def _coerce(v):
        raise NotImplementedError

    # constructors
    @classmethod
    def monomial(cls, exponent, c=1, order=None):
        e = _frac(exponent)
        return cls({e.numerator: c}, e.denominator, order)

    @classmethod
    def from_terms(cls, pairs, order=None):
        """Build from (exponent, coefficient) pairs; repeated exponents add."""
        pairs = [(_frac(e), c) for e, c in pairs]
        den = lcm(1, *(e.denominator for e, _ in pairs)) if pairs else 1
        out = {}
        for e, c in pairs:
            k = int(e * den)
            out[k] = out.get(k, 0) + cls._coerce(c)
        return cls(out, den, order)

    # inspection
    def items(self):
        return [(Fraction(k, self.den), v) for k, v in sorted(self.coeffs.items())]

    def coefficient(self, exponent):
        e = _frac(exponent)
        if self.order is not None and e >= self.order:
            raise InsufficientOrder(f"exponent {e} is beyond the truncation order {self.order}")
        k = e * self.den
        if k.denominator != 1:
            return self._coerce(0)
        return self.coeffs.get(int(k), self._coerce(0))

    def valuation(self):
        """Lowest exponent with nonzero coefficient (the order if none)."""
        if self.coeffs:
            return Fraction(min(self.coeffs), self.den)
        return self.order

    def leading(self):
        k = min(self.coeffs)
        return Fraction(k, self.den), self.coeffs[k]

    def is_zero(self):
        return not self.coeffs

    def truncate(self, order):
        order = _frac(order)
        if self.order is not None and order > self.order:
            raise InsufficientOrder(f"series known only below {self.order}")
        return type(self)(self.coeffs, self.den, order)

    def _common(self, other):
        den = lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        return (den, {k * fa: v for k, v in self.coeffs.items()},
                {k * fb: v for k, v in other.coeffs.items()})

    def _promote(self, other):
        if isinstance(other, _Series):
            if type(self) is type(other):
                return self, other
            if isinstance(self, FracSeries):
                return BiSeries.lift(self), other
            return self, BiSeries.lift(other)
        return self, type(self).constant(other)

    @classmethod
    def constant(cls, c):
        return cls({0: c}, 1, None)

    # arithmetic
    def __add__(self, other):
        a, b = self._promote(other)
        den, ca, cb = a._common(b)
        out = dict(ca)
        for k, v in cb.items():
            out[k] = out[k] + v if k in out else v
        return type(a)(out, den, _min_order(a.order, b.order))

    __radd__ = __add__

    def __neg__(self):
        return type(self)({k: -v for k, v in self.coeffs.items()}, self.den, self.order)

    def __sub__(self, other):
        a, b = self._promote(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._promote(other)
        return b + (-a)

    def __mul__(self, other):
        if not isinstance(other, _Series):
            c = self._coerce(other)
            return type(self)({k: v * c for k, v in self.coeffs.items()}, self.den, self.order)
        a, b = self._promote(other)
        va, vb = a.valuation(), b.valuation()
        if (a.order is None and not a.coeffs) or (b.order is None and not b.coeffs):
            return type(a)({}, 1, None)
        order = _min_order(
            None if a.order is None or vb is None else a.order + vb,
            None if b.order is None or va is None else b.order + va,
        )
        den, ca, cb = a._common(b)
        limit = None if order is None else order * den
        out = {}
        for i, x in ca.items():
            for j, y in cb.items():
                if limit is not None and i + j >= limit:
                    continue
                p = x * y
                out[i + j] = out[i + j] + p if i + j in out else p
        return type(a)(out, den, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _Series):
            return self * other.invert()
        return self * (1 / _frac(other))

    def __pow__(self, n):
        return self.int_pow(n)

    def int_pow(self, n):
        if n < 0:
            return self.invert().int_pow(-n)
        result = type(self).constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def invert(self):
        return self.power(-1)

    def principal_root(self, n):
        return self.power(Fraction(1, n))

    def power(self, alpha):
        """f**alpha for rational alpha by the J.C.P. Miller recurrence."""
        alpha = _frac(alpha)
        if not self.coeffs:
            raise InvertZeroLeading("series has no nonzero coefficient")
        kv = min(self.coeffs)
        f0 = self.coeffs[kv]
        v = Fraction(kv, self.den)
        if alpha.denominator == 1 and alpha >= 0:
            return self.int_pow(int(alpha))
        g0 = self._lead_power(f0, alpha)
        lead = v * alpha
        if self.order is None:
            if len(self.coeffs) == 1:
                return type(self).monomial(lead, g0)
            raise InsufficientOrder("non-monomial exact series has an infinite expansion; truncate first")
        steps = self.order * self.den - kv
        steps = int(steps) if steps.denominator == 1 else int(steps) + 1
        f = [self.coeffs.get(kv + i, self._coerce(0)) for i in range(steps)]
        inv_f0 = self._inverse(f0)
        g = [g0]
        for m in range(1, steps):
            acc = self._coerce(0)
            for k in range(1, m + 1):
                if f[k]:
                    acc = acc + f[k] * g[m - k] * ((alpha + 1) * k - m)
            g.append(acc * inv_f0 * Fraction(1, m))
        pairs = [(lead + Fraction(m, self.den), c) for m, c in enumerate(g)]
        return type(self).from_terms(pairs, lead + self.order - v)

    # substitutions
    def scaled(self, factor):
        """q -> q^factor."""
        factor = _frac(factor)
        return type(self)({k * factor.numerator: v for k, v in self.coeffs.items()},
                          self.den * factor.denominator,
                          None if self.order is None else self.order * factor)

    def shifted(self, shift):
        """tau -> tau + shift; every phase e^{2 pi i e shift} must be a sign."""
        shift = _frac(shift)
        out = {}
        for k, v in self.coeffs.items():
            t = Fraction(k, self.den) * shift
            if (2 * t).denominator != 1:
                raise ValueError("shift produces a non-real phase")
            out[k] = -v if (2 * t) % 2 else v
        return type(self)(out, self.den, self.order)

    def __eq__(self, other):
        if not isinstance(other, _Series):
            return NotImplemented
        a, b = self._promote(other)
        return a.order == b.order and a.items() == b.items()

    def __hash__(self):
        return hash((self.order, tuple(self.items())))

    def __repr__(self):
        parts = []
        for e, c in self.items():
            parts.append(f"{c}" if e == 0 else f"{c}*q^{e}")
        tail = "" if self.order is None else f" + O(q^{self.order})"
        return (" + ".join(parts) or "0") + tail

    def to_json(self):
        return {
            "exp_den": self.den,
            "terms": [[k, self._json_coeff(v)] for k, v in sorted(self.coeffs.items())],
            "order": None if self.order is None else str(self.order),
        }


class FracSeries(_Series):
    __slots__ = ()

    @staticmethod
    def _coerce(v):
        if isinstance(v, UnitPoly):
            raise TypeError("UnitPoly coefficient in a FracSeries")
        return _frac(v)

    @staticmethod
    def _inverse(c):
        return 1 / c

    @staticmethod
    def _lead_power(c, alpha):
        if alpha.denominator == 1:
            return c ** alpha.numerator
        return rational_root(c, alpha.denominator) ** alpha.numerator

    @staticmethod
    def _json_coeff(v):
        return str(v)

    def evaluate(self, tau):
        """Numeric value of the truncated sum at tau (principal q^{1/N})."""
        tau = complex(tau)
        return sum(float(c) * cmath.exp(2j * cmath.pi * tau * e) for e, c in self.items())

    def coefficient_list(self):
        return [(str(e), str(c)) for e, c in self.items()]


class BiSeries(_Series):
    __slots__ = ()

    @staticmethod
    def _coerce(v):
        return UnitPoly.coerce(v)

    @staticmethod
    def _inverse(c):
        return c.inverse()

    @staticmethod
    def _lead_power(c, alpha):
        return c.power(alpha)

    @staticmethod
    def _json_coeff(v):
        return v.to_json()

    @classmethod
    def lift(cls, series):
        return cls({k: UnitPoly.const(v) for k, v in series.coeffs.items()}, series.den, series.order)

    def y_scaled(self, factor):
        """mu -> factor * mu."""
        return BiSeries({k: v.scaled(factor) for k, v in self.coeffs.items()}, self.den, self.order)

    def y_shifted(self, shift):
        """mu -> mu + shift (phases must be signs)."""
        return BiSeries({k: v.shifted(shift) for k, v in self.coeffs.items()}, self.den, self.order)

    def at_y_one(self):
        return FracSeries({k: sum(v.terms.values(), Fraction(0)) for k, v in self.coeffs.items()},
                          self.den, self.order)

    def evaluate(self, tau, mu=0):
        tau = complex(tau)
        return sum(c.evaluate(mu) * cmath.exp(2j * cmath.pi * tau * e) for e, c in self.items())


def series_from_json(data):
    terms = data["terms"]
    order = None if data.get("order") is None else Fraction(data["order"])
    if terms and isinstance(terms[0][1], dict):
        coeffs = {k: UnitPoly({a: Fraction(b) for a, b in c["y_terms"]}, c["y_den"]) for k, c in terms}
        return BiSeries(coeffs, data["exp_den"], order)
    return FracSeries({k: Fraction(c) for k, c in terms}, data["exp_den"], order)


def series_arith(op, a, b=None):
    """Dispatch for add, mul, neg, invert, int_pow (b = n), principal_root (b = n)."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "invert":
        return a.invert()
    if op == "int_pow":
        return a.int_pow(int(b))
    if op == "principal_root":
        return a.principal_root(int(b))
    raise ValueError(f"unknown series operation {op!r}")


def first_mismatch(a, b, through_order):
    """None if a and b agree strictly below through_order, else the first Mismatch."""
    through_order = _frac(through_order)
    for s in (a, b):
        if s.order is not None and s.order < through_order:
            raise InsufficientOrder(f"series known only below {s.order}, need {through_order}")
    a, b = a._promote(b)
    exps = sorted({e for e, _ in a.items()} | {e for e, _ in b.items()})
    for e in exps:
        if e >= through_order:
            break
        ca, cb = a.coefficient(e), b.coefficient(e)
        if ca != cb:
            return Mismatch(e, ca, cb)
    return None


def series_equal(a, b, through_order):
    return first_mismatch(a, b, through_order) is None


# ---------------------------------------------------------------------------
# number theory


@lru_cache(maxsize=None)
def _bernoulli_table(n):
    # Akiyama-Tanigawa gives B_1 = +1/2; flipped below
    out = []
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return tuple(out)


def bernoulli(l):
    if l < 0:
        raise ValueError("Bernoulli index must be non-negative")
    b = _bernoulli_table(max(l, 1))[l]
    return -b if l == 1 else b


def divisor_sigma(l, n):
    if n < 1:
        raise ValueError("divisor_sigma needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**l
            e = n // d
            if e != d:
                total += e**l
        d += 1
    return total


def _ceil(x):
    x = _frac(x)
    return -((-x.numerator) // x.denominator)


def _g2k(two_k, order):
    """G_{2k}(tau) = -B_{2k}/4k + sum sigma_{2k-1}(n) q^n, truncated at order."""
    order = _frac(order)
    coeffs = {0: -bernoulli(two_k) / (2 * two_k)}
    for n in range(1, _ceil(order)):
        coeffs[n] = Fraction(divisor_sigma(two_k - 1, n))
    return FracSeries(coeffs, 1, order)


def eisenstein_series(two_k, kappa=0, lam=0, order=50):
    """Fourier expansion of the (twisted) Eisenstein series G_{2k}^{kappa lam}.

    The twisted series are the sign-character lattice sums, reduced to G_{2k}
    at 2 tau, tau/2 and (tau+1)/2.  Weight 2 with (1,1) returns
    F2 = 2 G_2(tau) - G_2((tau+1)/2).
    """
    if two_k % 2:
        raise OddWeight(f"weight {two_k} is odd")
    if two_k < 2:
        raise ValueError("weight must be at least 2")
    order = _frac(order)
    base = _g2k(two_k, order)
    if (kappa, lam) == (0, 0):
        return base
    if (kappa, lam) == (1, 0):
        doubled = _g2k(two_k, order / 2).scaled(2)
        return (2 * doubled - base).truncate(order)
    halved = _g2k(two_k, 2 * order).scaled(Fraction(1, 2))
    if (kappa, lam) == (0, 1):
        return (Fraction(2) ** (1 - two_k) * halved - base).truncate(order)
    shifted = halved.shifted(1)
    if two_k == 2:
        return (2 * base - shifted).truncate(order)
    return (Fraction(2) ** (1 - two_k) * shifted - base).truncate(order)


def eisenstein_at(two_k, argument, order):
    """G_{2k} at tau, 2tau or (tau+1)/2 as a series in q(tau)."""
    order = _frac(order)
    if argument == "tau":
        return _g2k(two_k, order)
    if argument == "2tau":
        return _g2k(two_k, order / 2).scaled(2).truncate(order)
    if argument == "(tau+1)/2":
        return _g2k(two_k, 2 * order).scaled(Fraction(1, 2)).shifted(1).truncate(order)
    raise ValueError(f"unknown argument {argument!r}")


def euler_product(order, sign=-1, step=1, offset=0, y_power=0):
    """prod_{n>=1} (1 + sign * y^{y_power} q^{step*n - offset}) truncated at order."""
    order = _frac(order)
    cls = BiSeries if y_power else FracSeries
    result = cls.constant(1).truncate(order)
    n = 1
    while True:
        e = step * n - _frac(offset)
        if e >= order:
            break
        c = UnitPoly.monomial(y_power, sign) if y_power else sign
        result = result * cls.from_terms([(0, 1), (e, c)])
        n += 1
    return result


def eta_series(order):
    order = _frac(order)
    shift = Fraction(1, 24)
    return (FracSeries.monomial(shift) * euler_product(order - shift)).truncate(order)


def delta_from_eisenstein(order):
    g4 = eisenstein_series(4, order=order)
    g6 = eisenstein_series(6, order=order)
    return ((20 * g4).int_pow(3) - 3 * (7 * g6).int_pow(2)).truncate(order)


def named_form_series(name, order=50):
    order = _frac(order)
    if name == "eta":
        return eta_series(order)
    if name == "delta":
        return (FracSeries.monomial(1) * euler_product(order - 1).int_pow(24)).truncate(order)
    if name == "g4_240":
        return 240 * eisenstein_series(4, order=order)
    if name == "f2":
        return eisenstein_series(2, 1, 1, order)
    if name == "j":
        work = order + 2
        e4 = 240 * eisenstein_series(4, order=work)
        delta = named_form_series("delta", work)
        return (e4.int_pow(3) * delta.invert()).truncate(order)
    raise ValueError(f"unknown named form {name!r}")


def theta_null_series(mu, nu, order=50):
    """theta_{mu nu}(0, tau) with theta_{mu nu}(z) = sum_n q^{(n - mu/2)^2/2} e^{2 pi i (n - mu/2)(z - nu/2)}."""
    order = _frac(order)
    if (mu, nu) == (1, 1):
        return FracSeries({}, 1, order)
    pairs = []
    n = 0
    while True:
        found = False
        for m in {n, -n} if mu == 0 else {n + 1, -n}:
            shift = m - Fraction(mu, 2)
            e = shift * shift / 2
            if e < order:
                found = True
                pairs.append((e, -1 if (nu and m % 2) else 1))
        if not found:
            break
        n += 1
    return FracSeries.from_terms(pairs, order)


def theta_y_series(mu, order=50):
    """theta_{mu 0}(mu_chem, tau) as a BiSeries: sum_n q^{(n - mu/2)^2/2} y^{n - mu/2}."""
    order = _frac(order)
    pairs = []
    n = 0
    while True:
        found = False
        for m in {n, -n} if mu == 0 else {n + 1, -n}:
            shift = m - Fraction(mu, 2)
            e = shift * shift / 2
            if e < order:
                found = True
                pairs.append((e, UnitPoly.monomial(shift)))
        if not found:
            break
        n += 1
    return BiSeries.from_terms(pairs, order)


def lattice_theta_series(gram, order=50):
    """sum over lattice vectors x of q^{x.A.x/2}, counted exactly below order."""
    from .enumeration import short_vectors

    order = _frac(order)
    if len(gram) == 0:
        return FracSeries({0: 1}, 1, order)
    import numpy as np

    _, norms, scale = short_vectors(gram, 2 * order)
    values, counts = np.unique(norms, return_counts=True)
    pairs = [(Fraction(int(v), 2 * scale * scale), int(c)) for v, c in zip(values, counts)]
    return FracSeries.from_terms([(e, c) for e, c in pairs if e < order], order)


# ---------------------------------------------------------------------------
# partition functions and energy means

PARTITION_MODELS = ("weyl_NS_product", "weyl_NS_theta", "weyl_R", "ising_NS", "ising_R")


def partition_series(model, order=50):
    """Partition functions as exact (Bi)series; y = e^{2 pi i mu}."""
    order = _frac(order)
    if model == "weyl_NS_product":
        lead = Fraction(-1, 24)
        body = (euler_product(order - lead, 1, offset=Fraction(1, 2), y_power=1)
                * euler_product(order - lead, 1, offset=Fraction(1, 2), y_power=-1))
        return (BiSeries.monomial(lead, 1) * body).truncate(order)
    if model == "weyl_NS_theta":
        eta = eta_series(order + 1)
        return (theta_y_series(0, order + 1) * eta.invert()).truncate(order)
    if model == "weyl_R":
        lead = Fraction(1, 12)
        front = BiSeries.from_terms([(lead, UnitPoly.monomial(Fraction(-1, 2))),
                                     (lead, UnitPoly.monomial(Fraction(1, 2)))])
        body = (euler_product(order - lead, 1, y_power=1)
                * euler_product(order - lead, 1, y_power=-1))
        return (front * body).truncate(order)
    if model == "ising_NS":
        lead = Fraction(-1, 48)
        return BiSeries.lift(FracSeries.monomial(lead)
                             * euler_product(order - lead, 1, offset=Fraction(1, 2))).truncate(order)
    if model == "ising_R":
        lead = Fraction(1, 24)
        return BiSeries.lift(FracSeries.monomial(lead) * euler_product(order - lead, 1)).truncate(order)
    return BiSeries.lift(_generic_partition(model, order))


def _generic_partition(model, order):
    """q^{E0} prod (1-q^n)^{-d_b(n)} prod (1+q^e)^{d_f(e)} from a degeneracy table."""
    from . import models

    try:
        spec = models.spectrum(model)
    except UnknownModel:
        raise
    e0 = models.vacuum_energy(model)
    body_order = order - e0
    result = FracSeries.constant(1).truncate(body_order)
    n = 1
    while n < body_order:
        d = models.poly_eval(spec.boson, n) if spec.boson else 0
        if d:
            factor = FracSeries.from_terms([(0, 1), (n, -1)], body_order)
            result = result * factor.power(-int(d))
        n += 1
    e = 1 - spec.fermion_offset
    while spec.fermion and e < body_order:
        d = models.poly_eval(spec.fermion, e)
        if d:
            result = result * FracSeries.from_terms([(0, 1), (e, 1)]).int_pow(int(d))
        e += 1
    return (FracSeries.monomial(e0) * result).truncate(order)


def energy_mean_series(model, order=50):
    """E0 + sum n d_b q^n/(1-q^n) + sum e d_f q^e/(1+q^e), expanded exactly."""
    from . import models

    order = _frac(order)
    spec = models.spectrum(model)
    pairs = [(0, models.vacuum_energy(model))]
    n = 1
    while spec.boson and n < order:
        w = n * models.poly_eval(spec.boson, n)
        r = 1
        while n * r < order:
            pairs.append((n * r, w))
            r += 1
        n += 1
    e = 1 - spec.fermion_offset
    while spec.fermion and e < order:
        w = e * models.poly_eval(spec.fermion, e)
        r = 1
        while e * r < order:
            pairs.append((e * r, w if r % 2 else -w))
            r += 1
        e += 1
    return FracSeries.from_terms(pairs, order)


def energy_closed_form_series(model, order=50):
    """The Eisenstein combination that the energy mean equals, as a series."""
    from . import models

    order = _frac(order)
    total = FracSeries.constant(0).truncate(order)
    for c, w, arg in models.energy_closed_form(model):
        total = total + c * eisenstein_at(w, arg, order)
    return total
