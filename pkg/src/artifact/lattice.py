"""Even lattices: discriminant groups, vertex-algebra characters, cocycles,
and the N=2 superconformal characters at k = 1, 2."""

import cmath
import itertools
import math
from collections import namedtuple
from fractions import Fraction

import numpy as np

from .enumeration import as_gram, short_vectors
from .errors import DegenerateGram, InvalidLabels, NotEven, WindowTooSmall
from .modforms import _terms_needed, eta_value
from .qseries import BiSeries, FracSeries, UnitPoly, euler_product, eta_series

E8_CARTAN = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, 0),
    (0, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, -1),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, 0),
    (0, 0, 0, 0, -1, 0, 0, 2),
)

NAMED_LATTICES = {"e8": E8_CARTAN, "a1": ((2,),), "a2": ((2, -1), (-1, 2)), "z3": ((3,),)}


def parse_gram(spec):
    """A named lattice (e8, a1, a2, z3) or a nested list."""
    if isinstance(spec, str):
        key = spec.strip().lower()
        if key in NAMED_LATTICES:
            return as_gram(NAMED_LATTICES[key])
        import json

        return as_gram(json.loads(spec))
    return as_gram(spec)


def _det(gram):
    from sympy import Matrix

    return int(Matrix(gram).det()) if gram else 1


def _inverse(gram):
    from sympy import Matrix

    inv = Matrix(gram).inv()
    r = len(gram)
    return [[Fraction(int(inv[i, j].p), int(inv[i, j].q)) for j in range(r)] for i in range(r)]


def _require_even(gram):
    if any(gram[i][i] % 2 for i in range(len(gram))):
        raise NotEven("diagonal of the Gram matrix must be even")


def pairing(gram, a, b):
    return sum(Fraction(a[i]) * gram[i][j] * Fraction(b[j]) for i in range(len(gram)) for j in range(len(gram)))


# ---------------------------------------------------------------------------
# discriminant group


def discriminant_group(gram):
    """(|det A|, coset representatives of Q*/Q) with coordinates in [0, 1).

    The dual lattice is A^{-1} Z^r in the basis of Q, so the group is
    generated by the columns of A^{-1} modulo Z^r.
    """
    gram = parse_gram(gram)
    det = _det(gram)
    if det == 0:
        raise DegenerateGram("Gram matrix is singular")
    order = abs(det)
    r = len(gram)
    inv = _inverse(gram)
    gens = [tuple(inv[i][j] % 1 for i in range(r)) for j in range(r)]
    zero = tuple(Fraction(0) for _ in range(r))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % 1 for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    if len(seen) != order:
        raise AssertionError("discriminant group closure disagrees with |det|")
    reps = sorted(seen, key=lambda v: (pairing(gram, v, v), v))
    return order, reps


# ---------------------------------------------------------------------------
# lattice vertex-algebra characters

Character = namedtuple("Character", "series value")


def _as_fractions(vec, r):
    if vec is None:
        return tuple(Fraction(0) for _ in range(r))
    return tuple(Fraction(v) for v in vec)


def _character_series(gram, lam, mu, order):
    r = len(gram)
    lam = _as_fractions(lam, r)
    shift = Fraction(r, 24)
    points, norms, scale = short_vectors(gram, 2 * (order + shift), lam)
    pairs = []
    formal = any(mu)
    for x, n2 in zip(points, norms):
        e = Fraction(int(n2), 2 * scale * scale)
        if e >= order + shift:
            continue
        if formal:
            gamma = [int(x[i]) + lam[i] for i in range(r)]
            pairs.append((e, UnitPoly.monomial(pairing(gram, gamma, mu))))
        else:
            pairs.append((e, 1))
    cls = BiSeries if formal else FracSeries
    theta = cls.from_terms(pairs, order + shift)
    inv_eta = eta_series(order + 2 * shift + 1).power(-r)
    if formal:
        inv_eta = BiSeries.lift(inv_eta)
    return (theta * inv_eta).truncate(order)


def _character_value(gram, lam, tau, mu, tol=1e-13):
    """eta^{-r} sum_{gamma in lam + Q} q^{(gamma|gamma)/2} e^{2 pi i (gamma|mu)}."""
    r = len(gram)
    tau = complex(tau)
    lam = np.array([float(v) for v in _as_fractions(lam, r)])
    mu = np.zeros(r, dtype=complex) if mu is None else np.asarray(mu, dtype=complex)
    a = np.array(gram, dtype=float)
    q = abs(cmath.exp(2j * math.pi * tau))
    base = 2 * _terms_needed(r / 2, q, tol / 4)
    # the imaginary part of mu recentres the Gaussian at -Im(mu)/Im(tau)
    c = mu.imag / tau.imag
    bound = (math.sqrt(base) + math.sqrt(max(float(c @ a @ c), 0.0))) ** 2 + 1
    points, _, _ = short_vectors(gram, Fraction(bound).limit_denominator(10**6), [Fraction(v).limit_denominator(10**9) for v in lam])
    gammas = points + lam
    norms = np.einsum("ni,ij,nj->n", gammas, a, gammas)
    phases = gammas @ a @ mu
    total = complex(np.sum(np.exp(1j * math.pi * tau * norms + 2j * math.pi * phases)))
    eta, _ = eta_value(tau, tol / 10)
    return total / eta**r


def voa_character(gram, lam=None, tau=None, mu=None, order=2):
    """Series (exact, to q^order) and, when tau is given, the numeric value.

    A rational mu gives a BiSeries in y whose exponents are (gamma|mu), so
    evaluating it at chemical potential 1 reproduces the value at mu.
    """
    gram = parse_gram(gram)
    _require_even(gram)
    short_vectors(gram, 0)  # positive definiteness
    r = len(gram)
    exact_mu = mu is None or all(isinstance(v, (int, Fraction)) for v in mu)
    series = None
    if exact_mu:
        series = _character_series(gram, lam, _as_fractions(mu, r), Fraction(order))
    value = None if tau is None else _character_value(gram, lam, tau, None if mu is None else [complex(v) for v in mu])
    return Character(series, value)


def char_modular_check(gram, tau, mu=None, tol=1e-13):
    """Residuals of the T law and the S law for every discriminant class.

    T: chi_l(tau+1, mu) = e^{2 pi i ((l|l)/2 - r/24)} chi_l(tau, mu)
    S: chi_l(-1/tau, mu/tau) = e^{i pi (mu|mu)/tau} |D|^{-1/2} sum_l' e^{-2 pi i (l|l')} chi_l'(tau, mu)
    """
    gram = parse_gram(gram)
    _require_even(gram)
    r = len(gram)
    tau = complex(tau)
    mu = np.zeros(r, dtype=complex) if mu is None else np.asarray(mu, dtype=complex)
    order, reps = discriminant_group(gram)
    a = np.array(gram, dtype=float)
    chi = [_character_value(gram, lam, tau, mu, tol) for lam in reps]
    t_res = 0.0
    s_res = 0.0
    for i, lam in enumerate(reps):
        phase = cmath.exp(2j * math.pi * (float(pairing(gram, lam, lam)) / 2 - r / 24))
        shifted = _character_value(gram, lam, tau + 1, mu, tol)
        t_res = max(t_res, abs(shifted - phase * chi[i]))
        lhs = _character_value(gram, lam, -1 / tau, mu / tau, tol)
        rhs = sum(cmath.exp(-2j * math.pi * float(pairing(gram, lam, other))) * chi[j]
                  for j, other in enumerate(reps))
        rhs *= cmath.exp(1j * math.pi * complex(mu @ a @ mu) / tau) / math.sqrt(order)
        s_res = max(s_res, abs(lhs - rhs))
    return {"T": t_res, "S": s_res, "classes": order}


# ---------------------------------------------------------------------------
# cocycles


class CocycleTable:
    """eps(a, b) = i^{a.(U - U^T).b}, U the strict upper triangle of the Gram matrix.

    This is the ordered bimultiplicative choice (-1)^{sum_{i<j} G_ij a_i b_j}
    multiplied by the coboundary of i^{sum_{i<j} G_ij a_i a_j}, the gauge that
    makes eps(a, -a) = 1.  Values are defined for vectors in the coordinate
    window |a_i| <= window.
    """

    def __init__(self, gram, window):
        self.gram = gram
        self.window = window
        upper = np.triu(np.array(gram, dtype=np.int64), 1)
        self._skew = upper - upper.T

    def _inside(self, vecs):
        return np.all(np.abs(vecs) <= self.window, axis=-1)

    def exponent(self, a, b):
        """Exponent of i, modulo 4, for broadcastable integer arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if not (np.all(self._inside(a)) and np.all(self._inside(b))):
            raise WindowTooSmall("vector outside the cocycle window")
        return np.einsum("...i,ij,...j->...", a, self._skew, b) % 4

    def __call__(self, a, b):
        return 1j ** int(self.exponent(a, b))

    def __getitem__(self, key):
        return self(*key)


def _window_vectors(r, radius):
    return np.array(list(itertools.product(range(-radius, radius + 1), repeat=r)), dtype=np.int64)


def cocycle_conditions(table, samples=4000, seed=0):
    """Worst violation of each defining condition over triples from the inner window.

    Exhaustive when the inner window is small, otherwise a seeded sample.
    """
    r = len(table.gram)
    inner = table.window // 3
    if inner < 1:
        raise WindowTooSmall("triples need a window of at least 3 so that sums stay inside")
    count = (2 * inner + 1) ** r
    if count**3 <= 200_000:
        vecs = _window_vectors(r, inner)
        idx = np.array(list(itertools.product(range(count), repeat=3)))
        a, b, c = vecs[idx[:, 0]], vecs[idx[:, 1]], vecs[idx[:, 2]]
    else:
        rng = np.random.default_rng(seed)
        a, b, c = (rng.integers(-inner, inner + 1, size=(samples, r)) for _ in range(3))
    g = np.array(table.gram, dtype=np.int64)
    e = table.exponent
    norm = lambda v: np.einsum("ni,ij,nj->n", v, g, v)  # noqa: E731
    zero = np.zeros_like(a)
    report = {
        "unit": int(np.count_nonzero(e(a, zero)) + np.count_nonzero(e(zero, a))),
        "cocycle": int(np.count_nonzero((e(a, b) + e(a + b, c) - e(a, b + c) - e(b, c)) % 4)),
        # eps(a,b)/eps(b,a) = (-1)^{(a|b) + |a|^2 |b|^2}
        "symmetry": int(np.count_nonzero((e(a, b) - e(b, a) - 2 * (np.einsum("ni,ij,nj->n", a, g, b) + norm(a) * norm(b))) % 4)),
        "inverse": int(np.count_nonzero(e(a, -a))),
        # eps(-b,-a) = conj eps(a,b)
        "conjugation": int(np.count_nonzero((e(-b, -a) + e(a, b)) % 4)),
    }
    report["checked"] = len(a)
    return report


def cocycle_build(gram, window):
    """Build the gauge-fixed ordered cocycle and verify its defining conditions."""
    gram = parse_gram(gram)
    _require_even(gram)
    if _det(gram) == 0:
        raise DegenerateGram("Gram matrix is singular")
    table = CocycleTable(gram, int(window))
    report = cocycle_conditions(table)
    bad = {k: v for k, v in report.items() if k != "checked" and v}
    if bad:
        raise AssertionError(f"cocycle conditions violated: {bad}")
    return table


# ---------------------------------------------------------------------------
# N = 2 superconformal characters


def k_series(m, l, order, parity=None):
    """K_m(tau, mu; l) = eta^{-1} sum_n q^{(l/2)(n + m/l)^2} y^{n + m/l}, exactly.

    With parity 0 or 1 only the terms with n of that parity are kept.
    """
    m, order = Fraction(m), Fraction(order)
    shift = Fraction(1, 24)
    pairs = []
    n = 0
    while True:
        found = False
        for k in {n, -n - 1}:
            x = k + m / l
            e = Fraction(l, 2) * x * x
            if e < order + shift:
                found = True
                if parity is None or k % 2 == parity:
                    pairs.append((e, UnitPoly.monomial(x)))
        if not found and n > abs(m):
            break
        n += 1
    theta = BiSeries.from_terms(pairs, order + shift)
    return (theta * BiSeries.lift(eta_series(order + 2 * shift + 1).power(-1))).truncate(order)


def k_value(m, l, tau, mu=0j, tol=1e-15, parity=None):
    tau = complex(tau)
    mu = complex(mu)
    m = float(m)
    centre = -mu.imag / (l * tau.imag)
    spread = math.sqrt(max(-math.log(tol) + 10, 1) / (math.pi * l * tau.imag / 2)) + 2
    lo = math.floor(centre - m / l - spread)
    hi = math.ceil(centre - m / l + spread)
    n = np.arange(lo, hi + 1)
    if parity is not None:
        n = n[n % 2 == parity]
    x = n + m / l
    total = complex(np.sum(np.exp(1j * math.pi * l * tau * x * x + 2j * math.pi * mu * x)))
    return total / eta_value(tau, tol)[0]


def k_modular_residual(m, l, tau, mu):
    """|K_m(-1/tau, mu/tau) - e^{i pi mu^2/(l tau)} l^{-1/2} sum_m' e^{-2 pi i m m'/l} K_m'(tau, mu)|."""
    tau, mu = complex(tau), complex(mu)
    lhs = k_value(m, l, -1 / tau, mu / tau)
    rhs = sum(cmath.exp(-2j * math.pi * m * mp / l) * k_value(mp, l, tau, mu) for mp in range(1, l + 1))
    rhs *= cmath.exp(1j * math.pi * mu * mu / (l * tau)) / math.sqrt(l)
    return abs(lhs - rhs)


def n2_central_charge(k):
    return Fraction(3 * k, k + 2)


def n2_labels(k):
    """Allowed Neveu-Schwarz labels (l, m): 0 <= l <= k, (l - m)/2 in {0, ..., l}."""
    return [(l, m) for l in range(k + 1) for m in range(-l, l + 1, 2)]


def n2_weights(k, l, m):
    """(Delta, charge) = ((l(l+2) - m^2)/(4(k+2)), m/(k+2))."""
    _check_labels(k, l, m)
    return Fraction(l * (l + 2) - m * m, 4 * (k + 2)), Fraction(m, k + 2)


def _check_labels(k, l, m):
    if k not in (1, 2):
        raise InvalidLabels("only k = 1 and k = 2 are implemented")
    if (l, m) not in n2_labels(k):
        raise InvalidLabels(f"(l, m) = ({l}, {m}) is not an allowed label at k = {k}")


def _q_monomial(e):
    return BiSeries.monomial(Fraction(e))


def n2_character_series(k, l, m, order=5):
    """chi_{lm}(tau, mu; k) as an exact BiSeries through q^order."""
    _check_labels(k, l, m)
    order = Fraction(order)
    work = order + 1
    if k == 1:
        return k_series(m, 3, order)
    ns_plus = BiSeries.lift(euler_product(work, sign=1, offset=Fraction(1, 2)))
    ns_minus = BiSeries.lift(euler_product(work, sign=-1, offset=Fraction(1, 2)))
    r_plus = BiSeries.lift(euler_product(work, sign=1))
    if l == 1:
        return (k_series(Fraction(m, 2), 2, work) * r_plus * _q_monomial(Fraction(1, 24))).truncate(order)
    if l == 2 and m:
        # su(2) doublet states with J0 in m/4 + 2Z pair with the even Ising sector
        even, odd = (ns_plus + ns_minus) * Fraction(1, 2), (ns_plus - ns_minus) * Fraction(1, 2)
        same = 0 if m > 0 else 1
        body = k_series(1, 2, work, same) * even + k_series(1, 2, work, 1 - same) * odd
        return (body * _q_monomial(Fraction(-1, 48))).truncate(order)
    k0 = k_series(0, 2, work)
    sign = 1 if l == 0 else -1
    body = k0 * ns_plus + sign * k0.y_shifted(Fraction(1, 2)) * ns_minus
    return (body * _q_monomial(Fraction(-1, 48)) * Fraction(1, 2)).truncate(order)


def _product_value(tau, sign, offset, tol=1e-16):
    q = cmath.exp(2j * math.pi * complex(tau))
    n_max = _terms_needed(0, abs(q), tol) + 1
    n = np.arange(1, n_max + 1) - offset
    return cmath.exp(complex(np.sum(np.log1p(sign * np.exp(2j * math.pi * complex(tau) * n)))))


def n2_character_value(k, l, m, tau, mu=0j):
    _check_labels(k, l, m)
    tau, mu = complex(tau), complex(mu)
    if k == 1:
        return k_value(m, 3, tau, mu)
    qp = lambda e: cmath.exp(2j * math.pi * tau * e)  # noqa: E731
    if l == 1:
        return k_value(m / 2, 2, tau, mu) * qp(1 / 24) * _product_value(tau, 1, 0)
    if l == 2 and m:
        plus, minus = _product_value(tau, 1, 0.5), _product_value(tau, -1, 0.5)
        same = 0 if m > 0 else 1
        body = (k_value(1, 2, tau, mu, parity=same) * (plus + minus)
                + k_value(1, 2, tau, mu, parity=1 - same) * (plus - minus)) / 2
        return body * qp(-1 / 48)
    sign = 1 if l == 0 else -1
    body = (k_value(0, 2, tau, mu) * _product_value(tau, 1, 0.5)
            + sign * k_value(0, 2, tau, mu + 0.5) * _product_value(tau, -1, 0.5))
    return body * qp(-1 / 48) / 2


def n2_character(k, l, m, tau=None, mu=0j, order=5):
    """Numeric value when tau is given, otherwise the exact series."""
    if tau is None:
        return n2_character_series(k, l, m, order)
    return n2_character_value(k, l, m, tau, mu)


def n2_t2_phase(k, l, m):
    delta, _ = n2_weights(k, l, m)
    return cmath.exp(4j * math.pi * float(delta - n2_central_charge(k) / 24))


def n2_t2_residual(k, l, m, tau):
    return abs(n2_character_value(k, l, m, complex(tau) + 2) - n2_t2_phase(k, l, m) * n2_character_value(k, l, m, tau))


def n2_smatrix(k):
    """S_{lm,l'm'} = 2/(k+2) sin(pi (l+1)(l'+1)/(k+2)) e^{i pi m m'/(k+2)}, rows in n2_labels order."""
    labels = n2_labels(k)
    h = k + 2
    return np.array([[2 / h * math.sin(math.pi * (l + 1) * (lp + 1) / h) * cmath.exp(1j * math.pi * m * mp / h)
                      for lp, mp in labels] for l, m in labels])


def n2_s_residual(k, tau):
    """max |chi(-1/tau) - S chi(tau)| over all labels, at mu = 0."""
    labels = n2_labels(k)
    s = n2_smatrix(k)
    at = np.array([n2_character_value(k, l, m, tau) for l, m in labels])
    inv = np.array([n2_character_value(k, l, m, -1 / complex(tau)) for l, m in labels])
    return float(np.max(np.abs(inv - s @ at)))
