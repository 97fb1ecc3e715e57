"""Free-field models: spectra, degeneracies and energy-mean closed forms.

A model's one-particle spectrum is a set of bosonic levels n = 1, 2, ... and
fermionic levels e = n - offset (offset 1/2 for Neveu-Schwarz type, 0 for
Ramond type), each with a polynomial degeneracy.  The thermal energy mean

    E0 + sum_n n d_b(n) q^n/(1-q^n) + sum_e e d_f(e) q^e/(1+q^e)

is then a combination of Eisenstein series evaluated at tau, 2 tau or
(tau+1)/2, derived here term by term from the odd powers of e d(e).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import OutOfSpectrum, UnknownModel

HALF = Fraction(1, 2)


def _poly_mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def poly_eval(poly, x):
    return sum(c * x**p for p, c in poly.items())


def scalar_degeneracy_poly(dim):
    """d_b(n) for the massless scalar in even dimension dim >= 4."""
    if dim < 4 or dim % 2:
        raise UnknownModel(f"scalar model needs even D >= 4, got {dim}")
    d0 = (dim - 2) // 2
    poly = {2: Fraction(2, factorial(2 * d0))}
    for k in range(1, d0):
        poly = _poly_mul(poly, {2: Fraction(1), 0: Fraction(-k * k)})
    return poly


def bernoulli_constant(two_k):
    from .qseries import bernoulli
    return -bernoulli(two_k) / (2 * two_k)


@dataclass(frozen=True)
class ModelId:
    tag: str
    dimension: int = 4
    central_charge: Fraction | None = None
    l0_mean: complex | None = None

    @classmethod
    def parse(cls, name):
        if isinstance(name, ModelId):
            return name
        key = name.strip().lower().replace("-", "_")
        aliases = {
            "weyl": "chiral_weyl", "chiral_weyl": "chiral_weyl",
            "ising_ns": "ising_NS", "ising_r": "ising_R",
            "weyl4_canonical": "weyl4_canonical", "weyl4c": "weyl4_canonical",
            "weyl4_subcanonical": "weyl4_subcanonical", "weyl4s": "weyl4_subcanonical",
            "maxwell": "maxwell", "gauge": "gauge_longitudinal",
            "gauge_longitudinal": "gauge_longitudinal",
            "u1": "chiral_u1_restriction", "chiral_u1_restriction": "chiral_u1_restriction",
            "n2": "n2_super", "n2_super": "n2_super",
        }
        if key in aliases:
            return cls(aliases[key])
        if key.startswith("scalar"):
            tail = key[len("scalar"):].lstrip("_d")
            return cls("scalar", dimension=int(tail) if tail else 4)
        raise UnknownModel(f"unknown model {name!r}")

    @property
    def name(self):
        return f"scalar{self.dimension}" if self.tag == "scalar" else self.tag


@dataclass(frozen=True)
class Spectrum:
    boson: dict = field(default_factory=dict)
    fermion: dict = field(default_factory=dict)
    fermion_offset: Fraction = HALF


_FIXED = {
    "chiral_weyl": Spectrum(fermion={0: Fraction(2)}),
    "ising_NS": Spectrum(fermion={0: Fraction(1)}),
    "ising_R": Spectrum(fermion={0: Fraction(1)}, fermion_offset=Fraction(0)),
    # 2(n+1)(n+2) at energy e = n + 3/2, i.e. 2e^2 - 1/2 (vanishes at e = 1/2)
    "weyl4_canonical": Spectrum(fermion={2: Fraction(2), 0: Fraction(-1, 2)}),
    # twice 3n(n+1)+2 at energy e = n + 1/2, n >= 0
    "weyl4_subcanonical": Spectrum(fermion={2: Fraction(6), 0: Fraction(5, 2)}),
    "maxwell": Spectrum(boson={2: Fraction(2), 0: Fraction(-2)}),
    "gauge_longitudinal": Spectrum(boson={2: Fraction(2), 0: Fraction(2)}),
    "chiral_u1_restriction": Spectrum(boson={0: Fraction(1)}),
}


def spectrum(model):
    model = ModelId.parse(model)
    if model.tag == "scalar":
        return Spectrum(boson=scalar_degeneracy_poly(model.dimension))
    if model.tag in _FIXED:
        return _FIXED[model.tag]
    raise UnknownModel(f"model {model.name} has no degeneracy table")


def degeneracy(model, n):
    """(d_b, d_f) at energy n; n is an integer or a half-integer."""
    spec = spectrum(model)
    n = Fraction(n)
    if n <= 0:
        raise OutOfSpectrum(f"energy {n} is not positive")
    d_b = d_f = 0
    on_boson = n.denominator == 1
    on_fermion = (n + spec.fermion_offset).denominator == 1
    if spec.boson and on_boson:
        d_b = poly_eval(spec.boson, n)
    if spec.fermion and on_fermion:
        d_f = poly_eval(spec.fermion, n)
    if not ((spec.boson and on_boson) or (spec.fermion and on_fermion)):
        raise OutOfSpectrum(f"energy {n} is not a level of {ModelId.parse(model).name}")
    return int(d_b), int(d_f)


def energy_closed_form(model):
    """Terms (coefficient, weight 2k, argument) with argument in
    {"tau", "2tau", "(tau+1)/2"}; their Eisenstein sum is the energy mean."""
    spec = spectrum(model)
    terms = []
    for p, c in sorted(_poly_mul(spec.boson, {1: Fraction(1)}).items()):
        if p % 2 == 0:
            raise UnknownModel("bosonic energy weights must be odd polynomials")
        terms.append((c, p + 1, "tau"))
    for p, c in sorted(_poly_mul(spec.fermion, {1: Fraction(1)}).items()):
        if p % 2 == 0:
            raise UnknownModel("fermionic energy weights must be odd polynomials")
        two_k = p + 1
        if spec.fermion_offset == HALF:
            terms.append((-c * Fraction(2) ** (1 - two_k), two_k, "(tau+1)/2"))
            terms.append((c, two_k, "tau"))
        else:
            terms.append((c, two_k, "tau"))
            terms.append((-2 * c, two_k, "2tau"))
    return _merge(terms)


def _merge(terms):
    acc = {}
    for c, w, arg in terms:
        acc[(w, arg)] = acc.get((w, arg), 0) + c
    return [(c, w, arg) for (w, arg), c in sorted(acc.items()) if c]


def vacuum_energy(model):
    """Constant term of the closed form, i.e. the vacuum energy E0."""
    return sum((c * bernoulli_constant(w) for c, w, _ in energy_closed_form(model)), Fraction(0))
