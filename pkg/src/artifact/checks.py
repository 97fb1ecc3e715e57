"""Quick identity and consistency checks behind `artifact verify`.

Each check returns (ok, residual_or_detail).  Checks that document a known
disagreement with a printed formula report "xfail" instead of failing the
suite; an unexpected pass of such a check is reported as "xpass" and fails.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np

from . import cft, elliptic, lattice, modforms, modgroup, qseries, thermo
from .modgroup import S, T

CHECKS = {}


def check(cid, suite, expected_failure=None):
    def register(fn):
        CHECKS[cid] = (suite, fn, expected_failure)
        return fn
    return register


def _series_mismatch(a, b, order):
    m = qseries.first_mismatch(a, b, order)
    return m is None, "none" if m is None else f"first mismatch at q^{m.exponent}"


# identities -----------------------------------------------------------------


@check("01.delta_eisenstein", "identities")
def _c1(ctx):
    n = min(ctx["order"], 30)
    return _series_mismatch(qseries.delta_from_eisenstein(n + 1),
                            qseries.named_form_series("delta", n + 1), n + 1)


@check("02.eta24_delta", "identities")
def _c2a(ctx):
    n = min(ctx["order"], 30) + 1
    eta24 = qseries.eta_series(n).int_pow(24).truncate(n)
    return _series_mismatch(eta24, qseries.delta_from_eisenstein(n), n)


@check("02.j_coefficients", "identities")
def _c2b(ctx):
    j = qseries.named_form_series("j", 3)
    got = [j.coefficient(e) for e in (0, 1, 2)]
    return got == [744, 196884, 21493760], ",".join(str(c) for c in got)


@check("03.triple_product", "identities")
def _c3(ctx):
    return _series_mismatch(qseries.partition_series("weyl_NS_product", 10),
                            qseries.partition_series("weyl_NS_theta", 10), 10)


@check("04.theta_eighth_powers", "identities")
def _c4(ctx):
    total = sum((qseries.theta_null_series(m, n, 10).int_pow(8) for m, n in ((0, 0), (1, 0), (0, 1))),
                qseries.FracSeries.constant(0).truncate(10))
    return _series_mismatch(total * Fraction(1, 2), 240 * qseries.eisenstein_series(4, order=10), 10)


@check("05.e8_theta", "identities")
def _c5a(ctx):
    return _series_mismatch(qseries.lattice_theta_series(lattice.E8_CARTAN, 10),
                            240 * qseries.eisenstein_series(4, order=10), 10)


@check("05.e8_character_cubed", "identities")
def _c5b(ctx):
    chi = lattice.voa_character(lattice.E8_CARTAN, order=7).series
    return _series_mismatch(chi.int_pow(3), qseries.named_form_series("j", 6), 6)


# elliptic -------------------------------------------------------------------


@check("06.curve_exercise", "elliptic")
def _c6a(ctx):
    curve = elliptic.Curve.parse("y2=x3-x+1")
    p = elliptic.CurvePoint(Fraction(-11, 9), Fraction(17, 27))
    r = elliptic.curve_add(p, elliptic.CurvePoint(Fraction(0), Fraction(1)), curve)
    return (r.x, r.y) == (Fraction(159, 121), Fraction(-1861, 1331)), f"{r.x},{r.y}"


def rational_points(curve, generators, rng, count, max_mult=3):
    """Random small combinations of the given rational points."""
    multiples = []
    for g in generators:
        acc = elliptic.CurvePoint.infinity()
        row = [acc]
        for _ in range(max_mult):
            acc = elliptic.curve_add(acc, g, curve)
            row.append(acc)
        multiples.append(row + [-p for p in row[1:]])
    out = []
    for _ in range(count):
        pt = elliptic.CurvePoint.infinity()
        for row in multiples:
            pt = elliptic.curve_add(pt, rng.choice(row), curve)
        out.append(pt)
    return out


@check("06.group_law", "elliptic")
def _c6b(ctx):
    rng = random.Random(ctx["seed"])
    curve = elliptic.Curve.parse("y2=x3-x+1")
    gens = [elliptic.CurvePoint(Fraction(0), Fraction(1)), elliptic.CurvePoint(Fraction(1), Fraction(1))]
    pts = rational_points(curve, gens, rng, 300, max_mult=2)
    bad = 0
    for i in range(100):
        p, q, r = pts[3 * i: 3 * i + 3]
        add = lambda u, v: elliptic.curve_add(u, v, curve)  # noqa: E731
        bad += add(p, q) != add(q, p)
        bad += add(add(p, q), r) != add(p, add(q, r))
    return bad == 0, f"{bad} failures"


def _sample_points(rng, n, tau):
    pts = []
    while len(pts) < n:
        z = complex(rng.uniform(0.05, 0.95), 0) + rng.uniform(0.05, 0.95) * tau
        pts.append(z)
    return pts


@check("07.p_function_suite", "elliptic")
def _c7(ctx):
    rng = random.Random(ctx["seed"])
    worst = 0.0
    fd = 0.0
    for tau in (1j, 0.2 + 1.1j, 0.5 + 0.9j):
        for z in _sample_points(rng, 3, tau):
            z = z * 0.4 + 0.1
            for k in (1, 2, 3):
                for kappa, lam in ((0, 0), (1, 0), (0, 1), (1, 1)):
                    p = lambda w: elliptic.p_function(k, kappa, lam, w, tau)  # noqa: E731
                    base = p(z)
                    worst = max(worst, abs(p(z + 1) - (-1) ** lam * base))
                    shift = -2j * math.pi if (k, kappa, lam) == (1, 0, 0) else 0
                    worst = max(worst, abs(p(z + tau) - (-1) ** kappa * base - shift))
                    worst = max(worst, abs(p(-z) - (-1) ** k * base))
                    h = 1e-5
                    deriv = (p(z + h) - p(z - h)) / (2 * h)
                    nxt = elliptic.p_function(k + 1, kappa, lam, z, tau)
                    fd = max(fd, abs(deriv + k * nxt) / (1 + abs(nxt)))
                    if kappa or lam or k > 2:
                        for g in (S, T, T @ S):
                            worst = max(worst, abs(elliptic.p_covariance_residual(k, kappa, lam, g, z, tau)))
                for kappa, lam in ((1, 0), (0, 1), (1, 1)):
                    worst = max(worst, abs(elliptic.theta_ratio_p1(kappa, lam, z, tau)
                                           - elliptic.p_function(1, kappa, lam, z, tau)))
    return worst < 1e-8 and fd < 1e-6, max(worst, fd)


@check("08.weierstrass", "elliptic")
def _c8(ctx):
    rng = random.Random(ctx["seed"])
    worst = 0.0
    for tau in (1j, 2j, 0.5 + 1j):
        g2 = elliptic.weierstrass("g2", tau=tau)
        g3 = elliptic.weierstrass("g3", tau=tau)
        curve = elliptic.curve_for_tau(tau)
        for _ in range(20):
            z1, z2 = (0.3 * complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) + 0.35 * (1 + tau) for _ in range(2))
            wp = elliptic.weierstrass("p", z1, tau)
            dp = elliptic.weierstrass("p_prime", z1, tau)
            worst = max(worst, abs(dp**2 - (4 * wp**3 - g2 * wp - g3)) / (1 + abs(dp) ** 2))
            s = elliptic.curve_add(elliptic.uniformize(z1, tau), elliptic.uniformize(z2, tau), curve, tol=1e-6)
            direct = elliptic.uniformize(z1 + z2, tau)
            worst = max(worst, abs(s.x - direct.x) / (1 + abs(direct.x)))
    return worst < 1e-6, worst


# modular forms -----------------------------------------------------------------


def random_gamma(rng, length):
    g = modgroup.IDENTITY
    for _ in range(length):
        g = g @ (S if rng.random() < 0.5 else modgroup.T_power(rng.choice((-2, -1, 1, 2))))
    return g


@check("09.g2_anomaly", "modular")
def _c9a(ctx):
    tau = 0.2 + 1.1j
    res = modforms.covariance_residual(modforms.FormId("Eisenstein", 2), 2, S, tau)
    return abs(res - 1j / (4 * math.pi * tau)) < 1e-9, abs(res - 1j / (4 * math.pi * tau))


@check("09.covariance", "modular")
def _c9b(ctx):
    rng = random.Random(ctx["seed"])
    worst = 0.0
    forms = [(modforms.FormId("Delta"), 12), (modforms.FormId("Eisenstein", 4), 4),
             (modforms.FormId("Eisenstein", 6), 6), (modforms.FormId("J"), 0)]
    for _ in range(10):
        tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(1.0, 1.6))
        g = random_gamma(rng, rng.randint(1, 4))
        image = modgroup.moebius_act(g, tau)
        if image.imag < 0.2:
            continue
        for f, w in forms:
            res = modforms.covariance_residual(f, w, g, tau)
            scale = 1 + abs(modforms.form_eval(f, tau))
            worst = max(worst, abs(res) / scale)
    return worst < 1e-8, worst


# cft ------------------------------------------------------------------------


@check("10.image_sums", "cft")
def _c10(ctx):
    tau = 1j
    kin = cft.Kinematics.from_alpha(0.13 + 0.07j, 0.17)
    worst = 0.0
    for model in ("chiral_weyl", "scalar4", "scalar6", "maxwell"):
        a = cft.thermal_2pt(model, kin, tau)
        b = cft.image_sum_2pt(model, kin, tau, cutoff=200)
        if model == "maxwell":
            a, b = a["F3"], b["F3"]
        worst = max(worst, abs(a - b))
    return worst < 1e-8, worst


@check("11.energy_means", "cft")
def _c11(ctx):
    worst = 0.0
    for tau in (1j, 2j):
        for model in ("chiral_weyl", "scalar4", "weyl4_canonical", "weyl4_subcanonical", "maxwell"):
            worst = max(worst, abs(cft.energy_mean(model, tau).residual))
        both = cft.energy_mean("maxwell", tau).numeric + cft.energy_mean("gauge", tau).numeric
        worst = max(worst, abs(both - 4 * modforms.eisenstein_value(4, tau)[0]))
        f2 = modforms.form_eval(modforms.FormId("F2"), tau)
        worst = max(worst, abs(cft.energy_mean("chiral_weyl", tau).numeric - f2))
    return worst < 1e-10, worst


@check("11.weyl4_printed_vacuum_energies", "cft",
       expected_failure="printed E0 signs for the D=4 Weyl fields are reversed")
def _c11b(ctx):
    from .models import vacuum_energy
    got = (vacuum_energy("weyl4_canonical"), vacuum_energy("weyl4_subcanonical"))
    return got == (Fraction(-17, 960), Fraction(29, 960)), f"{got[0]},{got[1]}"


# thermo ---------------------------------------------------------------------


@check("12.stefan_boltzmann", "thermo")
def _c12a(ctx):
    s = abs(thermo.energy_density("scalar4", thermo.BoxState(1.0, 100.0)) - math.pi**2 / 30)
    m = abs(thermo.sb_constant("maxwell").residual)
    return s < 1e-10 and m < 1e-6, max(s, m)


@check("12.asymptotic_remainder", "thermo",
       expected_failure="the exact remainder is about 8 pi^2 (scalar) and 16 pi^2 (Maxwell) times e^{-4 pi^2 R/beta}")
def _c12b(ctx):
    bound = 10 * math.exp(-4 * math.pi**2 * 3)
    worst = max(abs(thermo.density_asymptotics(m, thermo.BoxState(1.0, 3.0)).residual) for m in thermo.MODELS)
    return worst < bound, worst / bound


@check("13.minkowski", "thermo")
def _c13(ctx):
    worst = 0.0
    for beta in (0.5, 1.0, 2.0):
        for r in (0.2, 0.5, 0.9):
            x1, x2 = [0, 0, 0, 0], [0, r, 0, 0]
            a = thermo.minkowski_thermal_2pt(x1, x2, beta).value
            b = thermo.minkowski_thermal_2pt(x1, x2, beta, "fourier").value
            worst = max(worst, abs(a - b))
    x1, x2 = [0, 0, 0, 0], [0, 0.3, 0, 0]
    d = (thermo.minkowski_thermal_2pt(x1, x2, 1.0, "finite_R", 100.0).value
         - thermo.minkowski_thermal_2pt(x1, x2, 1.0).value)
    rel = abs(d * 4 * math.pi**2 * 100 + 1)
    return worst < 1e-8 and rel < 0.1, max(worst, rel)


# lattice --------------------------------------------------------------------


@check("14.n2_characters", "lattice")
def _c14(ctx):
    ok = True
    for m in range(3):
        a = lattice.k_series(m, 3, 5)
        b = lattice.k_series(2 * m, 12, 5).y_scaled(2) + lattice.k_series(2 * m + 6, 12, 5).y_scaled(2)
        ok &= qseries.series_equal(a, b, 5)
    t2 = max(lattice.n2_t2_residual(k, l, m, 0.1 + 1.2j) for k in (1, 2) for l, m in lattice.n2_labels(k))
    s = max(lattice.n2_s_residual(k, 1.1j) for k in (1, 2))
    kl = max(lattice.k_modular_residual(m, l, 1.1j, 0.2) for l in (2, 3) for m in range(1, l + 1))
    worst = max(t2, s, kl)
    return ok and t2 < 1e-8 and max(s, kl) < 1e-6, worst


@check("15.cocycle", "lattice")
def _c15(ctx):
    total = 0
    bad = 0
    for gram, window in (([[2]], 3), (lattice.NAMED_LATTICES["a2"], 6), (lattice.E8_CARTAN, 3)):
        table = lattice.CocycleTable(lattice.parse_gram(gram), window)
        rep = lattice.cocycle_conditions(table, seed=ctx["seed"])
        bad += sum(v for k, v in rep.items() if k != "checked")
        total += rep["checked"]
    return bad == 0 and total >= 200, f"{bad} violations in {total} triples"


SUITES = ("identities", "elliptic", "modular", "cft", "thermo", "lattice")


def run_suite(suite="all", order=30, tol=1e-10, seed=0, timings=False):
    ctx = {"order": order, "tol": tol, "seed": seed}
    rows = []
    for cid in sorted(CHECKS):
        group, fn, expected = CHECKS[cid]
        if suite != "all" and group != suite:
            continue
        start = time.perf_counter()
        try:
            ok, detail = fn(ctx)
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        if isinstance(detail, (float, np.floating)):
            detail = f"{float(detail):.3e}"
        if expected:
            status = "xpass" if ok else "xfail"
        else:
            status = "pass" if ok else "fail"
        row = {"id": cid, "status": status, "detail": str(detail)}
        if expected:
            row["note"] = expected
        if timings:
            row["runtime"] = round(time.perf_counter() - start, 3)
        rows.append(row)
    return {
        "schema": "artifact.verify/1",
        "suite": suite,
        "seed": seed,
        "tolerances": {"tol": tol, "order": order},
        "checks": rows,
        "ok": all(r["status"] in ("pass", "xfail") for r in rows),
    }

