"""Command-line front end.

Every subcommand prints one JSON object (sorted keys, a top-level "schema"
tag) or, with --format csv, a table.  Exit status: 0 on success, 1 when a
check fails or the computation raises a domain error, 2 on bad usage.
"""

import csv
import io
import json
import math
import sys
from fractions import Fraction

import click
import numpy as np

from . import cft, checks, elliptic, lattice, modforms, modgroup, models, qseries, thermo
from .errors import ArtifactError

# ---------------------------------------------------------------------------
# parameter types


class ComplexType(click.ParamType):
    name = "re,im"

    def convert(self, value, param, ctx):
        if isinstance(value, complex):
            return value
        try:
            parts = [float(p) for p in str(value).split(",")]
        except ValueError:
            self.fail(f"{value!r} is not of the form re,im", param, ctx)
        if len(parts) == 1:
            parts.append(0.0)
        if len(parts) != 2:
            self.fail(f"{value!r} is not of the form re,im", param, ctx)
        return complex(*parts)


class TauType(ComplexType):
    def convert(self, value, param, ctx):
        tau = super().convert(value, param, ctx)
        if tau.imag <= 0:
            self.fail(f"{value!r} is not in the upper half plane", param, ctx)
        return tau


class RationalType(click.ParamType):
    name = "p/q"

    def convert(self, value, param, ctx):
        try:
            return Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number", param, ctx)


class VectorType(click.ParamType):
    """Comma separated reals, or rationals when every entry is p/q or an integer."""

    name = "v1,v2,..."

    def __init__(self, exact=False):
        self.exact = exact

    def convert(self, value, param, ctx):
        if isinstance(value, (list, tuple)):
            return list(value)
        try:
            items = [p for p in str(value).split(",") if p.strip()]
            return [Fraction(p) if self.exact else float(p) for p in items]
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a comma separated list of numbers", param, ctx)


class PointType(click.ParamType):
    """An affine curve point 'x,y' (rational when possible) or 'inf'."""

    name = "x,y"

    def convert(self, value, param, ctx):
        if isinstance(value, elliptic.CurvePoint):
            return value
        text = str(value).strip().lower()
        if text in ("inf", "infinity", "o"):
            return elliptic.CurvePoint.infinity()
        parts = text.split(",")
        try:
            if len(parts) == 2:
                return elliptic.CurvePoint(Fraction(parts[0]), Fraction(parts[1]))
            if len(parts) == 4:
                x = complex(float(parts[0]), float(parts[1]))
                y = complex(float(parts[2]), float(parts[3]))
                return elliptic.CurvePoint(x, y)
        except (ValueError, ZeroDivisionError):
            pass
        self.fail(f"{value!r} is not 'x,y' (rationals), 'xr,xi,yr,yi' or 'inf'", param, ctx)


class MatrixType(click.ParamType):
    name = "a,b,c,d"

    def convert(self, value, param, ctx):
        if isinstance(value, modgroup.UnimodularMatrix):
            return value
        try:
            a, b, c, d = (int(p) for p in str(value).split(","))
            return modgroup.UnimodularMatrix(a, b, c, d)
        except ValueError as exc:
            self.fail(f"{value!r}: {exc}", param, ctx)


class GramType(click.ParamType):
    name = "gram"

    def convert(self, value, param, ctx):
        try:
            return lattice.parse_gram(value)
        except (ValueError, TypeError, ArtifactError) as exc:
            self.fail(f"{value!r} is neither a named lattice nor a JSON matrix ({exc})", param, ctx)


COMPLEX = ComplexType()
TAU = TauType()
RATIONAL = RationalType()
POINT = PointType()
MATRIX = MatrixType()
GRAM = GramType()

# ---------------------------------------------------------------------------
# output


def encode(obj):
    """JSON-ready form: complex -> [re, im], Fraction -> 'p/q', arrays -> lists."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [encode(v) for v in obj.tolist()] if obj.dtype != object else [encode(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, elliptic.CurvePoint):
        return obj.to_json()
    if isinstance(obj, qseries._Series):
        return obj.to_json()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def emit(payload, fmt="json", rows_key=None):
    if fmt == "csv":
        rows = payload.get(rows_key) if rows_key else None
        if not rows:
            raise click.UsageError("--format csv is only available for tabular output")
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(encode(v)) if isinstance(v, (list, dict, complex)) else encode(v)
                             for k, v in row.items()})
        click.echo(buf.getvalue(), nl=False)
        return
    click.echo(json.dumps(encode(payload), sort_keys=True, indent=2))


FORMAT = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
ORDER = click.option("--order", type=RATIONAL, default=Fraction(50), show_default=True,
                     help="q-series truncation order")
TOL = click.option("--tol", type=float, default=1e-10, show_default=True)


def series_payload(name, series, extra=None):
    out = {"schema": "artifact.series/1", "name": name, "series": series,
           "coefficients": [[e, c if isinstance(c, Fraction) else str(c)] for e, c in series.items()]}
    out.update(extra or {})
    return out


# ---------------------------------------------------------------------------
# root


@click.group()
def main():
    """Elliptic functions, modular forms and thermal correlators."""


# ---------------------------------------------------------------------------
# eval

EVAL_FNS = ("p", "theta", "wp", "wp_prime", "zeta_fn", "g2", "g3", "half_period_roots", "sn",
            "bernoulli", "sigma", "gegenbauer")


@main.command("eval")
@click.option("--fn", "fn", required=True, help=f"one of {', '.join(EVAL_FNS)} or a form name "
              "(g4, g2star, f2, eta, delta, j, g4_11, ...)")
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--kappa", type=click.IntRange(0, 1), default=0, show_default=True)
@click.option("--lambda", "lam", type=click.IntRange(0, 1), default=0, show_default=True)
@click.option("--zeta", type=COMPLEX, default=None)
@click.option("--tau", type=TAU, default=None)
@click.option("--mu", type=COMPLEX, default=0j)
@click.option("--method", type=click.Choice(["series", "product"]), default="series", show_default=True)
@click.option("--l", "l_index", type=int, default=None, help="index for bernoulli, sigma")
@click.option("--n", type=int, default=None, help="argument for sigma, degree for gegenbauer")
@click.option("--lam", "gl", type=RATIONAL, default=None, help="Gegenbauer parameter")
@click.option("--x", type=COMPLEX, default=None, help="Gegenbauer argument")
@click.option("--gram", type=GRAM, default=None, help="lattice for the theta form")
@click.option("--tol", type=float, default=1e-12, show_default=True)
def eval_cmd(fn, k, kappa, lam, zeta, tau, mu, method, l_index, n, gl, x, gram, tol):
    """Evaluate one function numerically (or exactly, for bernoulli and sigma)."""
    out = {"schema": "artifact.eval/1", "fn": fn}

    def need(**kw):
        for flag, v in kw.items():
            if v is None:
                raise click.UsageError(f"--fn {fn} needs --{flag.replace('_', '-')}")

    if fn == "p":
        need(zeta=zeta, tau=tau)
        value, err = elliptic.p_eval_with_error(elliptic.PIndex(k, kappa, lam), zeta, tau, tol) if mu == 0 else (
            elliptic.p_function(k, kappa, lam, zeta, tau, mu, tol), None)
        out.update(value=value, est_error=err)
    elif fn == "theta":
        need(zeta=zeta, tau=tau)
        out["value"] = elliptic.theta_eval(kappa, lam, zeta, tau, method, tol=min(tol, 1e-15))
    elif fn in ("wp", "wp_prime", "zeta_fn"):
        need(zeta=zeta, tau=tau)
        which = {"wp": "p", "wp_prime": "p_prime", "zeta_fn": "zeta_fn"}[fn]
        out["value"] = elliptic.weierstrass(which, zeta, tau, tol)
    elif fn in ("g2", "g3", "half_period_roots"):
        need(tau=tau)
        out["value"] = elliptic.weierstrass(fn, tau=tau, tol=tol)
    elif fn == "sn":
        need(zeta=zeta, tau=tau)
        res = elliptic.sn_from_tau(zeta, tau, tol)
        out.update(value=res.sn, k_squared=res.k_squared)
    elif fn == "bernoulli":
        need(l=l_index)
        out["value"] = qseries.bernoulli(l_index)
    elif fn == "sigma":
        need(l=l_index, n=n)
        out["value"] = qseries.divisor_sigma(l_index, n)
    elif fn == "gegenbauer":
        need(n=n, lam=gl, x=x)
        out["value"] = cft.gegenbauer(n, gl, x.real if x.imag == 0 else x)
    else:
        try:
            form = modforms.FormId.parse(fn) if gram is None else modforms.FormId("LatticeTheta", gram=gram)
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="--fn")
        need(tau=tau)
        value, err = modforms.form_eval_with_error(form, tau, tol)
        out.update(value=value, est_error=err, weight=form.weight)
    emit(out)


# ---------------------------------------------------------------------------
# series


def _named_series(name, order, gram, model):
    key = name.lower()
    if key == "lattice":
        if gram is None:
            raise click.UsageError("--name lattice needs --gram")
        return qseries.lattice_theta_series(gram, int(math.ceil(order)))
    if key in ("partition", "energymean", "energyclosed"):
        if model is None:
            raise click.UsageError(f"--name {key} needs --model")
        if key == "partition":
            return qseries.partition_series(model, order)
        fn = qseries.energy_mean_series if key == "energymean" else qseries.energy_closed_form_series
        return fn(model, int(math.ceil(order)))
    if key == "delta_eisenstein":
        return qseries.delta_from_eisenstein(order)
    if key.startswith("theta") and len(key) == 7:
        return qseries.theta_null_series(int(key[5]), int(key[6]), order)
    if key.startswith("g") and key[1:].split("_")[0].isdigit() and key != "g4_240":
        head, _, tail = key[1:].partition("_")
        kappa, lam = (int(tail[0]), int(tail[1])) if tail else (0, 0)
        return qseries.eisenstein_series(int(head), kappa, lam, order)
    try:
        return qseries.named_form_series(key, order)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--name")


@main.command("series")
@click.option("--name", required=True, help="eta, delta, j, g4_240, f2, g<2k>[_<kl>], theta<mn>, "
              "delta_eisenstein, lattice, partition, energymean, energyclosed")
@ORDER
@click.option("--gram", type=GRAM, default=None)
@click.option("--model", default=None)
@click.option("--op", type=click.Choice(["add", "mul", "neg", "invert", "int_pow", "principal_root"]), default=None)
@click.option("--with", "other", default=None, help="second operand name for add/mul")
@click.option("--n", type=int, default=None, help="exponent or root for int_pow/principal_root")
@click.option("--compare", default=None, help="report the first mismatch against this series")
@FORMAT
def series_cmd(name, order, gram, model, op, other, n, compare, fmt):
    """Exact truncated q-series over the rationals."""
    s = _named_series(name, order, gram, model)
    label = name
    if op:
        if op in ("add", "mul"):
            if other is None:
                raise click.UsageError(f"--op {op} needs --with")
            b = _named_series(other, order, gram, model)
        elif op in ("int_pow", "principal_root"):
            if n is None:
                raise click.UsageError(f"--op {op} needs --n")
            b = n
        else:
            b = None
        s = qseries.series_arith(op, s, b)
        label = f"{op}({name}{', ' + str(other if other else n) if b is not None else ''})"
    extra = {}
    if compare:
        c = _named_series(compare, order, gram, model)
        through = min(x for x in (s.order, c.order, order) if x is not None)
        m = qseries.first_mismatch(s, c, through)
        extra["compare"] = {"against": compare, "through_order": through, "equal": m is None,
                            "mismatch": None if m is None else {"exponent": m.exponent, "a": str(m.left),
                                                                "b": str(m.right)}}
    payload = series_payload(label, s, extra)
    payload["rows"] = [{"exponent": str(e), "coefficient": str(c)} for e, c in s.items()]
    if fmt == "json":
        payload.pop("rows")
    emit(payload, fmt, "rows")
    if compare and not extra["compare"]["equal"]:
        sys.exit(1)


# ---------------------------------------------------------------------------
# verify


@main.command("verify")
@click.option("--suite", type=click.Choice(("all",) + checks.SUITES + ("modforms",)), default="all", show_default=True)
@click.option("--order", type=int, default=30, show_default=True)
@TOL
@click.option("--samples", type=int, default=None, help="accepted for compatibility; sample sizes are fixed")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--timings", is_flag=True, help="include wall-clock runtimes (output is then not reproducible)")
@FORMAT
def verify_cmd(suite, order, tol, samples, seed, timings, fmt):
    """Run the identity and consistency checks; exit 1 if any check fails."""
    if suite == "modforms":
        suite = "modular"
    report = checks.run_suite(suite, order=order, tol=tol, seed=seed, timings=timings)
    emit(report, fmt, "checks")
    sys.exit(0 if report["ok"] else 1)


# ---------------------------------------------------------------------------
# reduce / modular group


@main.command("reduce")
@click.option("--tau", type=str, default=None, help="re,im; rational entries give exact output")
@click.option("--matrix", type=MATRIX, default=None, help="apply this matrix instead of reducing")
@click.option("--index", "index", type=str, default=None, help="kappa,lambda to transform by --matrix")
@click.option("--subgroup", default=None, help="Full, Theta, Gamma0(N), Gamma(N): membership of --matrix")
@click.option("--gamma-n", "gamma_n", type=click.IntRange(1), default=None, help="index, cusps and genus of Gamma(N)")
@click.option("--weight", type=int, default=None, help="with --gamma-n or alone: dimension of weight-2k forms")
def reduce_cmd(tau, matrix, index, subgroup, gamma_n, weight):
    """Reduction to the fundamental domain and other modular-group data."""
    out = {"schema": "artifact.modgroup/1"}
    exact_tau = None
    if tau is not None:
        parts = tau.split(",")
        if len(parts) != 2:
            raise click.BadParameter(f"{tau!r} is not re,im", param_hint="--tau")
        try:
            exact_tau = tuple(Fraction(p) for p in parts)
        except (ValueError, ZeroDivisionError):
            raise click.BadParameter(f"{tau!r} is not re,im", param_hint="--tau")
        if exact_tau[1] <= 0:
            raise click.BadParameter(f"{tau!r} is not in the upper half plane", param_hint="--tau")
        exact = all("." not in p and "e" not in p.lower() for p in parts)
        tau_in = exact_tau if exact else complex(float(exact_tau[0]), float(exact_tau[1]))
    if matrix is None and gamma_n is None and weight is None:
        if tau is None:
            raise click.UsageError("reduce needs --tau")
        star, gamma, word = modgroup.reduce_fundamental(tau_in)
        out.update(tau_star=list(star) if isinstance(star, tuple) else star,
                   matrix=gamma.to_list(), word=[[w, n] for w, n in word])
    if matrix is not None:
        out["matrix"] = matrix.to_list()
        if tau is not None:
            image = modgroup.moebius_act(matrix, tau_in)
            out["image"] = list(image) if isinstance(image, tuple) else image
        if index is not None:
            try:
                kappa, lam = (int(v) for v in index.split(","))
            except ValueError:
                raise click.BadParameter(f"{index!r} is not kappa,lambda", param_hint="--index")
            out["index"] = list(modgroup.index_act(matrix, kappa, lam))
        if subgroup is not None:
            out["member"] = modgroup.subgroup_member(matrix, _subgroup(subgroup))
    if gamma_n is not None:
        mu, cusps, genus = modgroup.gamma_n_data(gamma_n)
        out["gamma_n"] = {"N": gamma_n, "index": mu, "cusps": cusps, "genus": genus}
        if weight is not None:
            # Gamma(N) for N >= 2 has no elliptic points
            data = (genus, cusps, 0, 0) if gamma_n > 1 else (0, 1, 1, 1)
            out["dim_forms"] = modgroup.dim_forms(weight, *data)
    elif weight is not None:
        out["dim_forms"] = modgroup.dim_forms(weight, **modgroup.LEVEL_ONE)
    emit(out)


def _subgroup(text):
    import re

    m = re.fullmatch(r"(Full|Theta|Gamma0|Gamma)(?:\((\d+)\))?", text.strip())
    if not m:
        raise click.BadParameter(f"{text!r} is not Full, Theta, Gamma0(N) or Gamma(N)", param_hint="--subgroup")
    tag = {"Full": "Full", "Theta": "Theta", "Gamma0": "Gamma0N", "Gamma": "PrincipalN"}[m.group(1)]
    return modgroup.SubgroupId(tag, int(m.group(2) or 1))


# ---------------------------------------------------------------------------
# curves


@main.group("curve")
def curve_group():
    """Elliptic curves: group law, quartic reduction, uniformization."""


@curve_group.command("add")
@click.option("--curve", "curve_text", required=True, help="'y2=x3-x+1', 'y2=4x3-...' or 'g2,g3'")
@click.option("--p", "p", type=POINT, required=True)
@click.option("--q", "q", type=POINT, required=True)
@click.option("--tol", type=float, default=1e-8, show_default=True)
def curve_add_cmd(curve_text, p, q, tol):
    try:
        curve = elliptic.Curve.parse(curve_text)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"cannot parse {curve_text!r}", param_hint="--curve")
    emit({"schema": "artifact.curve.add/1", **elliptic.curve_add(p, q, curve, tol).to_json()})


@curve_group.command("quartic")
@click.option("--roots", required=True, help="e0,e1,e2,e3 (rationals)")
def curve_quartic_cmd(roots):
    try:
        values = [Fraction(v) for v in roots.split(",")]
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"{roots!r} is not four rationals", param_hint="--roots")
    if len(values) != 4:
        raise click.BadParameter("exactly four roots are needed", param_hint="--roots")
    a, a2, *new = elliptic.quartic_reduce(*values)
    emit({"schema": "artifact.quartic/1", "a": a, "A_squared": a2, "roots": new})


@curve_group.command("uniformize")
@click.option("--zeta", type=COMPLEX, required=True)
@click.option("--tau", type=TAU, required=True)
def curve_uniformize_cmd(zeta, tau):
    curve = elliptic.curve_for_tau(tau)
    point = elliptic.uniformize(zeta, tau)
    emit({"schema": "artifact.uniformize/1", "point": point, "g2": curve.c1, "g3": curve.c2})


# ---------------------------------------------------------------------------
# lattice and N=2 characters


@main.command("chars")
@click.option("--lattice", "gram", type=GRAM, default=None, help="e8, a1, a2, z3 or a JSON Gram matrix")
@click.option("--gram", "gram2", type=GRAM, default=None, help="alias of --lattice")
@click.option("--lam", "lam_vec", type=VectorType(exact=True), default=None, help="discriminant class (rational coordinates)")
@click.option("--mu", "mu_text", default=None, help="chemical potential: lattice vector, or re,im for --n2")
@click.option("--tau", type=TAU, default=None)
@click.option("--order", type=RATIONAL, default=Fraction(50), show_default=True)
@click.option("--discriminant", is_flag=True, help="discriminant group only")
@click.option("--check", "check_", is_flag=True, help="T and S transformation residuals at --tau")
@click.option("--cocycle", type=click.IntRange(1), default=None, help="build and verify a cocycle on this window")
@click.option("--n2", is_flag=True, help="N=2 minimal-model characters")
@click.option("--k", type=int, default=1)
@click.option("--l", "l_label", type=int, default=None)
@click.option("--m", "m_label", type=int, default=None)
@click.option("--smatrix", is_flag=True, help="with --n2: the S matrix")
@TOL
def chars_cmd(gram, gram2, lam_vec, mu_text, tau, order, discriminant, check_, cocycle, n2, k, l_label, m_label,
              smatrix, tol):
    """Lattice VOA characters, cocycles and N=2 characters."""
    gram = gram if gram is not None else gram2
    out = {"schema": "artifact.chars/1"}
    if n2:
        if k not in (1, 2):
            raise click.BadParameter("k must be 1 or 2", param_hint="--k")
        out["k"] = k
        out["central_charge"] = lattice.n2_central_charge(k)
        if smatrix:
            out["labels"] = lattice.n2_labels(k)
            out["smatrix"] = lattice.n2_smatrix(k)
            if tau is not None:
                out["s_residual"] = lattice.n2_s_residual(k, tau)
        if l_label is not None or m_label is not None:
            if l_label is None or m_label is None:
                raise click.UsageError("--n2 needs both --l and --m")
            mu = COMPLEX.convert(mu_text, None, None) if mu_text else 0j
            delta, charge = lattice.n2_weights(k, l_label, m_label)
            out.update(l=l_label, m=m_label, weight=delta, charge=charge)
            if tau is None:
                out["series"] = lattice.n2_character(k, l_label, m_label, order=order)
            else:
                out["value"] = lattice.n2_character(k, l_label, m_label, tau, mu)
                out["t2_residual"] = lattice.n2_t2_residual(k, l_label, m_label, tau)
        emit(out)
        return
    if gram is None:
        raise click.UsageError("chars needs --lattice/--gram or --n2")
    out["gram"] = [list(r) for r in gram]
    if cocycle is not None:
        table = lattice.cocycle_build(gram, cocycle)
        out["cocycle"] = {"window": cocycle, "conditions": lattice.cocycle_conditions(table),
                          "skew": table._skew}
        emit(out)
        return
    size, reps = lattice.discriminant_group(gram)
    out["discriminant"] = {"order": size, "representatives": reps}
    if discriminant:
        emit(out)
        return
    mu = None
    if mu_text:
        mu = VectorType(exact=all("." not in p for p in mu_text.split(","))).convert(mu_text, None, None)
    if check_:
        if tau is None:
            raise click.UsageError("--check needs --tau")
        report = lattice.char_modular_check(gram, tau, mu)
        out["check"] = report
        out["ok"] = report["T"] < max(tol, 1e-9) and report["S"] < max(tol, 1e-9)
        emit(out)
        sys.exit(0 if out["ok"] else 1)
    ch = lattice.voa_character(gram, lam_vec, tau, mu, order)
    out["series"] = ch.series
    out["value"] = ch.value
    emit(out)


# ---------------------------------------------------------------------------
# thermal correlators


def _kinematics(zeta12, alpha, u1, u2, dim):
    if u1 is not None or u2 is not None:
        if u1 is None or u2 is None:
            raise click.UsageError("--u1 and --u2 go together")
        try:
            return cft.Kinematics(zeta12, 0j, tuple(u1), tuple(u2))
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="--u1/--u2")
    if alpha is None:
        raise click.UsageError("give --alpha or --u1/--u2")
    try:
        return cft.Kinematics.from_alpha(zeta12, alpha, dim)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--alpha")


def _model_arg(name, central_charge, l0_mean):
    if central_charge is not None:
        return cft.n2_model(central_charge, l0_mean)
    try:
        return models.ModelId.parse(name)
    except ArtifactError as exc:
        raise click.BadParameter(str(exc), param_hint="--model")


@main.command("thermal2pt")
@click.option("--model", required=True)
@click.option("--zeta12", type=COMPLEX, default=None)
@click.option("--alpha", type=float, default=None)
@click.option("--u1", type=VectorType(), default=None)
@click.option("--u2", type=VectorType(), default=None)
@click.option("--dim", type=int, default=4, show_default=True)
@click.option("--tau", type=TAU, default=None)
@click.option("--mu", type=COMPLEX, default=0j)
@click.option("--method", type=click.Choice(["closed", "image", "modes", "vacuum"]), default="closed", show_default=True)
@click.option("--cutoff", type=click.IntRange(1), default=200, show_default=True)
@click.option("--laurent", type=click.IntRange(1), default=None, help="Laurent coefficients at zeta12 = 0 to this depth")
@click.option("--frame", is_flag=True, help="the moving frame vectors of --u1/--u2 (or --alpha)")
@click.option("--central-charge", type=RATIONAL, default=None, help="N=2 model with this c")
@click.option("--l0-mean", type=COMPLEX, default=0j)
def thermal2pt_cmd(model, zeta12, alpha, u1, u2, dim, tau, mu, method, cutoff, laurent, frame, central_charge,
                   l0_mean):
    """Vacuum and thermal two-point functions on S^1 x S^{D-1}."""
    mid = _model_arg(model, central_charge, l0_mean)
    out = {"schema": "artifact.thermal2pt/1", "model": mid.name}
    if laurent is not None:
        if tau is None:
            raise click.UsageError("--laurent needs --tau")
        out["laurent"] = cft.laurent_coeffs(mid, tau, laurent, mu=mu)
        emit(out)
        return
    if zeta12 is None and not frame:
        raise click.UsageError("thermal2pt needs --zeta12")
    kin = _kinematics(zeta12 or 0j, alpha, u1, u2, dim)
    out["alpha"] = kin.alpha
    if frame:
        f = cft.moving_frame(kin.u1, kin.u2)
        out["frame"] = {"v": f.v, "vbar": f.vbar}
        emit(out)
        return
    if method == "vacuum":
        out["value"] = cft.vacuum_2pt(mid, kin)
    else:
        if tau is None:
            raise click.UsageError(f"--method {method} needs --tau")
        if method == "closed":
            out["value"] = cft.thermal_2pt(mid, kin, tau, mu)
        elif method == "image":
            out["value"] = cft.image_sum_2pt(mid, kin, tau, cutoff, mu)
        else:
            out["value"] = cft.mode_sum_2pt(mid, kin, tau)
    emit(out)


@main.command("energymean")
@click.option("--model", required=True)
@click.option("--tau", type=TAU, default=None)
@click.option("--degeneracy", "level", type=RATIONAL, default=None, help="(d_b, d_f) at this energy")
def energymean_cmd(model, tau, level):
    """Thermal mean of the Hamiltonian, numeric against its Eisenstein closed form."""
    mid = _model_arg(model, None, 0j)
    out = {"schema": "artifact.energymean/1", "model": mid.name,
           "vacuum_energy": models.vacuum_energy(mid),
           "closed_form_terms": [{"coefficient": c, "weight": w, "argument": a}
                                 for c, w, a in models.energy_closed_form(mid)]}
    if level is not None:
        out["degeneracy"] = models.degeneracy(mid, level)
    if tau is not None:
        res = cft.energy_mean(mid, tau)
        out.update(numeric=res.numeric, closed_form=res.closed_form, residual=abs(res.residual))
    elif level is None:
        raise click.UsageError("energymean needs --tau or --degeneracy")
    emit(out)


# ---------------------------------------------------------------------------
# thermodynamics


@main.group("thermo")
def thermo_group():
    """Box thermodynamics and the infinite-volume limit."""


MODEL = click.option("--model", type=click.Choice(thermo.MODELS), default="scalar4", show_default=True)


@thermo_group.command("density")
@MODEL
@click.option("--beta", type=click.FloatRange(min=0, min_open=True), required=True)
@click.option("--R", "radius", type=click.FloatRange(min=0, min_open=True), required=True)
@click.option("--asymptotics", is_flag=True, help="also the large-R expansion and its remainder")
def thermo_density_cmd(model, beta, radius, asymptotics):
    state = thermo.BoxState(beta, radius)
    out = {"schema": "artifact.thermo.density/1", "model": model, "beta": beta, "R": radius,
           "density": thermo.energy_density(model, state),
           "density_inverted": thermo.energy_density_inverted(model, state)}
    out["beta4_density"] = out["density"] * beta**4
    if asymptotics:
        a = thermo.density_asymptotics(model, state)
        out["asymptotics"] = {"coefficients": {str(k): v for k, v in a.coefficients.items()},
                              "prediction": a.prediction, "residual": a.residual}
    emit(out)


@thermo_group.command("sb")
@MODEL
@click.option("--ratio", type=click.FloatRange(min=1), default=100.0, show_default=True)
def thermo_sb_cmd(model, ratio):
    r = thermo.sb_constant(model, ratio)
    emit({"schema": "artifact.thermo.sb/1", "model": model, "value": r.value, "closed_form": r.closed_form,
          "residual": r.residual})


@thermo_group.command("limit2pt")
@click.option("--x12", type=VectorType(), required=True, help="x0,x1,x2,x3 of x1 - x2")
@click.option("--beta", type=click.FloatRange(min=0, min_open=True), required=True)
@click.option("--mode", type=click.Choice(["limit", "fourier", "finiteR", "finite_R"]), default="limit", show_default=True)
@click.option("--R", "radius", type=click.FloatRange(min=0, min_open=True), default=None)
def thermo_limit2pt_cmd(x12, beta, mode, radius):
    if len(x12) != 4:
        raise click.BadParameter("need four components", param_hint="--x12")
    if mode in ("finiteR", "finite_R") and radius is None:
        raise click.UsageError("--mode finiteR needs --R")
    res = thermo.minkowski_thermal_2pt(x12, [0.0] * 4, beta, mode, radius)
    emit({"schema": "artifact.thermo.limit2pt/1", "mode": mode, "beta": beta, "R": radius,
          "value": res.value, "epsilon": res.epsilon})


@thermo_group.command("planck")
@click.option("--beta", type=click.FloatRange(min=0, min_open=True), required=True)
@click.option("--R", "radius", type=click.FloatRange(min=0, min_open=True), required=True)
@click.option("--n-max", type=click.IntRange(1), default=20, show_default=True)
@click.option("--h", type=float, default=1.0, show_default=True)
@click.option("--c", type=float, default=1.0, show_default=True)
@FORMAT
def thermo_planck_cmd(beta, radius, n_max, h, c, fmt):
    modes = thermo.planck_spectrum(beta, radius, n_max, h, c)
    rows = [m._asdict() for m in modes]
    emit({"schema": "artifact.thermo.planck/1", "beta": beta, "R": radius, "modes": rows,
          "total_energy": sum(m.energy for m in modes)}, fmt, "modes")


# ---------------------------------------------------------------------------
# entry point


def run(argv=None):
    """Run the CLI on argv and return the exit code instead of exiting."""
    try:
        main.main(args=list(argv) if argv is not None else None, prog_name="artifact", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except (ArtifactError, ValueError, ArithmeticError, AssertionError) as exc:
        click.echo(json.dumps({"schema": "artifact.error/1", "error": type(exc).__name__, "message": str(exc)},
                              sort_keys=True), err=False)
        return 1
    return 0


def entry():
    sys.exit(run(sys.argv[1:]))
