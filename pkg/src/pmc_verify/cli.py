"""Command-line interface.

    pmc-verify verify --suite all --json report.json
    pmc-verify eval "cot(alpha)*(a-b)/(a+b)" --at t=1/2,b=1
    pmc-verify diff "sin(alpha)^2" --wrt alpha
    pmc-verify pshow p3
    pmc-verify roots --at rho=-2,b=2
    pmc-verify scan p16 --grid grid.csv
    pmc-verify ode --at alpha=1,rho=1,b=1 --to 2 --step 0.01

Exit codes: 0 all pass, 1 any Fail, 2 configuration or input error,
3 overflow with no sampled fallback possible.
"""

from __future__ import annotations

import sys
from fractions import Fraction

import click
import mpmath

from .angles import special_value
from .catalog import ANCHORS, CATALOG
from .errors import (
    AllRootsReal, ConfigError, DomainError, ExprSyntaxError, PoleAtPoint,
    PoleEncountered, UnknownId, ZeroDenominator,
)
from .exprlang import parse_expr, render
from .gaussian import GaussianRational
from .numeric import (
    G_at, NumericConfig, NumericPoint, VARIANTS, cubic_at, eval_complex,
    ode_integrate,
)
from .rational import SamplePoint
from .report import emit_report
from .suite import SUITES, run_suite


def _fail(msg: str, code: int = 2):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _parse_at(spec: str) -> dict:
    out = {}
    if not spec:
        return out
    for item in spec.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise ConfigError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _fmt_gaussian(g: GaussianRational) -> str:
    if g.is_real():
        return str(g.re)
    sign = "+" if g.im >= 0 else "-"
    return f"{g.re} {sign} {abs(g.im)}*i"


@click.group()
def main():
    """Exact verification engine for the parallel-mean-curvature
    function catalog."""


@main.command()
@click.option("--suite", default="all", show_default=True,
              type=click.Choice(sorted(SUITES)))
@click.option("--mode", default="symbolic", show_default=True,
              type=click.Choice(["symbolic", "sampled"]))
@click.option("--samples", default=200, show_default=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--json", "json_path", default=None, type=click.Path(),
              help="write the JSON report here")
@click.option("--budget", default=5_000_000, show_default=True, type=int,
              help="term budget per symbolic intermediate")
@click.option("--precision", default=128, show_default=True, type=int,
              help="binary precision of the floating lab")
@click.option("--stable-json", is_flag=True,
              help="zero the time_ms fields for byte-reproducible output")
@click.option("--check", "checks", multiple=True,
              help="run only these check ids (repeatable)")
def verify(suite, mode, samples, seed, json_path, budget, precision,
           stable_json, checks):
    """Run a verification suite and print the report."""
    try:
        report = run_suite(suite=suite, mode=mode, samples=samples,
                           seed=seed, budget=budget, precision=precision,
                           checks=checks or None)
    except ConfigError as exc:
        _fail(str(exc), 2)
    click.echo(emit_report(report, "text"), nl=False)
    if json_path:
        emit_report(report, "json", json_path, stable=stable_json)
        click.echo(f"json report written to {json_path}")
    if not report.ok:
        sys.exit(1)
    overflowed_no_fallback = any(
        r.status == "Overflowed" and "fallback passed" not in (r.witness or "")
        for r in report.results)
    sys.exit(3 if overflowed_no_fallback else 0)


@main.command("eval")
@click.argument("expr")
@click.option("--at", "at_spec", default="", help="t=1/2,a_re=0,a_im=0,"
              "rho=1,b=1 or alpha=pi/4|pi/3|<rational>")
def eval_cmd(expr, at_spec):
    """Parse an expression and evaluate it exactly (or at 128 bits)."""
    try:
        e = parse_expr(expr)
        at = _parse_at(at_spec)
        if not at:
            click.echo(render(e))
            return
        a_re = Fraction(at.get("a_re", 0))
        a_im = Fraction(at.get("a_im", 0))
        rho = Fraction(at.get("rho", 1))
        b = Fraction(at.get("b", 1))
        if "t" in at:
            pt = SamplePoint(t=Fraction(at["t"]), a_re=a_re, a_im=a_im,
                             rho=rho, b=b)
            click.echo(_fmt_gaussian(e.eval_exact(pt)))
            return
        alpha = at.get("alpha")
        if alpha in ("pi/4", "pi/3"):
            val = special_value(e, alpha, a_val=GaussianRational(a_re, a_im),
                                rho=rho, b=b)
            click.echo(f"{val}")
            return
        if alpha is None:
            raise ConfigError("--at needs t=... or alpha=...")
        pt = NumericPoint(alpha, a_re, a_im, rho, b)
        click.echo(mpmath.nstr(eval_complex(e, pt), 30))
    except (ExprSyntaxError, DomainError, ZeroDenominator, PoleAtPoint,
            ConfigError, ValueError, ZeroDivisionError) as exc:
        _fail(str(exc))


@main.command()
@click.argument("expr")
@click.option("--wrt", default="alpha", show_default=True,
              type=click.Choice(["alpha", "a", "abar"]))
def diff(expr, wrt):
    """Differentiate an expression and print the canonical form."""
    try:
        e = parse_expr(expr)
        click.echo(render(e.differentiate(wrt)))
    except (ExprSyntaxError, DomainError, ZeroDenominator) as exc:
        _fail(str(exc))


@main.command()
@click.argument("pid")
def pshow(pid):
    """Print a catalog entry and its anchor."""
    try:
        entry = CATALOG.p(pid)
    except UnknownId:
        _fail(f"unknown catalog id {pid!r}; known ids: "
              + ", ".join(sorted(ANCHORS)))
    click.echo(f"{pid}  [{entry.anchor}]")
    if entry.expr is not None:
        click.echo(render(entry.expr))
    else:
        click.echo(entry.formula)


@main.command()
@click.option("--at", "at_spec", default="rho=1,b=1",
              help="rho=...,b=...,a_re=...,a_im=... at alpha=pi/4")
@click.option("--variant", default="both", show_default=True,
              type=click.Choice(["listed", "derived", "both"]))
@click.option("--precision", default=128, show_default=True, type=int)
def roots(at_spec, variant, precision):
    """Cubic coefficients, roots and G values at a grid point."""
    try:
        at = _parse_at(at_spec)
        pt = NumericPoint(at.get("alpha", "pi/4"),
                          Fraction(at.get("a_re", 0)),
                          Fraction(at.get("a_im", 0)),
                          Fraction(at.get("rho", 1)),
                          Fraction(at.get("b", 1)))
        cfg = NumericConfig(precision_bits=precision)
    except (ConfigError, ValueError) as exc:
        _fail(str(exc))
    variants = VARIANTS if variant == "both" else (variant,)
    for var in variants:
        rts = cubic_at(pt, var, cfg)
        click.echo(f"[{var}] cubic coefficients (c3, c2, c1, c0):")
        for c in rts.coefficients:
            click.echo(f"  {mpmath.nstr(c, 25)}")
        click.echo(f"[{var}] roots (residuals):")
        for r, res in zip(rts.roots, rts.residuals):
            click.echo(f"  {mpmath.nstr(r, 25)}   |resid| = "
                       f"{mpmath.nstr(res, 5)}")
        try:
            for gv in G_at(pt, var, cfg):
                click.echo(f"[{var}] candidate {mpmath.nstr(gv.root, 20)}: "
                           f"G = {mpmath.nstr(gv.g, 20)}  |G| = "
                           f"{mpmath.nstr(abs(gv.g), 10)}  |dd| = "
                           f"{mpmath.nstr(gv.dd_abs, 10)}")
        except AllRootsReal:
            click.echo(f"[{var}] all roots real: outside the general-type "
                       f"regime at this point")


@main.command()
@click.argument("target", type=click.Choice(["F", "p16", "G"]))
@click.option("--grid", "grid_path", default=None,
              type=click.Path(exists=True),
              help="grid file: alpha_tag,a_re,a_im,rho,b per line")
@click.option("--precision", default=128, show_default=True, type=int)
def scan(target, grid_path, precision):
    """Non-vanishing scan over a parameter grid (default: the pi/4 grid)."""
    from .numeric import default_grid, nonvanishing_scan, parse_grid_file
    try:
        grid = (parse_grid_file(grid_path) if grid_path
                else default_grid(include_pi3=(target == "p16")))
        cfg = NumericConfig(precision_bits=precision)
        rows = nonvanishing_scan(target, grid, cfg)
    except (ConfigError, ValueError) as exc:
        _fail(str(exc))
    any_zero = False
    for r in rows:
        verdict = ("nonzero" if r.nonzero else
                   "ZERO" if r.nonzero is not None else "no-candidates")
        if r.nonzero is False:
            any_zero = True
        click.echo(f"{r.target:<4} {r.point:<44} [{r.variant}] "
                   f"{verdict:<13} margin={r.margin} {r.value} {r.note}")
    sys.exit(1 if any_zero else 0)


@main.command()
@click.option("--at", "at_spec", required=True,
              help="alpha=<float>,a_re=...,a_im=...,rho=...,b=...")
@click.option("--to", "alpha1", required=True, type=float)
@click.option("--step", default=0.01, show_default=True, type=float)
@click.option("--dump", is_flag=True, help="print every accepted step")
def ode(at_spec, alpha1, step, dump):
    """Integrate the closing demo a'(alpha) = p2(alpha, a, conj a)."""
    try:
        at = _parse_at(at_spec)
        alpha0 = float(Fraction(at["alpha"]))
        a0 = mpmath.mpc(float(Fraction(at.get("a_re", 0))),
                        float(Fraction(at.get("a_im", 0))))
        traj = ode_integrate(alpha0, a0, alpha1, step,
                             rho=Fraction(at.get("rho", 1)),
                             b=Fraction(at.get("b", 1)))
    except (KeyError, ValueError) as exc:
        _fail(f"bad --at spec: {exc}")
    except PoleEncountered as exc:
        _fail(f"{exc} (last good alpha = {exc.last_alpha})", 1)
    rows = traj.samples if dump else [traj.samples[0], traj.samples[-1]]
    for al, a in rows:
        click.echo(f"alpha = {mpmath.nstr(al, 12):>16}   "
                   f"a = {mpmath.nstr(a, 20)}")
    click.echo(f"{len(traj.samples) - 1} steps of h = "
               f"{mpmath.nstr(traj.step, 8)} (rk4)")


if __name__ == "__main__":
    main()
