"""Suite orchestration: the check registry and the runner.

Suites: static (identity catalog), jet (derivation replay), numeric
(non-vanishing certificates and the integration demo), all.  Jet checks run
symbolically by default and fall back to a 200-point sampled certificate
when the term budget overflows, surfacing as Overflowed rather than
disappearing.  Numeric checks always run numerically.  A failing or
crashing check never blocks the others.
"""

from __future__ import annotations

import os
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import mpmath

from . import replay
from .angles import f_quarter_identity, special_value
from .catalog import CATALOG
from .errors import (
    AllRootsReal, ConfigError, DerivativeDenominatorZero, ReductionOverflow,
)
from .numeric import (
    G_at, NumericConfig, NumericPoint, VARIANTS, _coerce, cubic_at,
    eval_complex, ode_integrate,
)
from .poly import BudgetExceeded, set_term_budget
from .rational import REGISTRY, sample_point
from .report import CheckResult, Report, make_report

OVERFLOW_FALLBACK_SAMPLES = 200


# -- numeric check implementations ---------------------------------------------

def _grid_rho_b() -> List[Tuple[Fraction, Fraction]]:
    return [(r, b)
            for r in (Fraction(-2), Fraction(-1), Fraction(1, 2),
                      Fraction(1), Fraction(2))
            for b in (Fraction(1, 2), Fraction(1), Fraction(2))]


def _num_cubic_real(cfg: NumericConfig):
    """Cubic coefficients at the quarter angle are real, exactly and
    within the floating tolerance, for every grid cell and both variants."""
    bad = []
    for rho, b in _grid_rho_b():
        pt = NumericPoint("pi/4", Fraction(0), Fraction(0), rho, b)
        # exact path: the listed coefficients stay in the real subfield
        for pid in ("p16", "p20", "p21", "p22"):
            val = special_value(CATALOG.expr(pid), "pi/4", rho=rho, b=b)
            if not val.is_real():
                bad.append(f"{pid} at rho={rho},b={b} exact imag != 0")
        for variant in VARIANTS:
            roots = cubic_at(pt, variant, cfg)
            for c in roots.coefficients:
                if abs(mpmath.im(c)) > cfg.tol_imag_rel * max(1, abs(c)):
                    bad.append(f"{variant} rho={rho},b={b}: imag "
                               f"{mpmath.nstr(abs(mpmath.im(c)), 5)}")
    ok = not bad
    return ok, 0 if ok else len(bad), "; ".join(bad[:4]) if bad else \
        "all cubic coefficients real at pi/4 (exact and at 128-bit)"


def _num_p23_dd_g(cfg: NumericConfig):
    """Candidates, derivative denominator and G across the grid; cells
    without non-real roots are outside the general-type regime and are
    reported, not failed."""
    notes = []
    bad = []
    candidates_seen = {v: 0 for v in VARIANTS}
    for rho, b in _grid_rho_b():
        pt = NumericPoint("pi/4", Fraction(0), Fraction(0), rho, b)
        for variant in VARIANTS:
            try:
                values = G_at(pt, variant, cfg)
            except AllRootsReal:
                notes.append(f"{variant} rho={rho},b={b}: all roots real")
                continue
            except DerivativeDenominatorZero as exc:
                bad.append(f"{variant} rho={rho},b={b}: dd=0 ({exc})")
                continue
            candidates_seen[variant] += 1
            for gv in values:
                if abs(gv.root) <= cfg.g_margin:
                    bad.append(f"{variant} rho={rho},b={b}: root ~ 0")
                if abs(mpmath.im(gv.root)) <= cfg.tol_conj * max(1, abs(gv.root)):
                    bad.append(f"{variant} rho={rho},b={b}: real candidate")
                if gv.dd_abs <= cfg.g_margin:
                    bad.append(f"{variant} rho={rho},b={b}: |dd| "
                               f"{mpmath.nstr(gv.dd_abs, 5)}")
                if abs(gv.g) <= cfg.g_margin:
                    bad.append(f"{variant} rho={rho},b={b}: |G| "
                               f"{mpmath.nstr(abs(gv.g), 5)}")
    for variant, seen in candidates_seen.items():
        if seen == 0:
            bad.append(f"{variant}: no grid cell admits candidates")
    ok = not bad
    witness = (f"candidate cells: listed={candidates_seen['listed']}, "
               f"derived={candidates_seen['derived']}; "
               f"outside-regime cells: {len(notes)}")
    if bad:
        witness = "; ".join(bad[:4])
    return ok, len(bad), witness


def _num_p16(cfg: NumericConfig):
    """p16 is nonzero at pi/4 or pi/3 for every grid cell, exactly."""
    bad = []
    for rho, b in _grid_rho_b():
        v4 = special_value(CATALOG.expr("p16"), "pi/4", rho=rho, b=b)
        v3 = special_value(CATALOG.expr("p16"), "pi/3", rho=rho, b=b)
        if v4.is_zero() and v3.is_zero():
            bad.append(f"rho={rho},b={b}")
    ok = not bad
    return ok, len(bad), ("nonzero at both angles for every cell" if ok
                          else "zero at both angles: " + ", ".join(bad))


def _num_f(cfg: NumericConfig):
    """F at the quarter angle: exact identity and the 1.875 cross-check."""
    ok1 = f_quarter_identity()
    pt = NumericPoint("pi/4", Fraction(0), Fraction(0), Fraction(1),
                      Fraction(1))
    val = eval_complex(CATALOG.expr("F"), pt, cfg)
    diff = abs(val - mpmath.mpf(15) / 8)
    ok2 = diff < mpmath.mpf("1e-12")
    ok = ok1 and ok2
    return ok, 0 if ok else 1, (
        f"identity={'ok' if ok1 else 'FAIL'}; F(pi/4,0,0;1,1)="
        f"{mpmath.nstr(val, 17)} |diff|={mpmath.nstr(diff, 3)}")


def _num_coherence(cfg: NumericConfig):
    """Exact and floating evaluation agree to 1e-25 relative at 128-bit."""
    ids = [f"p{i}" for i in range(1, 23)] + ["kappa", "F"]
    worst = mpmath.mpf(0)
    checked = 0
    k = 0
    with mpmath.workprec(cfg.precision_bits):
        while checked < 50:
            pt = sample_point(9000 + k)
            k += 1
            if k > 500:
                break
            vals_exact = pt.values()
            vals_f = tuple(_coerce(v) for v in vals_exact)
            try:
                for pid in ids:
                    e = CATALOG.expr(pid)
                    exact = e.eval_exact(pt)
                    den = mpmath.mpc(1)
                    for fid, exp in e.den_factors.items():
                        den *= REGISTRY.poly(fid).eval_generic(
                            vals_f, _coerce) ** exp
                    approx = e.num.eval_generic(vals_f, _coerce) / den
                    scale = max(mpmath.mpf(1), abs(_coerce(exact)))
                    err = abs(approx - _coerce(exact)) / scale
                    if err > worst:
                        worst = err
            except ArithmeticError:
                continue
            checked += 1
    ok = checked >= 50 and worst < mpmath.mpf("1e-25")
    return ok, 0 if ok else 1, (f"{checked} points, worst relative "
                                f"deviation {mpmath.nstr(worst, 3)}")


def _num_ode(cfg: NumericConfig):
    """Empirical convergence order of the integrator over step halvings."""
    def endpoint(step):
        return ode_integrate(1.0, 0, 1.5, step, cfg=cfg).samples[-1][1]

    ref = endpoint(0.1 / 64)
    errs = [abs(endpoint(h) - ref) for h in (0.1, 0.05, 0.025)]
    orders = [float(mpmath.log(errs[i] / errs[i + 1], 2)) for i in range(2)]
    ok = all(3.7 <= o <= 4.3 for o in orders)
    return ok, 0 if ok else 1, ("orders " +
                                ", ".join(f"{o:.3f}" for o in orders))


NUMERIC_CHECKS: Dict[str, Tuple[Callable, str]] = {
    "CUBIC-REAL-PI4": (_num_cubic_real,
                       "real cubic coefficients at the quarter angle"),
    "P23-DD-G": (_num_p23_dd_g,
                 "candidate roots, derivative denominator and G on the grid"),
    "P16-NONZERO": (_num_p16, "p16 nonzero at pi/4 or pi/3 per grid cell"),
    "F-VALUE": (_num_f, "F at the quarter angle: identity and 15/8 check"),
    "EXACT-FLOAT-COHERENCE": (_num_coherence,
                              "floating evaluation against the exact kernel"),
    "ODE-RK4-ORDER": (_num_ode, "integration demo convergence order"),
}

STATIC_IDS = ("IDS39", "IDS311", "COEFSIMP", "SWAP-coherence",
              "WELLDEF-p7p8", "F-PI4-identity")
JET_IDS = replay.JET_CHECK_IDS
NUMERIC_IDS = tuple(NUMERIC_CHECKS)

SUITES = {
    "static": STATIC_IDS,
    "jet": JET_IDS,
    "numeric": NUMERIC_IDS,
    "all": STATIC_IDS + JET_IDS + NUMERIC_IDS,
}


def _run_static(check_id: str, mode: str, samples: int, seed: int,
                budget: Optional[int]) -> Tuple[str, str, int, Optional[str]]:
    if check_id == "F-PI4-identity":
        ok = f_quarter_identity()
        return ("symbolic", "Pass" if ok else "Fail", 0 if ok else 1,
                "F(pi/4,0,0) = 15 rho/(8 b) exactly" if ok else
                "identity failed")
    out = replay.run_check_symbolic(check_id, budget)
    status = "Pass" if out.ok else "Fail"
    return ("symbolic", status, out.residual_terms,
            _witness_from(out))


def _witness_from(out: replay.ReplayOutcome) -> Optional[str]:
    parts = []
    if out.detail:
        parts.append(out.detail)
    for k, v in sorted(out.extra.items()):
        parts.append(f"{k}={v}")
    return "; ".join(parts) if parts else None


def _run_jet(check_id: str, mode: str, samples: int, seed: int,
             budget: Optional[int]) -> Tuple[str, str, int, Optional[str]]:
    if mode == "sampled":
        run = replay.run_check_sampled(check_id, samples, seed)
        status = "ProbablyPass" if run.ok else "Fail"
        wit = run.witness or run.detail or (
            f"{run.points} points, {run.skipped} pole skips")
        return ("sampled", status, 0 if run.ok else 1, wit)
    try:
        out = replay.run_check_symbolic(check_id, budget)
        status = "Pass" if out.ok else "Fail"
        return ("symbolic", status, out.residual_terms, _witness_from(out))
    except (ReductionOverflow, BudgetExceeded) as exc:
        run = replay.run_check_sampled(check_id, OVERFLOW_FALLBACK_SAMPLES,
                                       seed)
        if run.ok:
            return ("sampled", "Overflowed", 0,
                    f"budget overflow ({exc}); sampled fallback passed at "
                    f"{run.points} exact points ({run.skipped} pole skips)")
        return ("sampled", "Fail", 1,
                f"budget overflow and sampled fallback failed: "
                f"{run.witness or run.detail}")


def _run_numeric(check_id: str, cfg: NumericConfig) \
        -> Tuple[str, str, int, Optional[str]]:
    fn, _ = NUMERIC_CHECKS[check_id]
    ok, resid, witness = fn(cfg)
    return ("numeric", "Pass" if ok else "Fail", resid, witness)


def _anchor(check_id: str) -> str:
    if check_id in replay.CHECK_ANCHORS:
        return replay.CHECK_ANCHORS[check_id]
    if check_id == "F-PI4-identity":
        return "quarter-angle value of equation (3.20)'s left side"
    if check_id in NUMERIC_CHECKS:
        return NUMERIC_CHECKS[check_id][1]
    return check_id


def run_suite(suite: str = "all", mode: str = "symbolic", samples: int = 200,
              seed: int = 0, budget: Optional[int] = 5_000_000,
              precision: int = 128, threads: Optional[int] = None,
              checks: Optional[Tuple[str, ...]] = None) -> Report:
    """Run every check in a suite (or just `checks`); numeric checks
    ignore the mode."""
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; "
                          f"choose from {sorted(SUITES)}")
    if mode not in ("symbolic", "sampled"):
        raise ConfigError(f"unknown mode {mode!r}")
    if samples < 1:
        raise ConfigError("samples must be >= 1")
    cfg = NumericConfig(precision_bits=precision)
    set_term_budget(budget)
    if threads is None:
        threads = int(os.environ.get("PMC_VERIFY_THREADS", "1"))
    check_ids = SUITES[suite]
    if checks:
        unknown = [c for c in checks if c not in SUITES["all"]]
        if unknown:
            raise ConfigError(f"unknown check ids {unknown}; known: "
                              f"{sorted(SUITES['all'])}")
        check_ids = tuple(c for c in SUITES["all"] if c in set(checks))

    def run_one(check_id: str) -> CheckResult:
        t0 = time.perf_counter()
        try:
            if check_id in NUMERIC_CHECKS:
                m, status, resid, wit = _run_numeric(check_id, cfg)
            elif check_id in JET_IDS:
                m, status, resid, wit = _run_jet(check_id, mode, samples,
                                                 seed, budget)
            else:
                m, status, resid, wit = _run_static(check_id, mode, samples,
                                                    seed, budget)
        except Exception:
            m = "numeric" if check_id in NUMERIC_CHECKS else mode
            status, resid = "Fail", 1
            wit = "internal error: " + \
                traceback.format_exc(limit=1).splitlines()[-1]
        if status == "Fail" and not wit:
            wit = "nonzero residual"
        ms = int((time.perf_counter() - t0) * 1000)
        return CheckResult(check_id, _anchor(check_id), m, status, resid,
                           wit, ms)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_one, check_ids))
    else:
        results = [run_one(cid) for cid in check_ids]

    config = {
        "suite": suite if not checks else ",".join(check_ids),
        "mode": mode,
        "samples": samples,
        "seed": seed,
        "budget": budget,
        "precision_bits": precision,
        "threads": threads,
    }
    return make_report(config, results)
