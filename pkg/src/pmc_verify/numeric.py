"""Floating-point and algebraic-number evaluations.

Everything the exact ring cannot express lives here: the cubic root p23,
the quotients p24..p26 and G, non-vanishing scans over parameter grids, and
the closing one-variable integration demo.  Arithmetic is mpmath at a
configurable binary precision (default 128-bit significand); tolerances
scale with the precision.

The third-order relation is consumed in two variants throughout:

    listed   cubic coefficients exactly as the catalog lists them
    derived  the re-derived relation, whose Y-coefficient cancels
             identically (the listed p18 is a detected misprint)

Both are evaluated and reported; the non-vanishing conclusions hold for
every candidate root under either variant.
"""

from __future__ import annotations

import mpmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .angles import special_value
from .catalog import CATALOG
from .errors import (
    AllRootsReal, ConfigError, DegenerateLeadingCoefficient,
    DerivativeDenominatorZero, PoleEncountered, PoleNearPoint,
)
from .gaussian import GaussianRational
from .rational import REGISTRY, TrigRational

VARIANTS = ("listed", "derived")


@dataclass
class NumericConfig:
    """Precision and the tolerances that scale with it."""

    precision_bits: int = 128

    def __post_init__(self):
        if self.precision_bits < 53:
            raise ConfigError("precision must be at least 53 bits")

    def _scaled(self, exp10_at_128: int) -> mpmath.mpf:
        exp = exp10_at_128 * self.precision_bits / 128.0
        return mpmath.mpf(10) ** (-exp)

    @property
    def tol_root(self):
        return self._scaled(25)

    @property
    def tol_conj(self):
        return self._scaled(20)

    @property
    def tol_den(self):
        return self._scaled(30)

    @property
    def tol_lead(self):
        return self._scaled(30)

    @property
    def tol_imag_rel(self):
        return self._scaled(20)

    @property
    def g_margin(self):
        return mpmath.mpf("1e-8")

    @property
    def tol_ode_pole(self):
        # step rejection threshold: generous, so the integrator refuses to
        # step across sin(alpha) = 0 or a = -b instead of blowing up
        return mpmath.mpf("1e-10")


DEFAULT_CONFIG = NumericConfig()


@dataclass(frozen=True)
class NumericPoint:
    """Evaluation point; alpha is either a special-angle tag or a float.

    abar is always conj(a).  rho and b are kept as exact Fractions so the
    special-angle path can stay in the quadratic extension.
    """

    alpha_tag: str           # "pi/4", "pi/3", or a decimal/rational string
    a_re: Fraction
    a_im: Fraction
    rho: Fraction
    b: Fraction

    @property
    def is_special(self) -> bool:
        return self.alpha_tag in ("pi/4", "pi/3")

    def alpha_value(self) -> mpmath.mpf:
        if self.alpha_tag == "pi/4":
            return mpmath.mp.pi / 4
        if self.alpha_tag == "pi/3":
            return mpmath.mp.pi / 3
        return _to_mpf(Fraction(self.alpha_tag))

    def a_value(self) -> GaussianRational:
        return GaussianRational(self.a_re, self.a_im)

    def ring_values(self) -> tuple:
        """6-tuple (s, c, a, abar, rho, b) as mpmath numbers."""
        al = self.alpha_value()
        s, c = mpmath.sin(al), mpmath.cos(al)
        a = mpmath.mpc(_to_mpf(self.a_re), _to_mpf(self.a_im))
        return (s, c, a, mpmath.conj(a), _to_mpf(self.rho), _to_mpf(self.b))

    def describe(self) -> str:
        return (f"alpha={self.alpha_tag} a={self.a_re}"
                f"{'+' if self.a_im >= 0 else ''}{self.a_im}i "
                f"rho={self.rho} b={self.b}")


def _to_mpf(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)


def _coerce(g: GaussianRational) -> mpmath.mpc:
    return mpmath.mpc(_to_mpf(g.re), _to_mpf(g.im))


def _guard(z: mpmath.mpc) -> mpmath.mpc:
    if mpmath.isnan(z.real) or mpmath.isnan(z.imag) or mpmath.isinf(z.real) \
            or mpmath.isinf(z.imag):
        raise ArithmeticError("non-finite value in floating evaluation")
    return z


def eval_complex(e: TrigRational, at: NumericPoint,
                 cfg: NumericConfig = DEFAULT_CONFIG) -> mpmath.mpc:
    """Deterministic floating evaluation with a pole guard."""
    with mpmath.workprec(cfg.precision_bits):
        vals = at.ring_values()
        den = mpmath.mpc(1)
        for fid, exp in e.den_factors.items():
            fv = REGISTRY.poly(fid).eval_generic(vals, _coerce)
            den *= fv ** exp
        if abs(den) < cfg.tol_den:
            raise PoleNearPoint(f"denominator {mpmath.nstr(abs(den), 5)} below "
                                f"tolerance at {at.describe()}")
        num = e.num.eval_generic(vals, _coerce)
        return _guard(num / den)


@dataclass
class CubicRoots:
    roots: List[mpmath.mpc]
    residuals: List[mpmath.mpf]
    coefficients: Tuple[mpmath.mpc, mpmath.mpc, mpmath.mpc, mpmath.mpc]


def solve_cubic(c3, c2, c1, c0,
                cfg: NumericConfig = DEFAULT_CONFIG) -> CubicRoots:
    """Roots via companion-matrix eigenvalues plus one Newton step each."""
    with mpmath.workprec(cfg.precision_bits):
        c3, c2, c1, c0 = (mpmath.mpc(x) for x in (c3, c2, c1, c0))
        if abs(c3) <= cfg.tol_lead:
            raise DegenerateLeadingCoefficient(
                f"|leading| = {mpmath.nstr(abs(c3), 5)}")
        a2, a1, a0 = c2 / c3, c1 / c3, c0 / c3
        companion = mpmath.matrix([[0, 0, -a0],
                                   [1, 0, -a1],
                                   [0, 1, -a2]])
        eigvals, _ = mpmath.eig(companion)

        def f(z):
            return ((c3 * z + c2) * z + c1) * z + c0

        def fprime(z):
            return (3 * c3 * z + 2 * c2) * z + c1

        roots = []
        residuals = []
        for z in eigvals:
            z = mpmath.mpc(z)
            dz = fprime(z)
            if abs(dz) > cfg.tol_den:
                z = z - f(z) / dz
            roots.append(_guard(z))
            residuals.append(abs(f(z)))
        order = sorted(range(3), key=lambda i: (mpmath.re(roots[i]),
                                                mpmath.im(roots[i])))
        return CubicRoots([roots[i] for i in order],
                          [residuals[i] for i in order], (c3, c2, c1, c0))


# -- first-order duals over mpmath values -------------------------------------

class _Dual:
    __slots__ = ("v", "dal", "da", "dab")

    def __init__(self, v, dal=0, da=0, dab=0):
        self.v = mpmath.mpc(v)
        self.dal = mpmath.mpc(dal)
        self.da = mpmath.mpc(da)
        self.dab = mpmath.mpc(dab)

    def __add__(s, o):
        return _Dual(s.v + o.v, s.dal + o.dal, s.da + o.da, s.dab + o.dab)

    def __sub__(s, o):
        return _Dual(s.v - o.v, s.dal - o.dal, s.da - o.da, s.dab - o.dab)

    def __neg__(s):
        return _Dual(-s.v, -s.dal, -s.da, -s.dab)

    def __mul__(s, o):
        if not isinstance(o, _Dual):
            o = _Dual(o)
        return _Dual(s.v * o.v, s.dal * o.v + s.v * o.dal,
                     s.da * o.v + s.v * o.da, s.dab * o.v + s.v * o.dab)

    __rmul__ = __mul__

    def conj(s):
        # conjugation swaps the a and abar directions
        return _Dual(mpmath.conj(s.v), mpmath.conj(s.dal),
                     mpmath.conj(s.dab), mpmath.conj(s.da))


def _dual_of(pid: str, at: NumericPoint, cfg: NumericConfig) -> _Dual:
    return _Dual(eval_complex(CATALOG.expr(pid), at, cfg),
                 eval_complex(CATALOG.d(pid, "alpha"), at, cfg),
                 eval_complex(CATALOG.d(pid, "a"), at, cfg),
                 eval_complex(CATALOG.d(pid, "abar"), at, cfg))


def _dual_of_deriv(pid: str, var: str, at: NumericPoint,
                   cfg: NumericConfig) -> _Dual:
    return _Dual(eval_complex(CATALOG.d(pid, var), at, cfg),
                 eval_complex(CATALOG.d2(pid, var, "alpha"), at, cfg),
                 eval_complex(CATALOG.d2(pid, var, "a"), at, cfg),
                 eval_complex(CATALOG.d2(pid, var, "abar"), at, cfg))


def _cubic_duals(at: NumericPoint, variant: str,
                 cfg: NumericConfig) -> Tuple[_Dual, _Dual, _Dual, _Dual]:
    """Duals of the cubic coefficients (c3, c2, c1, c0) for a variant."""
    d = {pid: _dual_of(pid, at, cfg)
         for pid in ("p7", "p8", "p16a", "p16b", "p17a", "p17b",
                     "p18a", "p18b", "p19a", "p19b")}
    c16 = d["p16a"] - d["p16b"]
    c17 = d["p17a"] - d["p17b"]
    c19 = d["p19a"] - d["p19b"]
    if variant == "derived":
        c18 = _Dual(0)
    elif variant == "listed":
        c18 = d["p18a"] - d["p18b"]
    else:
        raise ConfigError(f"unknown cubic variant {variant!r}")
    p7b = d["p7"].conj()
    c3 = c16
    c2 = -p7b * c16 + c17
    c1 = -p7b * c17 + d["p7"] * c18 + c19
    c0 = d["p8"] * c18 - p7b * c19
    return c3, c2, c1, c0


def cubic_at(at: NumericPoint, variant: str = "listed",
             cfg: NumericConfig = DEFAULT_CONFIG) -> CubicRoots:
    with mpmath.workprec(cfg.precision_bits):
        c3, c2, c1, c0 = _cubic_duals(at, variant, cfg)
        return solve_cubic(c3.v, c2.v, c1.v, c0.v, cfg)


def p23_candidates(at: NumericPoint, variant: str = "listed",
                   cfg: NumericConfig = DEFAULT_CONFIG) -> List[mpmath.mpc]:
    """Non-real roots of the third-order relation at the point.

    Raises AllRootsReal when no non-real root exists: the point then lies
    outside the general-type regime (reported by callers, not fatal).
    """
    with mpmath.workprec(cfg.precision_bits):
        rts = cubic_at(at, variant, cfg)
        cands = [r for r in rts.roots
                 if abs(mpmath.im(r)) > cfg.tol_conj * max(1, abs(r))]
        if not cands:
            raise AllRootsReal(f"no non-real root at {at.describe()} "
                               f"({variant})")
        return sorted(cands, key=lambda r: (mpmath.im(r), mpmath.re(r)))


@dataclass
class GValue:
    root: mpmath.mpc
    g: mpmath.mpc
    dd_abs: mpmath.mpf  # |3 p16 P^2 + 2 p20 P + p21|


def G_at(at: NumericPoint, variant: str = "listed",
         cfg: NumericConfig = DEFAULT_CONFIG) -> List[GValue]:
    """G evaluated on every p23 candidate at the point.

    Pbar is the other member of the conjugate pair at real-coefficient
    points, and conj(P) otherwise; at reality-constrained points these
    coincide.
    """
    with mpmath.workprec(cfg.precision_bits):
        c3, c2, c1, c0 = _cubic_duals(at, variant, cfg)
        roots_all = solve_cubic(c3.v, c2.v, c1.v, c0.v, cfg)
        coeffs_real = all(abs(mpmath.im(c)) <= cfg.tol_conj * max(1, abs(c))
                          for c in (c3.v, c2.v, c1.v, c0.v))
        cands = [r for r in roots_all.roots
                 if abs(mpmath.im(r)) > cfg.tol_conj * max(1, abs(r))]
        if not cands:
            raise AllRootsReal(f"no non-real root at {at.describe()} "
                               f"({variant})")
        cands = sorted(cands, key=lambda r: (mpmath.im(r), mpmath.re(r)))
        p1 = _dual_of("p1", at, cfg)
        p2 = _dual_of("p2", at, cfg)
        dp2al = eval_complex(CATALOG.d("p2", "alpha"), at, cfg)
        dp2a = eval_complex(CATALOG.d("p2", "a"), at, cfg)
        dp2ab = eval_complex(CATALOG.d("p2", "abar"), at, cfg)
        out = []
        for P in cands:
            if coeffs_real and len(cands) == 2:
                Pb = cands[0] if P is cands[1] else cands[1]
            else:
                Pb = mpmath.conj(P)
            dd = 3 * c3.v * P ** 2 + 2 * c2.v * P + c1.v
            if abs(dd) < cfg.tol_den:
                raise DerivativeDenominatorZero(
                    f"at {at.describe()} root {mpmath.nstr(P, 10)}")
            p24 = (c3.dal * P ** 3 + c2.dal * P ** 2 + c1.dal * P + c0.dal) / dd
            p25 = (c3.da * P ** 3 + c2.da * P ** 2 + c1.da * P + c0.da) / dd
            p26 = (c3.dab * P ** 3 + c2.dab * P ** 2 + c1.dab * P + c0.dab) / dd
            g = (p1.v * p2.v + dp2al - (p1.v - dp2a) * P + dp2ab * Pb
                 + p24 + p2.v * p25 - (mpmath.conj(p2.v) - 2 * Pb) * p26)
            out.append(GValue(P, _guard(g), abs(dd)))
        return out


def g_template_value(at: NumericPoint, P: mpmath.mpc,
                     Pbar: Optional[mpmath.mpc] = None,
                     cfg: NumericConfig = DEFAULT_CONFIG) -> mpmath.mpc:
    """Substitute a numeric root into the symbolic G template (listed
    coefficients); cross-checks the dual-chain evaluation."""
    with mpmath.workprec(cfg.precision_bits):
        if Pbar is None:
            Pbar = mpmath.conj(P)
        num, den = CATALOG.G_template()
        vals = at.ring_values()

        def jet_eval(jp):
            acc = mpmath.mpc(0)
            for m, coeff in jp.coeffs.items():
                t = eval_complex(coeff, at, cfg)
                if m[8]:
                    t *= P ** m[8]
                if m[9]:
                    t *= Pbar ** m[9]
                acc += t
            return acc

        dv = jet_eval(den)
        if abs(dv) < cfg.tol_den:
            raise DerivativeDenominatorZero(f"template denominator ~ 0 at "
                                            f"{at.describe()}")
        return _guard(jet_eval(num) / dv)


# -- non-vanishing scans -------------------------------------------------------

@dataclass
class ScanRow:
    target: str
    point: str
    variant: str
    value: str
    nonzero: Optional[bool]
    margin: str
    note: str = ""


def _fmt(z) -> str:
    return mpmath.nstr(z, 17)


def nonvanishing_scan(target: str, grid: Sequence[NumericPoint],
                      cfg: NumericConfig = DEFAULT_CONFIG) -> List[ScanRow]:
    """Exact values at the special angles where possible, floats elsewhere;
    one row per point (per variant and root for G)."""
    rows: List[ScanRow] = []
    for pt in grid:
        try:
            if target in ("F", "p16"):
                rows.extend(_scan_value_target(target, pt, cfg))
            elif target == "G":
                rows.extend(_scan_g(pt, cfg))
            else:
                raise ConfigError(f"unknown scan target {target!r}")
        except (PoleNearPoint, PoleEncountered) as exc:
            rows.append(ScanRow(target, pt.describe(), "-", "pole",
                                None, "0", str(exc)))
    return rows


def _scan_value_target(target: str, pt: NumericPoint,
                       cfg: NumericConfig) -> List[ScanRow]:
    e = CATALOG.expr(target)
    if pt.is_special:
        exact = special_value(e, pt.alpha_tag, a_val=pt.a_value(),
                              rho=pt.rho, b=pt.b)
        with mpmath.workprec(cfg.precision_bits):
            approx = exact.to_mpc(mpmath.mp)
            return [ScanRow(target, pt.describe(), "exact", repr(exact),
                            not exact.is_zero(), _fmt(abs(approx)))]
    val = eval_complex(e, pt, cfg)
    margin = abs(val)
    return [ScanRow(target, pt.describe(), "numeric", _fmt(val),
                    bool(margin > cfg.g_margin), _fmt(margin))]


def _scan_g(pt: NumericPoint, cfg: NumericConfig) -> List[ScanRow]:
    rows = []
    for variant in VARIANTS:
        try:
            values = G_at(pt, variant, cfg)
        except AllRootsReal as exc:
            rows.append(ScanRow("G", pt.describe(), variant, "-", None, "0",
                                f"outside general-type regime: {exc}"))
            continue
        except DerivativeDenominatorZero as exc:
            rows.append(ScanRow("G", pt.describe(), variant, "-", False, "0",
                                str(exc)))
            continue
        for gv in values:
            margin = abs(gv.g)
            rows.append(ScanRow(
                "G", pt.describe(), variant,
                f"root={_fmt(gv.root)} G={_fmt(gv.g)}",
                bool(margin > cfg.g_margin), _fmt(margin),
                f"|dd|={_fmt(gv.dd_abs)}"))
    return rows


def default_grid(include_pi3: bool = False) -> List[NumericPoint]:
    pts = []
    for rho in (Fraction(-2), Fraction(-1), Fraction(1, 2), Fraction(1),
                Fraction(2)):
        for b in (Fraction(1, 2), Fraction(1), Fraction(2)):
            pts.append(NumericPoint("pi/4", Fraction(0), Fraction(0), rho, b))
            if include_pi3:
                pts.append(NumericPoint("pi/3", Fraction(0), Fraction(0),
                                        rho, b))
    return pts


def parse_grid_file(path: str) -> List[NumericPoint]:
    """One point per line: alpha_tag,a_re,a_im,rho,b ('#' comments)."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 5:
                raise ConfigError(f"{path}:{lineno}: expected 5 fields")
            tag = parts[0]
            if tag not in ("pi/4", "pi/3"):
                Fraction(tag)  # validates
            rows.append(NumericPoint(tag, Fraction(parts[1]),
                                     Fraction(parts[2]), Fraction(parts[3]),
                                     Fraction(parts[4])))
    return rows


# -- the closing integration demo ---------------------------------------------

@dataclass
class OdeTrajectory:
    samples: List[Tuple[mpmath.mpf, mpmath.mpc]]
    step: mpmath.mpf
    method: str = "rk4"


def ode_integrate(alpha0: float, a0, alpha1: float, step: float,
                  rho: Fraction = Fraction(1), b: Fraction = Fraction(1),
                  cfg: NumericConfig = DEFAULT_CONFIG) -> OdeTrajectory:
    """Classical fourth-order one-step integration of a' = p2(alpha, a,
    conj a) with the reality constraint substituted at every stage."""
    with mpmath.workprec(cfg.precision_bits):
        p2 = CATALOG.expr("p2")
        rho_v = _to_mpf(rho)
        b_v = _to_mpf(b)

        def f(al, a):
            s, c = mpmath.sin(al), mpmath.cos(al)
            vals = (s, c, a, mpmath.conj(a), rho_v, b_v)
            den = mpmath.mpc(1)
            for fid, exp in p2.den_factors.items():
                den *= REGISTRY.poly(fid).eval_generic(vals, _coerce) ** exp
            if abs(den) < cfg.tol_ode_pole:
                raise PoleEncountered("pole during integration", float(al))
            return _guard(p2.num.eval_generic(vals, _coerce) / den)

        al0 = mpmath.mpf(alpha0)
        al1 = mpmath.mpf(alpha1)
        if step <= 0:
            raise ConfigError("step must be positive")
        n = max(1, int(mpmath.nint(abs(al1 - al0) / step)))
        h = (al1 - al0) / n
        a = mpmath.mpc(a0)
        samples = [(al0, a)]
        al = al0
        for _ in range(n):
            try:
                k1 = f(al, a)
                k2 = f(al + h / 2, a + h * k1 / 2)
                k3 = f(al + h / 2, a + h * k2 / 2)
                k4 = f(al + h, a + h * k3)
            except PoleEncountered as exc:
                raise PoleEncountered(str(exc), float(al)) from None
            a = a + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6
            al = al + h
            samples.append((al, _guard(a)))
        return OdeTrajectory(samples, h)
