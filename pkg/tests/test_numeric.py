"""Numeric lab: floating evaluation, cubic solving, candidate roots, G,
scans, and the integration demo.

Frozen reference values come from an independent half-angle prototype and
from hand substitution; root/G references are quoted to the digits shown.
"""

import math
from fractions import Fraction

import mpmath
import pytest

from pmc_verify.catalog import CATALOG
from pmc_verify.errors import (
    AllRootsReal, ConfigError, DegenerateLeadingCoefficient,
    DerivativeDenominatorZero, PoleEncountered,
)
from pmc_verify.numeric import (
    DEFAULT_CONFIG, G_at, NumericPoint, cubic_at, default_grid,
    eval_complex, g_template_value, nonvanishing_scan, ode_integrate,
    p23_candidates, parse_grid_file, solve_cubic,
)

CFG = DEFAULT_CONFIG

# library values carry 128-bit precision; comparisons here must not round
# them back to the 53-bit default context
mpmath.mp.prec = 192


def _pt(rho, b, tag="pi/4", a_re=0, a_im=0):
    return NumericPoint(tag, Fraction(a_re), Fraction(a_im), Fraction(rho),
                        Fraction(b))


class TestEvalComplex:
    def test_p3_quarter(self):
        v = eval_complex(CATALOG.expr("p3"), _pt(1, 1), CFG)
        assert abs(v - (-1)) < mpmath.mpf("1e-30")

    def test_kappa_near_right_angle(self):
        tag = str(Fraction(math.pi / 2).limit_denominator(10 ** 15))
        v = eval_complex(CATALOG.expr("kappa"),
                         NumericPoint(tag, Fraction(0), Fraction(0),
                                      Fraction(2), Fraction(1)), CFG)
        assert abs(v - 1) < mpmath.mpf("1e-25")

    def test_circle_residual(self):
        from pmc_verify.poly import Polynomial, S, C
        from pmc_verify.rational import TrigRational
        circ = TrigRational.make(Polynomial.var(S, 2) + Polynomial.var(C, 2)
                                 - Polynomial.const(1))
        for tag in ("1/3", "2/3", "5/7"):
            v = eval_complex(circ, NumericPoint(tag, Fraction(1, 3),
                                                Fraction(1, 5), Fraction(1),
                                                Fraction(1)), CFG)
            assert abs(v) < mpmath.mpf("1e-30")


class TestSolveCubic:
    def test_roots_of_unity(self):
        out = solve_cubic(1, 0, 0, -1, CFG)
        expected = sorted([mpmath.mpc(1), mpmath.exp(2j * mpmath.pi / 3),
                           mpmath.exp(-2j * mpmath.pi / 3)],
                          key=lambda z: (mpmath.re(z), mpmath.im(z)))
        for r, e in zip(out.roots, expected):
            assert abs(r - e) < mpmath.mpf("1e-30")
        assert all(res < CFG.tol_root for res in out.residuals)

    def test_triple_root(self):
        out = solve_cubic(1, -3, 3, -1, CFG)
        for r in out.roots:
            assert abs(r - 1) < mpmath.mpf("1e-10")
        assert all(res < CFG.tol_root for res in out.residuals)

    def test_degenerate_leading(self):
        with pytest.raises(DegenerateLeadingCoefficient):
            solve_cubic(0, 1, 1, 1, CFG)

    def test_residual_contract_random(self):
        import random
        rng = random.Random(42)
        for _ in range(1000):
            cs = [mpmath.mpc(rng.uniform(-4, 4), rng.uniform(-4, 4))
                  for _ in range(4)]
            if abs(cs[0]) < 0.1:
                cs[0] += 1
            out = solve_cubic(*cs, CFG)
            assert all(res < CFG.tol_root for res in out.residuals)

    def test_conjugate_closure_real_cubics(self):
        import random
        rng = random.Random(7)
        for _ in range(1000):
            cs = [mpmath.mpf(rng.uniform(-4, 4)) for _ in range(4)]
            if abs(cs[0]) < 0.1:
                cs[0] += 1
            out = solve_cubic(*cs, CFG)
            nonreal = [r for r in out.roots
                       if abs(mpmath.im(r)) > CFG.tol_conj * max(1, abs(r))]
            assert len(nonreal) in (0, 2)
            if nonreal:
                assert abs(nonreal[0] - mpmath.conj(nonreal[1])) < \
                    CFG.tol_conj * max(1, abs(nonreal[0]))


class TestCandidates:
    def test_quarter_rho1_b1_all_real(self):
        # three real roots under both variants at rho=1, b=1: the point is
        # outside the general-type regime (the conjugate-pair regime needs
        # other parameters)
        for variant in ("listed", "derived"):
            with pytest.raises(AllRootsReal):
                p23_candidates(_pt(1, 1), variant, CFG)

    def test_candidate_pair_exists(self):
        # both variants admit a pair at rho=-2, b=2
        for variant, re_ref, im_ref in (
                ("listed", "-1.43028932027", "2.52739501293"),
                ("derived", "-0.986173014587", "2.18336724951")):
            cands = p23_candidates(_pt(-2, 2), variant, CFG)
            assert len(cands) == 2
            hi = max(cands, key=lambda r: mpmath.im(r))
            assert abs(hi - mpmath.mpc(mpmath.mpf(re_ref),
                                       mpmath.mpf(im_ref))) < 1e-9
            # pair elements conjugate, both nonzero
            assert abs(cands[0] - mpmath.conj(cands[1])) < CFG.tol_conj
            assert all(abs(r) > 1e-8 for r in cands)

    def test_cubic_coefficients_real_at_quarter(self):
        for rho, b in ((-2, 2), (1, 1), (Fraction(1, 2), 2)):
            for variant in ("listed", "derived"):
                out = cubic_at(_pt(rho, b), variant, CFG)
                for c in out.coefficients:
                    assert abs(mpmath.im(c)) < CFG.tol_imag_rel * max(1, abs(c))


class TestG:
    def test_g_values_frozen(self):
        for variant, g_ref in (("listed", "4.91900961"),
                               ("derived", "5.964374116")):
            values = G_at(_pt(-2, 2), variant, CFG)
            assert len(values) == 2
            for gv in values:
                assert abs(abs(gv.g) - mpmath.mpf(g_ref)) < 1e-6
                assert gv.dd_abs > 1e-8
                assert abs(gv.g) > 1e-8

    def test_g_conjugate_symmetry(self):
        values = G_at(_pt(-1, 2), "derived", CFG)
        g1, g2 = values[0].g, values[1].g
        assert abs(g1 - mpmath.conj(g2)) < 1e-20 * max(1, abs(g1))

    def test_pole_free_negative_rho(self):
        # a pole-free grid point with rho = -1 gives finite G values
        for gv in G_at(_pt(-1, 2), "listed", CFG):
            assert mpmath.isfinite(gv.g.real) and mpmath.isfinite(gv.g.imag)

    def test_all_roots_real_raises(self):
        with pytest.raises(AllRootsReal):
            G_at(_pt(2, 1), "derived", CFG)


@pytest.mark.slow
class TestGTemplate:
    def test_template_matches_dual_chain(self):
        pt = _pt(-2, 2)
        values = G_at(pt, "listed", CFG)
        gv = values[0]
        tv = g_template_value(pt, gv.root, mpmath.conj(gv.root), CFG)
        assert abs(tv - gv.g) < mpmath.mpf("1e-10")

    def test_template_finite_at_any_root(self):
        # real root at rho=1, b=1: template evaluation still finite
        pt = _pt(1, 1)
        rts = cubic_at(pt, "listed", CFG)
        val = g_template_value(pt, rts.roots[0], mpmath.conj(rts.roots[0]),
                               CFG)
        assert mpmath.isfinite(val.real) and mpmath.isfinite(val.imag)

    def test_template_denominator_structure(self):
        num, den = CATALOG.G_template()
        from pmc_verify.jets import JP, mono
        from pmc_verify.rational import equals
        from pmc_verify.gaussian import GaussianRational
        assert set(den.coeffs) == {mono(JP, 2), mono(JP), (0,) * 10}
        assert equals(den.coeffs[mono(JP, 2)],
                      CATALOG.expr("p16").scale(GaussianRational(3)))
        assert equals(den.coeffs[mono(JP)],
                      CATALOG.expr("p20").scale(GaussianRational(2)))
        assert equals(den.coeffs[(0,) * 10], CATALOG.expr("p21"))

    def test_template_zero_denominator_guard(self):
        # choose P as a root of the derivative denominator 3c3 P^2 + ...
        pt = _pt(1, 1)
        from pmc_verify.numeric import _cubic_duals
        c3, c2, c1, _ = _cubic_duals(pt, "listed", CFG)
        disc = mpmath.sqrt((2 * c2.v) ** 2 - 4 * (3 * c3.v) * c1.v)
        p_bad = (-2 * c2.v + disc) / (2 * 3 * c3.v)
        with pytest.raises(DerivativeDenominatorZero):
            g_template_value(pt, p_bad, mpmath.conj(p_bad), CFG)


class TestScan:
    def test_f_rows_exact(self):
        rows = nonvanishing_scan("F", [_pt(1, 1), _pt(-2, 2)], CFG)
        assert all(r.nonzero for r in rows)
        assert all(r.variant == "exact" for r in rows)

    def test_p16_rows(self):
        rows = nonvanishing_scan("p16", [_pt(r, b) for r, b in
                                         ((1, 1), (-1, 2), (2, Fraction(1, 2)))],
                                 CFG)
        assert all(r.nonzero for r in rows)

    def test_g_rows_include_regime_notes(self):
        rows = nonvanishing_scan("G", [_pt(1, 1), _pt(-2, 2)], CFG)
        notes = [r for r in rows if r.nonzero is None]
        values = [r for r in rows if r.nonzero]
        assert notes and values  # rho=1,b=1 is outside; rho=-2,b=2 passes

    def test_default_grid_shape(self):
        assert len(default_grid()) == 15
        assert len(default_grid(include_pi3=True)) == 30

    def test_grid_file_parsing(self, tmp_path):
        p = tmp_path / "grid.csv"
        p.write_text("# comment line\n"
                     "pi/4, 0, 0, -2, 2\n"
                     "\n"
                     "1/3, 1/2, -1/5, 1, 1\n", encoding="utf-8")
        rows = parse_grid_file(str(p))
        assert len(rows) == 2
        assert rows[0].alpha_tag == "pi/4" and rows[0].rho == -2
        assert rows[1].a_re == Fraction(1, 2)

    def test_grid_file_bad_row(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("pi/4, 0, 0\n", encoding="utf-8")
        with pytest.raises(ConfigError):
            parse_grid_file(str(p))


class TestOde:
    def test_step_halving_order(self):
        def endpoint(step):
            return ode_integrate(1.0, 0, 1.5, step, cfg=CFG).samples[-1][1]

        ref = endpoint(0.1 / 64)
        errs = [abs(endpoint(h) - ref) for h in (0.1, 0.05, 0.025)]
        orders = [float(mpmath.log(errs[i] / errs[i + 1], 2))
                  for i in range(2)]
        assert all(3.7 <= o <= 4.3 for o in orders), orders

    def test_one_step_derivative_match(self):
        # (a(alpha0+h) - a0)/h approaches p2(alpha0, a0, conj a0) linearly
        al0 = 1.1
        f0 = eval_complex(CATALOG.expr("p2"),
                          NumericPoint(str(Fraction(al0).limit_denominator(10**12)),
                                       Fraction(0), Fraction(0), Fraction(1),
                                       Fraction(1)), CFG)
        errs = []
        for h in (1e-2, 5e-3):
            traj = ode_integrate(al0, 0, al0 + h, h, cfg=CFG)
            fd = (traj.samples[-1][1] - traj.samples[0][1]) / mpmath.mpf(h)
            errs.append(abs(fd - f0))
        ratio = errs[0] / errs[1]
        assert 1.5 < ratio < 2.5  # first order in h

    def test_crosses_right_angle(self):
        traj = ode_integrate(1.2, 0, 2.0, 0.05, cfg=CFG)
        assert len(traj.samples) == 17
        alphas = [float(al) for al, _ in traj.samples]
        assert alphas == sorted(alphas)

    def test_pole_encountered(self):
        with pytest.raises(PoleEncountered) as exc:
            ode_integrate(math.pi - 0.05, 0, math.pi + 0.05, 0.1, cfg=CFG)
        assert exc.value.last_alpha is not None

    def test_reality_constraint(self):
        traj = ode_integrate(0.8, mpmath.mpc(0.1, 0.2), 1.0, 0.02, cfg=CFG)
        # trajectory stays finite and monotone; abar = conj(a) by
        # construction at every stage
        assert len(traj.samples) == 11
