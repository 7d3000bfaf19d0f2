"""The named-function catalog.

Every entry is built once from its defining formula over the exact kernel
and cached; derivatives are cached alongside.  kappa is the squared norm of
the second fundamental tensor component c, eliminated eagerly through the
Ricci relation wherever the defining formulas insert it.

Two *views* expose the catalog to the jet machinery: SymView hands out the
canonical TrigRationals themselves, PointView hands out exact evaluations at
one admissible sample point (the sampled certificate mode).  Both offer the
same scalar-ring interface, so replay code is written once.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .errors import UnknownId
from .gaussian import GaussianRational
from .jets import JPB, JP, JetPoly, mono as jmono
from .poly import A, ABAR, B, C, RHO, S
from .rational import SamplePoint, TrigRational

_A = TrigRational.var(A)
_ABAR = TrigRational.var(ABAR)
_B = TrigRational.var(B)
_RHO = TrigRational.var(RHO)
_S = TrigRational.var(S)
_C = TrigRational.var(C)


def _frac(p, q=1) -> TrigRational:
    return TrigRational.from_const(GaussianRational(Fraction(p, q)))


ANCHORS: Dict[str, str] = {
    "kappa": "Ricci relation (2.5)",
    "p1": "appendix list, p1; k-relation (3.1)",
    "p2": "appendix list, p2; relation (3.2)",
    "p3": "appendix list, p3; relation (3.3)",
    "p4": "appendix list, p4; first-order identity (3.4)",
    "p5": "appendix list, p5; relation (3.5)",
    "p6": "appendix list, p6",
    "p7": "appendix list, p7; closure (3.10)",
    "p8": "appendix list, p8; closure (3.10)",
    "p9a": "appendix list, p9a; display (3.12)",
    "p9b": "appendix list, p9b; display before (3.15)",
    "p9": "sum p9a + p9b as used in (3.15)",
    "p10a": "appendix list, p10a; display (3.12)",
    "p10b": "appendix list, p10b; display before (3.15)",
    "p10": "sum p10a + p10b as used in (3.15)",
    "p11": "appendix list, p11; second-order form (3.17)",
    "p12": "appendix list, p12; second-order form (3.17)",
    "p13": "appendix list, p13; second-order form (3.17)",
    "p14": "appendix list, p14; mixed relation (3.21)",
    "p15": "appendix list, p15; mixed relation (3.21)",
    "p16a": "appendix list, p16a; third-order display",
    "p16b": "appendix list, p16b; third-order display",
    "p16": "appendix list, p16 = p16a - p16b; equation (3.22)",
    "p17a": "appendix list, p17a",
    "p17b": "appendix list, p17b",
    "p17": "appendix list, p17 = p17a - p17b; equation (3.22)",
    "p18a": "appendix list, p18a",
    "p18b": "appendix list, p18b",
    "p18": "appendix list, p18 = p18a - p18b; equation (3.22)",
    "p19a": "appendix list, p19a",
    "p19b": "appendix list, p19b",
    "p19": "appendix list, p19 = p19a - p19b; equation (3.22)",
    "p20": "appendix list, p20; cubic coefficient",
    "p21": "appendix list, p21; cubic coefficient",
    "p22": "appendix list, p22; cubic coefficient",
    "q78": "|p7|^2 + p8, the closure quadratic",
    "F": "equation (3.20), left side",
    "G": "main-lemma display with p23 substituted",
    "p24": "appendix list, p24 (quotient in p23)",
    "p25": "appendix list, p25 (quotient in p23)",
    "p26": "appendix list, p26 (quotient in p23)",
}

MAIN_IDS = tuple(f"p{i}" for i in range(1, 23)) + ("kappa", "F")
SUB_IDS = ("p9a", "p9b", "p10a", "p10b", "p16a", "p16b", "p17a", "p17b",
           "p18a", "p18b", "p19a", "p19b", "q78")
ALL_IDS = MAIN_IDS + SUB_IDS


QUOTIENT_IDS = ("p24", "p25", "p26", "G")

# structural forms of the P-extended entries; P stands for p23 and the
# shared denominator is the derivative of the cubic in P
QUOTIENT_FORMS = {
    "p24": "(d(p16)/d(alpha)*P^3 + d(p20)/d(alpha)*P^2 + d(p21)/d(alpha)*P"
           " + d(p22)/d(alpha)) / (3*p16*P^2 + 2*p20*P + p21)",
    "p25": "(d(p16)/d(a)*P^3 + d(p20)/d(a)*P^2 + d(p21)/d(a)*P"
           " + d(p22)/d(a)) / (3*p16*P^2 + 2*p20*P + p21)",
    "p26": "(d(p16)/d(abar)*P^3 + d(p20)/d(abar)*P^2 + d(p21)/d(abar)*P"
           " + d(p22)/d(abar)) / (3*p16*P^2 + 2*p20*P + p21)",
    "G": "p1*p2 + d(p2)/d(alpha) - (p1 - d(p2)/d(a))*P + d(p2)/d(abar)*Pbar"
         " + p24 + p2*p25 - (conj(p2) - 2*Pbar)*p26",
}


@dataclass(frozen=True)
class PEntry:
    id: str
    expr: Optional[TrigRational]
    anchor: str
    formula: Optional[str] = None  # structural form for P-extended entries


@dataclass(frozen=True)
class CubicCoeffs:
    c3: TrigRational
    c2: TrigRational
    c1: TrigRational
    c0: TrigRational


class Catalog:
    """Builds and caches the whole function list; read-only once built."""

    def __init__(self):
        self._exprs: Dict[str, TrigRational] = {}
        self._derivs: Dict[Tuple[str, str], TrigRational] = {}
        self._lock = threading.RLock()
        self._g_template: Optional[Tuple[JetPoly, JetPoly]] = None

    # -- public surface ------------------------------------------------------
    def p(self, pid: str) -> PEntry:
        if pid not in ANCHORS:
            raise UnknownId(pid)
        if pid in QUOTIENT_IDS:
            # P-extended entries are kept structural here; the jet-level
            # materialization lives in G_template and the numeric lab
            return PEntry(pid, None, ANCHORS[pid], QUOTIENT_FORMS[pid])
        return PEntry(pid, self.expr(pid), ANCHORS[pid])

    def pbar(self, pid: str) -> PEntry:
        """The bar-swap image p_i(alpha, abar, a)."""
        entry = self.p(pid)
        return PEntry(pid + "bar", entry.expr.swap_a(), entry.anchor)

    def expr(self, pid: str) -> TrigRational:
        with self._lock:
            e = self._exprs.get(pid)
            if e is None:
                e = self._build(pid)
                self._exprs[pid] = e
            return e

    def d(self, pid: str, var: str) -> TrigRational:
        """Cached partial derivative of a catalog entry."""
        key = (pid, var)
        with self._lock:
            e = self._derivs.get(key)
            if e is None:
                e = self.expr(pid).differentiate(var)
                self._derivs[key] = e
            return e

    def d2(self, pid: str, v1: str, v2: str) -> TrigRational:
        """Cached second partial; mixed partials commute, key is sorted."""
        v1, v2 = sorted((v1, v2))
        key = (pid, v1 + ":" + v2)
        with self._lock:
            e = self._derivs.get(key)
            if e is None:
                e = self.d(pid, v1).differentiate(v2)
                self._derivs[key] = e
            return e

    def cubic_coeffs(self) -> CubicCoeffs:
        return CubicCoeffs(self.expr("p16"), self.expr("p20"),
                           self.expr("p21"), self.expr("p22"))

    # -- construction ---------------------------------------------------------
    def _build(self, pid: str) -> TrigRational:
        builder = getattr(self, "_build_" + pid, None)
        if builder is None:
            raise UnknownId(pid)
        return builder()

    def _build_kappa(self) -> TrigRational:
        # |c|^2 = a abar + (rho/2)(-2 + 3 s^2)
        return _A * _ABAR + _RHO * _frac(1, 2) * (_frac(-2) + _frac(3) * _S * _S)

    def _cot(self) -> TrigRational:
        return _C / _S

    def _build_p1(self) -> TrigRational:
        cot = self._cot()
        num = (_A - _B) * (_ABAR - _B) + _frac(3, 2) * _RHO * _S * _S
        return num * cot / ((_A + _B) * (_ABAR + _B))

    def _build_p2(self) -> TrigRational:
        cot = self._cot()
        num = _frac(2) * _A * (_ABAR - _B) + _frac(3, 2) * _RHO * _S * _S
        return num * cot / (_ABAR + _B)

    def _build_p3(self) -> TrigRational:
        return (_A - _B) / (_A + _B) * self._cot()

    def _build_p4(self) -> TrigRational:
        kap = self.expr("kappa")
        p2 = self.expr("p2")
        p3 = self.expr("p3")
        return (kap * (p3 - p3.conjugate())
                + _frac(1, 2) * (_ABAR * p2 - _A * p2.conjugate())
                + _frac(3, 2) * _RHO * _S * _C)

    def _build_p5(self) -> TrigRational:
        return (_A * self.expr("p2").conjugate()
                - _frac(2) * self.expr("kappa") * self.expr("p3")
                + self.expr("p4"))

    def _build_p6(self) -> TrigRational:
        p1, p2, p3, p4, p5 = (self.expr(i) for i in ("p1", "p2", "p3", "p4", "p5"))
        kap = self.expr("kappa")
        return (p4 * (p3.conjugate() - p3) - kap * self.d("p3", "alpha")
                + _frac(1, 2) * (p1 * p5
                                 + _A * self.d("p2", "alpha").conjugate()
                                 + self.d("p4", "alpha")
                                 - p2 * self.d("p4", "a")
                                 + p2.conjugate() * self.d("p4", "abar")))

    def _den78(self) -> TrigRational:
        return _RHO * _frac(1, 2) * (_frac(-2) + _frac(3) * _S * _S)

    def _build_p7(self) -> TrigRational:
        kap = self.expr("kappa")
        p4 = self.expr("p4")
        inner = (_ABAR * p4
                 + _frac(3) * _RHO * _S * _C / (_frac(4) * (_A + _B)) * kap)
        return inner / self._den78()

    def _build_p8(self) -> TrigRational:
        p4 = self.expr("p4")
        inner = p4 * p4.conjugate() - self.expr("kappa") * self.expr("p6")
        return inner / self._den78()

    def _build_p9a(self) -> TrigRational:
        p7 = self.expr("p7")
        d7ab = self.d("p7", "abar")
        return (self.d("p7", "alpha") + (d7ab + d7ab.conjugate()) * p7
                + self.d("p8", "a"))

    def _build_p9b(self) -> TrigRational:
        p1, p2, p7 = (self.expr(i) for i in ("p1", "p2", "p7"))
        d7a, d7ab = self.d("p7", "a"), self.d("p7", "abar")
        d2a, d2ab = self.d("p2", "a"), self.d("p2", "abar")
        return (p1 * (-p2.conjugate() + p7)
                - self.d("p2", "alpha").conjugate()
                - p2 * d7a + p2.conjugate() * d7ab
                - p7 * d2a.conjugate() + p7.conjugate() * d2ab.conjugate()
                - p7 * (d7ab - d7ab.conjugate())
                + self.d("p8", "a"))

    def _build_p9(self) -> TrigRational:
        return self.expr("p9a") + self.expr("p9b")

    def _build_p10a(self) -> TrigRational:
        d7ab = self.d("p7", "abar")
        return (self.expr("p8") * (d7ab + d7ab.conjugate())
                + self.d("p8", "alpha"))

    def _build_p10b(self) -> TrigRational:
        p1, p2, p7, p8 = (self.expr(i) for i in ("p1", "p2", "p7", "p8"))
        d2al = self.d("p2", "alpha")
        d2a = self.d("p2", "a")
        d7ab = self.d("p7", "abar")
        p2p7 = p2 * p7
        return (p1 * (-p2p7 + p2p7.conjugate())
                - p2 * self.d("p8", "a") + p2.conjugate() * self.d("p8", "abar")
                - p7 * d2al + (p7 * d2al).conjugate()
                + p8 * (d2a - d2a.conjugate() - d7ab + d7ab.conjugate()))

    def _build_p10(self) -> TrigRational:
        return self.expr("p10a") + self.expr("p10b")

    def _build_q78(self) -> TrigRational:
        p7 = self.expr("p7")
        return p7 * p7.conjugate() + self.expr("p8")

    def _build_p11(self) -> TrigRational:
        return ((self.expr("p9a") + self.expr("p9b"))
                / (_frac(2) * self.expr("q78")))

    def _build_p12(self) -> TrigRational:
        p7 = self.expr("p7")
        p9a, p9b = self.expr("p9a"), self.expr("p9b")
        num = (p7 * p7 * self.d("p2", "abar")
               + p7 * (p9a.conjugate() - p9b.conjugate())
               - p7.conjugate() * (p9a + p9b)
               + self.expr("p10a") + self.expr("p10b"))
        return num / (_frac(2) * self.expr("q78"))

    def _build_p13(self) -> TrigRational:
        p7, p8 = self.expr("p7"), self.expr("p8")
        p9a, p9b = self.expr("p9a"), self.expr("p9b")
        num = (p7 * p8 * self.d("p2", "abar")
               - p7.conjugate() * (self.expr("p10a") + self.expr("p10b"))
               + p8 * (p9a.conjugate() - p9b.conjugate()))
        return num / (_frac(2) * self.expr("q78"))

    def _build_p14(self) -> TrigRational:
        return self.expr("p1") - self.d("p2", "a") + self.expr("p12")

    def _build_p15(self) -> TrigRational:
        return (-(self.expr("p1") * self.expr("p2"))
                - self.d("p2", "alpha") + self.expr("p13"))

    def _build_p16a(self) -> TrigRational:
        p11 = self.expr("p11")
        return (p11 * (self.expr("p12") + _frac(2) * self.expr("p14"))
                - self.expr("p2") * self.d("p11", "a")
                + self.expr("p2").conjugate() * self.d("p11", "abar")
                - self.expr("p7") * self.d("p11", "abar")
                + self.d("p12", "a"))

    def _build_p16b(self) -> TrigRational:
        p11 = self.expr("p11")
        return (p11 * (self.expr("p1") + _frac(2) * self.expr("p12")
                       + self.expr("p14"))
                + self.d("p11", "alpha")
                + self.expr("p7") * self.d("p11", "abar")
                + self.d("p14", "a"))

    def _build_p16(self) -> TrigRational:
        return self.expr("p16a") - self.expr("p16b")

    def _build_p17a(self) -> TrigRational:
        p7, p11 = self.expr("p7"), self.expr("p11")
        d2ab = self.d("p2", "abar")
        return (_frac(2) * p11 * self.expr("p15")
                + self.expr("p12") * self.expr("p14")
                + _frac(1, 4) * d2ab * d2ab.conjugate()
                + _frac(1, 2) * p7 * self.d2("p2", "abar", "a")
                - p7 * p11 * d2ab
                - self.expr("q78") * self.d("p11", "abar")
                - self.expr("p2") * self.d("p12", "a")
                + self.expr("p2").conjugate() * self.d("p12", "abar")
                - p7 * self.d("p12", "abar")
                + self.d("p13", "a"))

    def _build_p17b(self) -> TrigRational:
        p7, p11 = self.expr("p7"), self.expr("p11")
        d2ab = self.d("p2", "abar")
        return (self.expr("p1") * self.expr("p14")
                + _frac(2) * p11 * self.expr("p13")
                + self.expr("p12") * self.expr("p14")
                - _frac(1, 4) * d2ab * d2ab.conjugate()
                - _frac(1, 2) * p7 * self.d2("p2", "abar", "a")
                + p7 * p11 * d2ab
                + self.expr("q78") * self.d("p11", "abar")
                + p7 * self.d("p14", "abar")
                + self.d("p14", "alpha")
                + self.d("p15", "a"))

    def _build_p17(self) -> TrigRational:
        return self.expr("p17a") - self.expr("p17b")

    def _build_p18a(self) -> TrigRational:
        p7b = self.expr("p7").conjugate()
        p11 = self.expr("p11")
        d2ab = self.d("p2", "abar")
        return (_frac(-1, 2) * (_frac(2) * p7b + _frac(2) * p7b * p11
                                + self.expr("p12")
                                + self.expr("p14").conjugate()) * d2ab
                + _frac(1, 2) * (-self.expr("p2") + p7b) * self.d2("p2", "abar", "a")
                + _frac(1, 2) * self.expr("p2").conjugate() * self.d2("p2", "abar", "abar")
                - p7b * p7b * self.d("p11", "abar")
                - self.d("p13", "abar"))

    def _build_p18b(self) -> TrigRational:
        p7b = self.expr("p7").conjugate()
        p11 = self.expr("p11")
        d2ab = self.d("p2", "abar")
        return (_frac(-1, 2) * (self.expr("p1") - _frac(2) * p7b * p11
                                + self.expr("p12").conjugate()
                                - self.expr("p14")) * d2ab
                - _frac(1, 2) * self.d2("p2", "alpha", "a")
                - _frac(1, 2) * p7b * self.d2("p2", "abar", "a")
                + p7b * p7b * self.d("p11", "abar")
                + p7b * self.d("p14", "abar")
                + self.d("p15", "abar"))

    def _build_p18(self) -> TrigRational:
        return self.expr("p18a") - self.expr("p18b")

    def _build_p19a(self) -> TrigRational:
        p8, p11 = self.expr("p8"), self.expr("p11")
        d2ab = self.d("p2", "abar")
        p7p8c = (self.expr("p7") * p8).conjugate()
        return (self.expr("p12") * self.expr("p15")
                - _frac(1, 2) * (_frac(2) * p8 * p11
                                 + self.expr("p15").conjugate()) * d2ab
                + _frac(1, 2) * p8 * self.d2("p2", "abar", "a")
                - p7p8c * self.d("p11", "abar")
                - p8 * self.d("p12", "abar")
                - self.expr("p2") * self.d("p13", "a")
                + self.expr("p2").conjugate() * self.d("p13", "abar"))

    def _build_p19b(self) -> TrigRational:
        p8, p11 = self.expr("p8"), self.expr("p11")
        d2ab = self.d("p2", "abar")
        p7p8c = (self.expr("p7") * p8).conjugate()
        return (self.expr("p1") * self.expr("p15")
                + self.expr("p13") * self.expr("p14")
                + _frac(1, 2) * (_frac(2) * p8 * p11
                                 - self.expr("p13").conjugate()) * d2ab
                - _frac(1, 2) * p8 * self.d2("p2", "abar", "a")
                + p7p8c * self.d("p11", "abar")
                + p8 * self.d("p14", "abar")
                + self.d("p15", "alpha"))

    def _build_p19(self) -> TrigRational:
        return self.expr("p19a") - self.expr("p19b")

    def _build_p20(self) -> TrigRational:
        return (-(self.expr("p7").conjugate() * self.expr("p16"))
                + self.expr("p17"))

    def _build_p21(self) -> TrigRational:
        return (-(self.expr("p7").conjugate() * self.expr("p17"))
                + self.expr("p7") * self.expr("p18")
                + self.expr("p19"))

    def _build_p22(self) -> TrigRational:
        return (self.expr("p8") * self.expr("p18")
                - self.expr("p7").conjugate() * self.expr("p19"))

    def _build_F(self) -> TrigRational:
        p1, p2, p3, p7 = (self.expr(i) for i in ("p1", "p2", "p3", "p7"))
        p7b = p7.conjugate()
        return (p1 * p2 - p1 * p7b + _frac(2) * (p3 * p7).conjugate()
                + self.d("p2", "alpha")
                + _frac(1, 2) * p2.conjugate() * self.d("p2", "abar")
                - p7b.differentiate("alpha")
                - p2 * p7b.differentiate("a"))

    # -- the G template over the P-extended ring -------------------------------
    def G_template(self) -> Tuple[JetPoly, JetPoly]:
        """G as (numerator, denominator) jet polynomials in P, Pbar.

        The shared denominator is 3 p16 P^2 + 2 p20 P + p21; the p24..p26
        quotients are expanded over it.  Evaluation must guard against the
        denominator vanishing at a root.
        """
        with self._lock:
            if self._g_template is not None:
                return self._g_template
            c3, c2, c1, c0 = (self.expr(i) for i in ("p16", "p20", "p21", "p22"))
            dd = JetPoly({jmono(JP, 2): _frac(3) * c3,
                          jmono(JP): _frac(2) * c2,
                          (0,) * 10: c1})

            def n_(var: str) -> JetPoly:
                return JetPoly({jmono(JP, 3): self.d("p16", var),
                                jmono(JP, 2): self.d("p20", var),
                                jmono(JP): self.d("p21", var),
                                (0,) * 10: self.d("p22", var)})

            p1, p2 = self.expr("p1"), self.expr("p2")
            head = JetPoly({(0,) * 10: p1 * p2 + self.d("p2", "alpha"),
                            jmono(JP): -(p1 - self.d("p2", "a")),
                            jmono(JPB): self.d("p2", "abar")})
            tail = (n_("alpha")
                    + JetPoly.const(p2) * n_("a")
                    - (JetPoly.const(p2.conjugate())
                       - JetPoly({jmono(JPB): _frac(2)})) * n_("abar"))
            num = head * dd + tail
            self._g_template = (num, dd)
            return self._g_template


CATALOG = Catalog()


# -- views -------------------------------------------------------------------

class SymView:
    """Scalar ring = canonical TrigRationals from the shared catalog."""

    def __init__(self, catalog: Catalog = CATALOG):
        self.cat = catalog

    def value(self, pid: str) -> TrigRational:
        return self.cat.expr(pid)

    def d(self, pid: str, var: str) -> TrigRational:
        return self.cat.d(pid, var)

    def d2(self, pid: str, var: str, var2: str) -> TrigRational:
        return self.cat.d2(pid, var, var2)

    def conj(self, v: TrigRational) -> TrigRational:
        return v.conjugate()

    def const(self, n) -> TrigRational:
        return TrigRational.from_const(GaussianRational(n))

    def const_frac(self, p: int, q: int) -> TrigRational:
        return TrigRational.from_const(GaussianRational(Fraction(p, q)))

    def base(self, name: str) -> TrigRational:
        return {"a": _A, "abar": _ABAR, "s": _S, "c": _C,
                "rho": _RHO, "b": _B}[name]

    def zero(self) -> TrigRational:
        return TrigRational.from_const(0)


class PointView:
    """Scalar ring = exact values at one admissible sample point.

    Conjugation of values is complex conjugation, which agrees with the
    bar-swap because sample points satisfy abar = conj(a) with real
    s, c, rho, b.
    """

    def __init__(self, pt: SamplePoint, catalog: Catalog = CATALOG):
        self.cat = catalog
        self.pt = pt
        self._cache: Dict[object, GaussianRational] = {}

    def _eval(self, key, expr_getter) -> GaussianRational:
        v = self._cache.get(key)
        if v is None:
            v = expr_getter().eval_exact(self.pt)
            self._cache[key] = v
        return v

    def value(self, pid: str) -> GaussianRational:
        return self._eval(("v", pid), lambda: self.cat.expr(pid))

    def d(self, pid: str, var: str) -> GaussianRational:
        return self._eval(("d", pid, var), lambda: self.cat.d(pid, var))

    def d2(self, pid: str, var: str, var2: str) -> GaussianRational:
        return self._eval(("d2", pid, *sorted((var, var2))),
                          lambda: self.cat.d2(pid, var, var2))

    def conj(self, v: GaussianRational) -> GaussianRational:
        return v.conjugate()

    def const(self, n) -> GaussianRational:
        return GaussianRational(n)

    def const_frac(self, p: int, q: int) -> GaussianRational:
        return GaussianRational(Fraction(p, q))

    def base(self, name: str) -> GaussianRational:
        vals = self.pt.values()
        return {"s": vals[0], "c": vals[1], "a": vals[2], "abar": vals[3],
                "rho": vals[4], "b": vals[5]}[name]

    def zero(self) -> GaussianRational:
        return GaussianRational(0)
