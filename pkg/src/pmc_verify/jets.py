"""Formal jet extension and the two total-derivative operators.

A JetPoly is a polynomial in the formal jet symbols

    X = a_alpha, Y = abar_alpha, X2 = a_alphaalpha, Y2 = abar_alphaalpha,
    C = c, Cbar, W = c_alpha, Wbar, P = p23, Pbar

whose coefficients live in a scalar ring supplied by a *view*: canonical
TrigRationals in symbolic mode, exact Gaussian rationals bound to a sample
point in sampled mode.  The derivation operators consume coefficients
together with their first partials (Dual), so the same replay code runs in
both modes; outputs carry plain scalars.

Rewrite rules, grouped by level (each level includes the previous):

    FIRST_ORDER   jets allowed, products left alone
    CLOSED        X*Y -> p7 X + conj(p7) Y + p8          (first-order closure)
    SECOND_ORDER  X2 -> p11 X^2 + p12 X + (1/2)(dp2/dabar) Y + p13, Y2 -> conj

plus the always-on elimination C*Cbar -> kappa, and the optional closure
rules Cbar*W -> a Y + p4 and C*Wbar -> abar X + conj(p4) used by the
first-order checks.  Every rule strictly reduces a finite measure (combined
degree in the rewritten pair), so reduction terminates.
"""

from __future__ import annotations

import enum
from typing import Callable, Optional

from .errors import ReductionOverflow, UnsupportedSymbol

# jet slot indices
JX, JY, JX2, JY2, JC, JCB, JW, JWB, JP, JPB = range(10)
JET_NAMES = ("X", "Y", "X2", "Y2", "C", "Cbar", "W", "Wbar", "P", "Pbar")
_NJ = 10
_ZMON = (0,) * _NJ

_CONJ_SLOT = (JY, JX, JY2, JX2, JCB, JC, JWB, JW, JPB, JP)


class RewriteLevel(enum.IntEnum):
    BASE = 0
    FIRST_ORDER = 1
    CLOSED = 2
    SECOND_ORDER = 3


def _is_zero(v) -> bool:
    z = v.is_zero
    return z() if callable(z) else z


class JetPoly:
    """dict monomial(10-tuple) -> scalar; scalars never zero."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict] = None):
        self.coeffs = coeffs if coeffs is not None else {}

    @classmethod
    def const(cls, scalar) -> "JetPoly":
        if _is_zero(scalar):
            return cls({})
        return cls({_ZMON: scalar})

    @classmethod
    def sym(cls, slot: int, scalar) -> "JetPoly":
        if _is_zero(scalar):
            return cls({})
        m = [0] * _NJ
        m[slot] = 1
        return cls({tuple(m): scalar})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def monomials(self):
        return self.coeffs.keys()

    def coeff(self, mono) -> Optional[object]:
        return self.coeffs.get(tuple(mono))

    def __add__(self, other: "JetPoly") -> "JetPoly":
        out = dict(self.coeffs)
        for m, v in other.coeffs.items():
            w = out.get(m)
            if w is None:
                out[m] = v
            else:
                w = w + v
                if _is_zero(w):
                    del out[m]
                else:
                    out[m] = w
        return JetPoly(out)

    def __sub__(self, other: "JetPoly") -> "JetPoly":
        return self + (-other)

    def __neg__(self) -> "JetPoly":
        return JetPoly({m: -v for m, v in self.coeffs.items()})

    def scale(self, scalar) -> "JetPoly":
        if _is_zero(scalar):
            return JetPoly({})
        return JetPoly({m: v * scalar for m, v in self.coeffs.items()})

    def __mul__(self, other: "JetPoly") -> "JetPoly":
        out: dict = {}
        for m1, v1 in self.coeffs.items():
            for m2, v2 in other.coeffs.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                p = v1 * v2
                w = out.get(m)
                if w is None:
                    w = p
                else:
                    w = w + p
                if _is_zero(w):
                    out.pop(m, None)
                else:
                    out[m] = w
        return JetPoly(out)

    def conj(self, conj_scalar: Callable) -> "JetPoly":
        out = {}
        for m, v in self.coeffs.items():
            mm = tuple(m[_CONJ_SLOT[i]] for i in range(_NJ))
            out[mm] = conj_scalar(v)
        return JetPoly(out)

    def max_slot_exp(self, slot: int) -> int:
        return max((m[slot] for m in self.coeffs), default=0)

    def term_count(self) -> int:
        total = 0
        for v in self.coeffs.values():
            n = getattr(v, "nterms", None)
            total += n() if callable(n) else 1
        return total

    def __repr__(self) -> str:
        return f"JetPoly<{len(self.coeffs)} monomials>"


class Dual:
    """A scalar together with its alpha, a, abar partials."""

    __slots__ = ("v", "dal", "da", "dab")

    def __init__(self, v, dal, da, dab):
        self.v = v
        self.dal = dal
        self.da = da
        self.dab = dab

    def __add__(self, other: "Dual") -> "Dual":
        return Dual(self.v + other.v, self.dal + other.dal,
                    self.da + other.da, self.dab + other.dab)

    def __sub__(self, other: "Dual") -> "Dual":
        return Dual(self.v - other.v, self.dal - other.dal,
                    self.da - other.da, self.dab - other.dab)

    def __neg__(self) -> "Dual":
        return Dual(-self.v, -self.dal, -self.da, -self.dab)

    def __mul__(self, other: "Dual") -> "Dual":
        return Dual(self.v * other.v,
                    self.dal * other.v + self.v * other.dal,
                    self.da * other.v + self.v * other.da,
                    self.dab * other.v + self.v * other.dab)

    def conj(self, conj_scalar: Callable) -> "Dual":
        # conjugation swaps the a and abar directions
        return Dual(conj_scalar(self.v), conj_scalar(self.dal),
                    conj_scalar(self.dab), conj_scalar(self.da))


class JetContext:
    """Rule tables and budget handling bound to a view.

    The view supplies scalar values for catalog ids: `value(id)`,
    `d(id, var)` for first partials, `d2(id, v1, v2)` for the second
    partials the operators need, plus ring constants.
    """

    def __init__(self, view, budget: Optional[int] = None):
        self.view = view
        self.budget = budget

    # -- scalars -----------------------------------------------------------
    def _chk(self, e: JetPoly) -> JetPoly:
        if self.budget is not None and e.term_count() > self.budget:
            raise ReductionOverflow(
                f"jet expression exceeded {self.budget} scalar terms")
        return e

    def value_dual(self, pid: str) -> Dual:
        v = self.view
        return Dual(v.value(pid), v.d(pid, "alpha"), v.d(pid, "a"),
                    v.d(pid, "abar"))

    def deriv_dual(self, pid: str, var: str) -> Dual:
        v = self.view
        return Dual(v.d(pid, var), v.d2(pid, var, "alpha"),
                    v.d2(pid, var, "a"), v.d2(pid, var, "abar"))

    def const_dual(self, q) -> Dual:
        v = self.view
        z = v.zero()
        return Dual(v.const(q), z, z, z)

    def base_dual(self, name: str) -> Dual:
        """Dual of a base variable used as a coefficient (a, abar, base expr)."""
        v = self.view
        z = v.zero()
        one = v.const(1)
        if name == "a":
            return Dual(v.base("a"), z, one, z)
        if name == "abar":
            return Dual(v.base("abar"), z, z, one)
        raise ValueError(name)

    # -- rewrite rules -------------------------------------------------------
    def _rule_xy(self) -> JetPoly:
        v = self.view
        p7 = v.value("p7")
        return JetPoly({_mono(JX): p7, _mono(JY): v.conj(p7),
                        _ZMON: v.value("p8")})

    def _rule_x2(self) -> JetPoly:
        v = self.view
        half = v.const_frac(1, 2)
        return JetPoly({_mono(JX, 2): v.value("p11"),
                        _mono(JX): v.value("p12"),
                        _mono(JY): v.d("p2", "abar") * half,
                        _ZMON: v.value("p13")})

    def _rule_y2(self) -> JetPoly:
        v = self.view
        half = v.const_frac(1, 2)
        return JetPoly({_mono(JY, 2): v.conj(v.value("p11")),
                        _mono(JY): v.conj(v.value("p12")),
                        _mono(JX): v.conj(v.d("p2", "abar")) * half,
                        _ZMON: v.conj(v.value("p13"))})

    # -- reduction -------------------------------------------------------------
    def reduce(self, e: JetPoly, lvl: RewriteLevel,
               c_closure: bool = False, pick: str = "max") -> JetPoly:
        """Normal form w.r.t. the active rules; terminating (see module doc)."""
        v = self.view
        if lvl >= RewriteLevel.CLOSED:
            for m in e.coeffs:
                if m[JC] or m[JCB] or m[JW] or m[JWB]:
                    raise UnsupportedSymbol(
                        "c-jets are eliminated above FIRST_ORDER")
        choose = max if pick == "max" else min
        work = dict(e.coeffs)

        def find(pred):
            cands = [m for m in work if pred(m)]
            return choose(cands) if cands else None

        def apply(mono, strip, replacement: JetPoly):
            val = work.pop(mono)
            rest = list(mono)
            for slot in strip:
                rest[slot] -= 1
            base = JetPoly({tuple(rest): val})
            add = base * replacement
            for m, vv in add.coeffs.items():
                w = work.get(m)
                w = vv if w is None else w + vv
                if _is_zero(w):
                    work.pop(m, None)
                else:
                    work[m] = w

        while True:
            m = find(lambda m: m[JC] and m[JCB])
            if m is not None:
                apply(m, (JC, JCB), JetPoly.const(v.value("kappa")))
                continue
            if c_closure:
                m = find(lambda m: m[JCB] and m[JW])
                if m is not None:
                    apply(m, (JCB, JW),
                          JetPoly({_mono(JY): v.base("a"),
                                   _ZMON: v.value("p4")}))
                    continue
                m = find(lambda m: m[JC] and m[JWB])
                if m is not None:
                    apply(m, (JC, JWB),
                          JetPoly({_mono(JX): v.base("abar"),
                                   _ZMON: v.conj(v.value("p4"))}))
                    continue
            if lvl >= RewriteLevel.SECOND_ORDER:
                m = find(lambda m: m[JX2])
                if m is not None:
                    apply(m, (JX2,), self._rule_x2())
                    continue
                m = find(lambda m: m[JY2])
                if m is not None:
                    apply(m, (JY2,), self._rule_y2())
                    continue
            if lvl >= RewriteLevel.CLOSED:
                m = find(lambda m: m[JX] and m[JY])
                if m is not None:
                    apply(m, (JX, JY), self._rule_xy())
                    self._chk(JetPoly(work))
                    continue
            break
        return self._chk(JetPoly(work))

    # -- the total-derivative operators ----------------------------------------
    # Inputs are JetPolys whose coefficients are Duals; outputs carry plain
    # scalars, reduced at the requested level.

    def d_alpha_total(self, e: JetPoly, lvl: RewriteLevel,
                      beta_image: bool = False) -> JetPoly:
        """Total d/dalpha; with beta_image=True adds +p1*e (the k-correction
        for quantities that are ik*d_beta images, absorbing k_alpha = -p1 k).
        """
        out = JetPoly({})
        slot_image = {
            JX: JetPoly.sym(JX2, self.view.const(1)),
            JY: JetPoly.sym(JY2, self.view.const(1)),
            JC: JetPoly.sym(JW, self.view.const(1)),
            JCB: JetPoly.sym(JWB, self.view.const(1)),
        }
        for m, dual in e.coeffs.items():
            mono = JetPoly({m: self.view.const(1)})
            dcoef = JetPoly({})
            if not _is_zero(dual.dal):
                dcoef = dcoef + JetPoly.const(dual.dal)
            if not _is_zero(dual.da):
                dcoef = dcoef + JetPoly.sym(JX, dual.da)
            if not _is_zero(dual.dab):
                dcoef = dcoef + JetPoly.sym(JY, dual.dab)
            out = out + dcoef * mono
            for slot in range(_NJ):
                exp = m[slot]
                if not exp:
                    continue
                img = slot_image.get(slot)
                if img is None:
                    raise UnsupportedSymbol(
                        f"d_alpha_total cannot raise {JET_NAMES[slot]}")
                rest = list(m)
                rest[slot] = exp - 1
                term = JetPoly({tuple(rest): dual.v * self.view.const(exp)})
                out = out + term * img
        if beta_image:
            p1 = self.view.value("p1")
            out = out + JetPoly({m: d.v * p1 for m, d in e.coeffs.items()})
        return self.reduce(out, lvl)

    def ikaba(self) -> JetPoly:
        """ik a_{beta alpha} as a jet expression with X2 kept formal.

        Reducing it at SECOND_ORDER yields the closed first-order form in
        X, Y (the p11/p14/p15 representation).
        """
        v = self.view
        half = v.const_frac(1, 2)
        coeff_x = v.value("p1") - v.d("p2", "a")
        return JetPoly({
            _mono(JX2): v.const(1),
            _mono(JX): coeff_x,
            _mono(JY): -v.d("p2", "abar"),
            _ZMON: -(v.value("p1") * v.value("p2")) - v.d("p2", "alpha"),
        })

    def d_beta_ik(self, e: JetPoly, lvl: RewriteLevel) -> JetPoly:
        """The composite operator ik * d/dbeta (a derivation).

        Base coefficients map through ik a_beta = X - p2 and
        ik abar_beta = -(Y - conj p2); X and Y map through the
        second-derivative relation (X2 formal) and its conjugate; C, Cbar
        map through the first-order c-relations.
        """
        v = self.view
        ik_ab = JetPoly({_mono(JX): v.const(1), _ZMON: -v.value("p2")})
        ik_abbar = JetPoly({_mono(JY): -v.const(1),
                            _ZMON: v.conj(v.value("p2"))})
        ik_aba = self.ikaba()
        ik_abbar_a = -(ik_aba.conj(v.conj))
        two = v.const(2)
        slot_image = {
            JX: ik_aba,
            JY: ik_abbar_a,
            JC: JetPoly({_mono(JC): two * v.value("p3"),
                         _mono(JW): -v.const(1)}),
            JCB: JetPoly({_mono(JWB): v.const(1),
                          _mono(JCB): -(two * v.conj(v.value("p3")))}),
        }
        out = JetPoly({})
        for m, dual in e.coeffs.items():
            mono = JetPoly({m: v.const(1)})
            dcoef = JetPoly({})
            if not _is_zero(dual.da):
                dcoef = dcoef + JetPoly.const(dual.da) * ik_ab
            if not _is_zero(dual.dab):
                dcoef = dcoef + JetPoly.const(dual.dab) * ik_abbar
            out = out + dcoef * mono
            for slot in range(_NJ):
                exp = m[slot]
                if not exp:
                    continue
                img = slot_image.get(slot)
                if img is None:
                    raise UnsupportedSymbol(
                        f"d_beta_ik cannot handle {JET_NAMES[slot]}")
                rest = list(m)
                rest[slot] = exp - 1
                term = JetPoly({tuple(rest): dual.v * v.const(exp)})
                out = out + term * img
        return self.reduce(out, lvl)


def _mono(slot: int, exp: int = 1) -> tuple:
    m = [0] * _NJ
    m[slot] = exp
    return tuple(m)


def mono(slot: int, exp: int = 1) -> tuple:
    return _mono(slot, exp)
