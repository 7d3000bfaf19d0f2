"""Exact evaluation at the two special angles.

sin and cos at the quarter- and third-pi angles are irrational, so the
engine evaluates there by working in the quadratic extension Q(i)[sqrt(d)]:
a value is u + v*sqrt(d) with Gaussian-rational components and d in {2, 3}.
Monomials in s, c map to extension scalars

    pi/4:  s = c = sqrt(2)/2       ->  s^j c^k = (1/2)^((j+k)/2) (sqrt2/2 odd)
    pi/3:  s = sqrt(3)/2, c = 1/2

rho and b may stay symbolic, in which case evaluation returns a polynomial
in (rho, b) over the extension; that is what makes the headline identity
F(pi/4, 0, 0) = 15 rho/(8 b) checkable exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple

from .errors import PoleAtPoint
from .gaussian import GaussianRational, ONE as GR_ONE, ZERO as GR_ZERO
from .poly import A, ABAR, B, C, Polynomial, RHO, S
from .rational import REGISTRY, TrigRational

ANGLES = ("pi/4", "pi/3")


class SqrtExt:
    """u + v*sqrt(d) with exact Gaussian-rational components."""

    __slots__ = ("u", "v", "d")

    def __init__(self, u: GaussianRational, v: GaussianRational, d: int):
        self.u = u
        self.v = v
        self.d = d

    @classmethod
    def of(cls, value, d: int) -> "SqrtExt":
        if not isinstance(value, GaussianRational):
            value = GaussianRational(value)
        return cls(value, GR_ZERO, d)

    def is_zero(self) -> bool:
        return self.u.is_zero() and self.v.is_zero()

    def is_real(self) -> bool:
        return self.u.is_real() and self.v.is_real()

    def __add__(self, o: "SqrtExt") -> "SqrtExt":
        return SqrtExt(self.u + o.u, self.v + o.v, self.d)

    def __sub__(self, o: "SqrtExt") -> "SqrtExt":
        return SqrtExt(self.u - o.u, self.v - o.v, self.d)

    def __neg__(self) -> "SqrtExt":
        return SqrtExt(-self.u, -self.v, self.d)

    def __mul__(self, o: "SqrtExt") -> "SqrtExt":
        dd = GaussianRational(self.d)
        return SqrtExt(self.u * o.u + dd * (self.v * o.v),
                       self.u * o.v + self.v * o.u, self.d)

    def __truediv__(self, o: "SqrtExt") -> "SqrtExt":
        if o.is_zero():
            raise ZeroDivisionError("division by zero extension element")
        dd = GaussianRational(self.d)
        norm = o.u * o.u - dd * (o.v * o.v)
        # norm != 0: sqrt(d) is irrational over Q(i) for d in {2, 3}
        nu = (self.u * o.u - dd * (self.v * o.v)) / norm
        nv = (self.v * o.u - self.u * o.v) / norm
        return SqrtExt(nu, nv, self.d)

    def __pow__(self, n: int) -> "SqrtExt":
        out = SqrtExt.of(GR_ONE, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, o) -> bool:
        if not isinstance(o, SqrtExt):
            return NotImplemented
        return self.d == o.d and self.u == o.u and self.v == o.v

    def to_mpc(self, mp):
        """Convert to an mpmath complex at the current precision."""
        root = mp.sqrt(self.d)

        def part(q):
            return mp.mpf(q.numerator) / mp.mpf(q.denominator)

        return mp.mpc(part(self.u.re) + part(self.v.re) * root,
                      part(self.u.im) + part(self.v.im) * root)

    def __repr__(self) -> str:
        return f"({self.u.re}+{self.u.im}i) + ({self.v.re}+{self.v.im}i)*sqrt{self.d}"


def _sc_scalar(angle: str, j: int, k: int) -> SqrtExt:
    """The exact value of s^j c^k at the angle."""
    if angle == "pi/4":
        n = j + k
        if n % 2 == 0:
            return SqrtExt.of(GaussianRational(Fraction(1, 2 ** (n // 2))), 2)
        # odd power keeps one factor sqrt(2)/2
        return SqrtExt(GR_ZERO,
                       GaussianRational(Fraction(1, 2 ** ((n + 1) // 2))), 2)
    if angle == "pi/3":
        # s^j = 3^(j//2)/2^j * sqrt(3)^(j%2), c^k = 2^-k
        base = Fraction(3 ** (j // 2), 2 ** (j + k))
        if j % 2 == 0:
            return SqrtExt.of(GaussianRational(base), 3)
        return SqrtExt(GR_ZERO, GaussianRational(base), 3)
    raise ValueError(f"unknown special angle {angle!r}")


RBPoly = Dict[Tuple[int, int], SqrtExt]  # (rho-exp, b-exp) -> coefficient


def _substitute(poly: Polynomial, angle: str, a_val: GaussianRational,
                abar_val: GaussianRational, rho: Optional[Fraction],
                b: Optional[Fraction]) -> RBPoly:
    d = 2 if angle == "pi/4" else 3
    out: RBPoly = {}
    for mono, coeff in poly.terms.items():
        val = _sc_scalar(angle, mono[S], mono[C])
        g = coeff
        if mono[A]:
            g = g * a_val ** mono[A]
        if mono[ABAR]:
            g = g * abar_val ** mono[ABAR]
        key = [mono[RHO], mono[B]]
        if rho is not None and mono[RHO]:
            g = g * GaussianRational(rho) ** mono[RHO]
            key[0] = 0
        if b is not None and mono[B]:
            g = g * GaussianRational(b) ** mono[B]
            key[1] = 0
        term = val * SqrtExt.of(g, d)
        k = tuple(key)
        w = out.get(k)
        w = term if w is None else w + term
        if w.is_zero():
            out.pop(k, None)
        else:
            out[k] = w
    return out


def special_partial(e: TrigRational, angle: str,
                    a_val: GaussianRational = GR_ZERO,
                    abar_val: Optional[GaussianRational] = None,
                    rho: Optional[Fraction] = None,
                    b: Optional[Fraction] = None) -> Tuple[RBPoly, RBPoly]:
    """(num, den) as polynomials in whichever of rho, b stay symbolic."""
    if abar_val is None:
        abar_val = a_val.conjugate()
    num = _substitute(e.num, angle, a_val, abar_val, rho, b)
    den: RBPoly = {(0, 0): SqrtExt.of(GR_ONE, 2 if angle == "pi/4" else 3)}
    for fid, exp in e.den_factors.items():
        f = _substitute(REGISTRY.poly(fid), angle, a_val, abar_val, rho, b)
        for _ in range(exp):
            den = _rb_mul(den, f)
    return num, den


def _rb_mul(p1: RBPoly, p2: RBPoly) -> RBPoly:
    out: RBPoly = {}
    for k1, v1 in p1.items():
        for k2, v2 in p2.items():
            k = (k1[0] + k2[0], k1[1] + k2[1])
            t = v1 * v2
            w = out.get(k)
            w = t if w is None else w + t
            if w.is_zero():
                out.pop(k, None)
            else:
                out[k] = w
    return out


def rb_scale_mono(p: RBPoly, rho_exp: int, b_exp: int, scalar: SqrtExt) -> RBPoly:
    out: RBPoly = {}
    for k, v in p.items():
        t = v * scalar
        if not t.is_zero():
            out[(k[0] + rho_exp, k[1] + b_exp)] = t
    return out


def rb_sub(p1: RBPoly, p2: RBPoly) -> RBPoly:
    out = dict(p1)
    for k, v in p2.items():
        w = out.get(k)
        w = -v if w is None else w - v
        if w.is_zero():
            out.pop(k, None)
        else:
            out[k] = w
    return out


def special_value(e: TrigRational, angle: str,
                  a_val: GaussianRational = GR_ZERO,
                  rho: Fraction = Fraction(1), b: Fraction = Fraction(1),
                  abar_val: Optional[GaussianRational] = None) -> SqrtExt:
    """Exact value at the special angle with everything assigned."""
    num, den = special_partial(e, angle, a_val, abar_val, rho, b)
    nv = num.get((0, 0))
    dv = den.get((0, 0))
    if num and set(num) != {(0, 0)} or den and set(den) != {(0, 0)}:
        raise ValueError("unassigned rho or b in special_value")
    d = 2 if angle == "pi/4" else 3
    if dv is None or dv.is_zero():
        raise PoleAtPoint(f"denominator vanishes at {angle}")
    if nv is None:
        return SqrtExt.of(GR_ZERO, d)
    return nv / dv


def f_quarter_identity() -> bool:
    """Exact check that F at the quarter angle with a = 0 equals
    15 rho / (8 b) as an identity in (rho, b)."""
    from .catalog import CATALOG

    num, den = special_partial(CATALOG.expr("F"), "pi/4")
    # num * 8 b == den * 15 rho
    lhs = rb_scale_mono(num, 0, 1, SqrtExt.of(GaussianRational(8), 2))
    rhs = rb_scale_mono(den, 1, 0, SqrtExt.of(GaussianRational(15), 2))
    return not rb_sub(lhs, rhs)
