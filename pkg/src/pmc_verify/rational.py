"""The expression currency: canonical rational functions on the circle.

A TrigRational is a quotient num/den of canonical polynomials in
(s, c, a, abar, rho, b) taken modulo s^2 + c^2 - 1.  The denominator is kept
in *factored form*: a product of monic canonical polynomials interned in a
process-wide registry.  Every denominator produced by the catalog is a
product of a small basis (s, c, a+b, abar+b, a-b, abar-b, -2+3s^2, rho,
|c|^2's numerator) plus whatever new factors arise from explicit division;
keeping the factorization makes additions share denominators, lets the
quotient rule avoid squaring, and gives cheap trial-division cancellation
without ever computing a multivariate gcd.

Equality is decided by subtraction and reduction to zero, which is exact in
the quotient field (the circle ideal is prime, so the ring is a domain).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import PoleAtPoint, ZeroDenominator
from .gaussian import GaussianRational, ONE as GR_ONE
from .poly import (
    A, ABAR, B, C, NVARS, P_ONE, Polynomial, RHO, S, grlex_key,
)


class FactorRegistry:
    """Interning table of monic canonical denominator factors."""

    def __init__(self):
        self._polys: list[Polynomial] = []
        self._index: dict[Polynomial, int] = {}
        self._conj: dict[int, tuple[int, GaussianRational]] = {}
        self._lock = threading.Lock()
        for poly in _basis_factors():
            self.register(poly)

    def register(self, poly: Polynomial) -> tuple[int, GaussianRational]:
        """Intern a non-constant canonical polynomial; returns (fid, lead).

        poly == lead * monic(fid).
        """
        lc = poly.leading_coeff()
        monic = poly if lc == GR_ONE else poly.scale(GR_ONE / lc)
        with self._lock:
            fid = self._index.get(monic)
            if fid is None:
                fid = len(self._polys)
                self._polys.append(monic)
                self._index[monic] = fid
        return fid, lc

    def poly(self, fid: int) -> Polynomial:
        return self._polys[fid]

    def conj_entry(self, fid: int) -> tuple[int, GaussianRational]:
        """fid such that conj(factor) == scalar * factor[fid']; cached."""
        hit = self._conj.get(fid)
        if hit is not None:
            return hit
        cfid, lc = self.register(self._polys[fid].conj())
        with self._lock:
            self._conj[fid] = (cfid, lc)
            self._conj.setdefault(cfid, (fid, lc.conjugate()))
        return cfid, lc

    def decompose(self, poly: Polynomial) -> tuple[GaussianRational, dict]:
        """Split a canonical nonzero polynomial into scalar * prod(factors).

        Known factors are peeled by quotient-ring trial division; any
        non-constant remainder is registered as a new factor.
        """
        if poly.is_zero:
            raise ZeroDenominator("cannot factor the zero polynomial")
        fac: dict = {}
        residual = poly
        if residual.is_const():
            return residual.const_value(), fac
        n_known = len(self._polys)
        for fid in range(n_known):
            f = self._polys[fid]
            while _may_divide(residual, f):
                q = residual.quotient_divide(f)
                if q is None:
                    break
                residual = q
                fac[fid] = fac.get(fid, 0) + 1
                if residual.is_const():
                    break
            if residual.is_const():
                break
        if residual.is_const():
            return residual.const_value(), fac
        fid, lc = self.register(residual)
        fac[fid] = fac.get(fid, 0) + 1
        return lc, fac

    def materialize(self, fac: dict) -> Polynomial:
        out = P_ONE
        for fid in sorted(fac):
            out = (out * self._polys[fid] ** fac[fid]).creduce()
        return out

    def size(self) -> int:
        return len(self._polys)


def _basis_factors():
    """The seeded cancellation basis.

    s, c, a+b, abar+b, a-b, abar-b, -2+3s^2, and the numerator of
    |c|^2 = a*abar + (rho/2)(-2+3 s^2) (rho itself is degree one and already
    covered by the 'rho' entry).
    """
    one = GR_ONE
    s = Polynomial.var(S)
    c = Polynomial.var(C)
    a = Polynomial.var(A)
    abar = Polynomial.var(ABAR)
    rho = Polynomial.var(RHO)
    b = Polynomial.var(B)
    m2p3s2 = Polynomial.const(GaussianRational(-2)) + Polynomial.var(S, 2).scale(
        GaussianRational(3))
    kappa2 = (a * abar).scale(GaussianRational(2)) + rho * m2p3s2  # 2*|c|^2
    return [
        s, c, a + b, abar + b, a - b, abar - b, m2p3s2, rho, kappa2,
    ]


def _may_divide(num: Polynomial, f: Polynomial) -> bool:
    """Cheap necessary conditions before attempting an exact division.

    Only valid for c-free divisors, where products with canonical operands
    need no c-reduction and degrees are additive; c-carrying divisors go
    through the norm trick unconditionally.
    """
    if f.max_cexp() != 0:
        return True
    if num.total_degree() < f.total_degree():
        return False
    for v in (A, ABAR, RHO, B):
        fd = max((m[v] for m in f.terms), default=0)
        if fd and max((m[v] for m in num.terms), default=0) < fd:
            return False
    # leading and trailing monomials of an exact product factor through
    # the grlex order, so both must be divisible
    nl = num.leading_monomial()
    fl = f.leading_monomial()
    if any(nl[i] < fl[i] for i in range(NVARS)):
        return False
    nt = min(num.terms, key=grlex_key)
    ft = min(f.terms, key=grlex_key)
    if any(nt[i] < ft[i] for i in range(NVARS)):
        return False
    return True


REGISTRY = FactorRegistry()

# fids of the seeded basis, in the order of _basis_factors()
FID_S, FID_C, FID_APB, FID_ABPB, FID_AMB, FID_ABMB, FID_M2P3S2, FID_RHO, \
    FID_KAPPA2 = range(9)


class TrigRational:
    """Canonical num / prod(monic factors); immutable after construction."""

    __slots__ = ("num", "_den")

    def __init__(self, num: Polynomial, den_fac: dict):
        self.num = num
        self._den = den_fac

    # -- construction ----------------------------------------------------
    @classmethod
    def make(cls, num: Polynomial, den: Optional[Polynomial] = None) -> "TrigRational":
        num = num.creduce()
        if den is None:
            return cls(num, {})
        den = den.creduce()
        if den.is_zero:
            raise ZeroDenominator("denominator is 0 modulo s^2+c^2-1")
        if num.is_zero:
            return ZERO
        scalar, fac = REGISTRY.decompose(den)
        num = num.scale(GR_ONE / scalar)
        num, fac = _cancel(num, fac)
        return cls(num, fac)

    @classmethod
    def from_const(cls, value) -> "TrigRational":
        return cls(Polynomial.const(value), {})

    @classmethod
    def var(cls, idx: int) -> "TrigRational":
        return cls(Polynomial.var(idx), {})

    # -- structural accessors ----------------------------------------------
    @property
    def den(self) -> Polynomial:
        """The denominator as a (monic) polynomial."""
        return REGISTRY.materialize(self._den)

    @property
    def den_factors(self) -> dict:
        return dict(self._den)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def nterms(self) -> int:
        return len(self.num.terms) + sum(
            len(REGISTRY.poly(f).terms) * e for f, e in self._den.items())

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "TrigRational") -> "TrigRational":
        if self.num.is_zero:
            return other
        if other.num.is_zero:
            return self
        if self._den == other._den:
            num = self.num + other.num
            if num.is_zero:
                return ZERO
            return _renormalize(num, dict(self._den))
        den: dict = dict(self._den)
        for fid, e in other._den.items():
            den[fid] = max(den.get(fid, 0), e)
        c1 = {f: den[f] - self._den.get(f, 0) for f in den if den[f] > self._den.get(f, 0)}
        c2 = {f: den[f] - other._den.get(f, 0) for f in den if den[f] > other._den.get(f, 0)}
        n1 = self.num if not c1 else (self.num * REGISTRY.materialize(c1)).creduce()
        n2 = other.num if not c2 else (other.num * REGISTRY.materialize(c2)).creduce()
        num = n1 + n2
        if num.is_zero:
            return ZERO
        return _renormalize(num, den)

    def __sub__(self, other: "TrigRational") -> "TrigRational":
        return self + (-other)

    def __neg__(self) -> "TrigRational":
        return TrigRational(-self.num, self._den)

    def __mul__(self, other: "TrigRational") -> "TrigRational":
        if self.num.is_zero or other.num.is_zero:
            return ZERO
        n1, d2 = _cross_cancel(self.num, dict(other._den))
        n2, d1 = _cross_cancel(other.num, dict(self._den))
        num = (n1 * n2).creduce()
        if num.is_zero:
            return ZERO
        den = d1
        for fid, e in d2.items():
            den[fid] = den.get(fid, 0) + e
        return _renormalize(num, den)

    def scale(self, coeff) -> "TrigRational":
        if not isinstance(coeff, GaussianRational):
            coeff = GaussianRational(coeff)
        if coeff.is_zero():
            return ZERO
        return TrigRational(self.num.scale(coeff), self._den)

    def reciprocal(self) -> "TrigRational":
        if self.num.is_zero:
            raise ZeroDenominator("reciprocal of the zero expression")
        scalar, fac = REGISTRY.decompose(self.num)
        num = REGISTRY.materialize(self._den).scale(GR_ONE / scalar)
        num, fac = _cancel(num, fac)
        return TrigRational(num, fac)

    def __truediv__(self, other: "TrigRational") -> "TrigRational":
        return self * other.reciprocal()

    def __pow__(self, n: int) -> "TrigRational":
        if n < 0:
            return self.reciprocal() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- kernel operations ---------------------------------------------------
    def differentiate(self, v: str) -> "TrigRational":
        """Partial derivative in alpha, a or abar (Wirtinger convention)."""
        if v == "alpha":
            dnum = self.num.diff_alpha()
            dfac = lambda f: f.diff_alpha()
        elif v == "a":
            dnum = self.num.diff(A)
            dfac = lambda f: f.diff(A)
        elif v == "abar":
            dnum = self.num.diff(ABAR)
            dfac = lambda f: f.diff(ABAR)
        else:
            raise ValueError(f"unknown differentiation variable {v!r}")
        if not self._den:
            return TrigRational(dnum, {})
        fids = sorted(self._den)
        fpolys = [REGISTRY.poly(f) for f in fids]
        # radical products: R = prod f_i ; R_i = R / f_i  via prefix/suffix
        k = len(fids)
        prefix = [P_ONE] * (k + 1)
        for i in range(k):
            prefix[i + 1] = (prefix[i] * fpolys[i]).creduce()
        suffix = [P_ONE] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix[i] = (suffix[i + 1] * fpolys[i]).creduce()
        R = prefix[k]
        num_new = (dnum * R).creduce()
        for i, fid in enumerate(fids):
            e = self._den[fid]
            fd = dfac(fpolys[i])
            if fd.is_zero:
                continue
            R_i = (prefix[i] * suffix[i + 1]).creduce()
            term = (self.num * fd).creduce()
            term = (term * R_i).creduce()
            num_new = num_new - term.scale(GaussianRational(e))
        if num_new.is_zero:
            return ZERO
        den_new = {fid: e + 1 for fid, e in self._den.items()}
        return _renormalize(num_new, den_new)

    def conjugate(self) -> "TrigRational":
        num = self.num.conj()
        if not self._den:
            return TrigRational(num, {})
        den: dict = {}
        scal = GR_ONE
        for fid, e in self._den.items():
            cfid, lc = REGISTRY.conj_entry(fid)
            den[cfid] = den.get(cfid, 0) + e
            if lc != GR_ONE:
                scal = scal * lc ** e
        if scal != GR_ONE:
            num = num.scale(GR_ONE / scal)
        return TrigRational(num, den)

    def swap_a(self) -> "TrigRational":
        """The bar-swap a <-> abar with coefficients untouched."""
        num = self.num.swap_a()
        den: dict = {}
        scal = GR_ONE
        for fid, e in self._den.items():
            sfid, lc = REGISTRY.register(REGISTRY.poly(fid).swap_a())
            den[sfid] = den.get(sfid, 0) + e
            if lc != GR_ONE:
                scal = scal * lc ** e
        if scal != GR_ONE:
            num = num.scale(GR_ONE / scal)
        return TrigRational(num, den)

    def eval_exact(self, pt: "SamplePoint") -> GaussianRational:
        vals = pt.values()
        dv = GR_ONE
        for fid, e in self._den.items():
            fv = REGISTRY.poly(fid).eval(vals)
            if fv.is_zero():
                raise PoleAtPoint(f"denominator factor vanished at {pt}")
            dv = dv * fv ** e
        return self.num.eval(vals) / dv

    # -- comparisons ---------------------------------------------------------
    def equals(self, other: "TrigRational") -> bool:
        return (self - other).num.is_zero

    def same(self, other: "TrigRational") -> bool:
        """Structural identity (same canonical num and factored den)."""
        return self.num == other.num and self._den == other._den

    def __repr__(self) -> str:
        return f"TrigRational<{len(self.num.terms)}n/{len(self._den)}f>"


def _cancel(num: Polynomial, fac: dict) -> tuple[Polynomial, dict]:
    for fid in sorted(fac):
        e = fac[fid]
        f = REGISTRY.poly(fid)
        while e > 0 and _may_divide(num, f):
            q = num.quotient_divide(f)
            if q is None:
                break
            num = q
            e -= 1
        if e == 0:
            del fac[fid]
        else:
            fac[fid] = e
    return num, fac


def _cross_cancel(num: Polynomial, fac: dict) -> tuple[Polynomial, dict]:
    return _cancel(num, fac)


def _renormalize(num: Polynomial, fac: dict) -> TrigRational:
    num, fac = _cancel(num, fac)
    return TrigRational(num, fac)


# -- module-level operation surface --------------------------------------------

def normalize(e: TrigRational) -> TrigRational:
    """Idempotent renormalization; construction already canonicalizes."""
    return _renormalize(e.num, dict(e._den))


def equals(e1: TrigRational, e2: TrigRational) -> bool:
    return e1.equals(e2)


def differentiate(e: TrigRational, v: str) -> TrigRational:
    return e.differentiate(v)


def conjugate(e: TrigRational) -> TrigRational:
    return e.conjugate()


def eval_exact(e: TrigRational, pt: "SamplePoint") -> GaussianRational:
    return e.eval_exact(pt)


ZERO = TrigRational(Polynomial.zero(), {})
ONE = TrigRational(P_ONE, {})


# -- sample points ------------------------------------------------------------

@dataclass(frozen=True)
class SamplePoint:
    """Exact rational point on the circle with the reality constraint.

    s, c come from the Pythagorean parametrization of t, so s^2+c^2 = 1
    holds exactly; abar is forced to conj(a).
    """

    t: Fraction
    a_re: Fraction
    a_im: Fraction
    rho: Fraction
    b: Fraction

    def __post_init__(self):
        if self.t == 0:
            raise ValueError("t = 0 gives sin(alpha) = 0")
        if self.rho == 0:
            raise ValueError("rho must be nonzero")
        if self.b <= 0:
            raise ValueError("b must be positive")
        if self.a_im == 0 and self.a_re in (-self.b, self.b):
            raise ValueError("a = -b and a = b are excluded loci")

    @property
    def s(self) -> Fraction:
        return 2 * self.t / (1 + self.t * self.t)

    @property
    def c(self) -> Fraction:
        return (1 - self.t * self.t) / (1 + self.t * self.t)

    def values(self) -> tuple:
        a = GaussianRational(self.a_re, self.a_im)
        return (
            GaussianRational(self.s),
            GaussianRational(self.c),
            a,
            a.conjugate(),
            GaussianRational(self.rho),
            GaussianRational(self.b),
        )


_T_POOL = [Fraction(p, q) for p, q in [
    (1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5), (4, 5),
    (1, 5), (5, 2), (5, 3), (1, 6), (5, 6), (7, 2), (2, 7), (3, 7),
]]
_A_RE_POOL = [Fraction(p, q) for p, q in [
    (0, 1), (1, 2), (-1, 3), (2, 1), (-3, 4), (1, 1), (-2, 1), (1, 5),
    (3, 1), (-1, 2), (2, 3), (-5, 2), (4, 3), (-1, 6), (5, 4), (-3, 1),
]]
_A_IM_POOL = [Fraction(p, q) for p, q in [
    (1, 2), (-1, 3), (1, 1), (2, 3), (-2, 1), (1, 4), (3, 1), (-1, 1),
    (5, 2), (-1, 5), (4, 3), (-3, 2), (2, 1), (-2, 5), (1, 6), (-5, 3),
]]
_RHO_POOL = [Fraction(p, q) for p, q in [
    (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (1, 3),
    (-3, 1), (2, 3), (-2, 3), (5, 2),
]]
_B_POOL = [Fraction(p, q) for p, q in [
    (1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (3, 2), (2, 3), (4, 1),
    (1, 4), (5, 2),
]]

_M64 = (1 << 64) - 1


def _mix(x: int) -> int:
    """splitmix64 finalizer; deterministic and platform independent."""
    x &= _M64
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 & _M64
    x = (x ^ (x >> 27)) * 0x94D049BB133111EB & _M64
    return x ^ (x >> 31)


def sample_point(seed: int) -> SamplePoint:
    """Deterministic admissible sample point; seed 0 takes the first t."""
    t = _T_POOL[seed % len(_T_POOL)]
    a_re = _A_RE_POOL[_mix(seed * 4 + 1) % len(_A_RE_POOL)]
    a_im = _A_IM_POOL[_mix(seed * 4 + 2) % len(_A_IM_POOL)]
    rho = _RHO_POOL[_mix(seed * 4 + 3) % len(_RHO_POOL)]
    b = _B_POOL[_mix(seed * 4 + 4) % len(_B_POOL)]
    # a_im pools exclude 0, so a is never real: a != +-b and abar != a hold.
    return SamplePoint(t=t, a_re=a_re, a_im=a_im, rho=rho, b=b)


@dataclass(frozen=True)
class Verdict:
    """Outcome of randomized zero testing."""

    probably_zero: bool
    witness_point: Optional[SamplePoint]
    witness_value: Optional[GaussianRational]
    samples: int
    skipped_poles: int


def is_zero_sampled(e: TrigRational, n: int, seed: int) -> Verdict:
    """Evaluate at n admissible points; exact zero everywhere or a witness."""
    if n < 1:
        raise ValueError("need at least one sample")
    produced = 0
    k = 0
    skipped = 0
    limit = 50 * n + 100
    while produced < n:
        if k >= limit:
            raise RuntimeError("sampling starved by poles; widen the pools")
        pt = sample_point(seed + k)
        k += 1
        try:
            v = e.eval_exact(pt)
        except PoleAtPoint:
            skipped += 1
            continue
        if not v.is_zero():
            return Verdict(False, pt, v, produced + 1, skipped)
        produced += 1
    return Verdict(True, None, None, produced, skipped)
