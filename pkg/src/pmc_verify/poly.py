"""Sparse multivariate polynomials over the Gaussian rationals.

Variables in fixed order: s (= sin alpha), c (= cos alpha), a, abar, rho, b.
A monomial is a 6-tuple of exponents.  A polynomial is *canonical* when every
monomial carries a c-exponent of at most 1; `creduce` enforces this by
rewriting c^2 -> 1 - s^2, which is exactly reduction modulo the circle ideal
(s^2 + c^2 - 1).

The monomial order is graded lexicographic with s < c < a < abar < rho < b:
higher total degree wins, ties compare exponents from b downward.  The order
is multiplicative, so the leading term of a product is the product of the
leading terms; this is what makes exact trial division sound.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Optional

from .gaussian import GaussianRational, ONE as GR_ONE, ZERO as GR_ZERO

NVARS = 6
S, C, A, ABAR, RHO, B = range(NVARS)
VAR_NAMES = ("s", "c", "a", "abar", "rho", "b")

Monomial = tuple  # 6-tuple of non-negative ints

_ZMON = (0,) * NVARS


class BudgetExceeded(Exception):
    """An intermediate polynomial outgrew the configured term budget."""


# Module-level budget shared by all polynomial products.  None disables the
# check; the verification suite installs its own value.
TERM_BUDGET: Optional[int] = 5_000_000


def set_term_budget(n: Optional[int]) -> None:
    global TERM_BUDGET
    TERM_BUDGET = n


def grlex_key(mono: Monomial):
    return (sum(mono), mono[::-1])


class Polynomial:
    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = terms

    # -- constructors --------------------------------------------------
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls({})

    @classmethod
    def const(cls, coeff) -> "Polynomial":
        if not isinstance(coeff, GaussianRational):
            coeff = GaussianRational(coeff)
        if coeff.is_zero():
            return cls({})
        return cls({_ZMON: coeff})

    @classmethod
    def var(cls, idx: int, exp: int = 1) -> "Polynomial":
        mono = [0] * NVARS
        mono[idx] = exp
        return cls({tuple(mono): GR_ONE})

    # -- predicates ------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZMON in self.terms)

    def const_value(self) -> GaussianRational:
        return self.terms.get(_ZMON, GR_ZERO)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((m, c.re, c.im) for m, c in self.terms.items()))

    def max_cexp(self) -> int:
        return max((m[C] for m in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, co in other.terms.items():
            w = out.get(m)
            if w is None:
                out[m] = co
            else:
                w = w + co
                if w.is_zero():
                    del out[m]
                else:
                    out[m] = w
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, co in other.terms.items():
            w = out.get(m)
            if w is None:
                out[m] = -co
            else:
                w = w - co
                if w.is_zero():
                    del out[m]
                else:
                    out[m] = w
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -co for m, co in self.terms.items()})

    def scale(self, coeff: GaussianRational) -> "Polynomial":
        if coeff.is_zero():
            return Polynomial({})
        return Polynomial({m: co * coeff for m, co in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        t1, t2 = self.terms, other.terms
        if not t1 or not t2:
            return Polynomial({})
        if len(t1) > len(t2):
            t1, t2 = t2, t1
        budget = TERM_BUDGET
        out: dict = {}
        for m1, c1 in t1.items():
            for m2, c2 in t2.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2],
                     m1[3] + m2[3], m1[4] + m2[4], m1[5] + m2[5])
                w = out.get(m)
                if w is None:
                    out[m] = c1 * c2
                else:
                    w = w + c1 * c2
                    if w.is_zero():
                        del out[m]
                    else:
                        out[m] = w
            if budget is not None and len(out) > budget:
                raise BudgetExceeded(f"product exceeded {budget} terms")
        return Polynomial(out)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial({_ZMON: GR_ONE})
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- quotient-ring canonical form -----------------------------------
    def creduce(self) -> "Polynomial":
        """Rewrite c^k (k >= 2) via c^2 = 1 - s^2 until every c-exponent <= 1."""
        if all(m[C] <= 1 for m in self.terms):
            return self
        out: dict = {}
        for m, co in self.terms.items():
            k = m[C]
            if k <= 1:
                w = out.get(m)
                w = co if w is None else w + co
                if w.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = w
                continue
            # c^k = c^(k%2) * (1-s^2)^(k//2); expand the binomial exactly
            half, rem = divmod(k, 2)
            base = list(m)
            base[C] = rem
            binom = 1
            for j in range(half + 1):
                if j:
                    binom = binom * (half - j + 1) // j
                mono = list(base)
                mono[S] += 2 * j
                mono = tuple(mono)
                sign = -1 if j % 2 else 1
                add = co * GaussianRational(Fraction(sign * binom))
                w = out.get(mono)
                w = add if w is None else w + add
                if w.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = w
        return Polynomial(out)

    # -- calculus ---------------------------------------------------------
    def diff(self, idx: int) -> "Polynomial":
        """Plain partial derivative in variable idx (a, abar, rho, b)."""
        out: dict = {}
        for m, co in self.terms.items():
            e = m[idx]
            if not e:
                continue
            mm = list(m)
            mm[idx] = e - 1
            mono = tuple(mm)
            add = co * GaussianRational(Fraction(e))
            w = out.get(mono)
            w = add if w is None else w + add
            if w.is_zero():
                out.pop(mono, None)
            else:
                out[mono] = w
        return Polynomial(out)

    def diff_alpha(self) -> "Polynomial":
        """d/dalpha with ds/dalpha = c, dc/dalpha = -s, then c-reduced."""
        out = Polynomial({})
        for m, co in self.terms.items():
            j, k = m[S], m[C]
            if j:
                mm = list(m)
                mm[S] = j - 1
                mm[C] = k + 1
                out = out + Polynomial({tuple(mm): co * GaussianRational(Fraction(j))})
            if k:
                mm = list(m)
                mm[S] = j + 1
                mm[C] = k - 1
                out = out + Polynomial({tuple(mm): co * GaussianRational(Fraction(-k))})
        return out.creduce()

    # -- conjugation -------------------------------------------------------
    def conj(self) -> "Polynomial":
        """Swap a <-> abar and conjugate every coefficient."""
        return Polynomial({(m[0], m[1], m[3], m[2], m[4], m[5]): co.conjugate()
                           for m, co in self.terms.items()})

    def swap_a(self) -> "Polynomial":
        """Swap a <-> abar without touching coefficients (the bar-swap rule)."""
        return Polynomial({(m[0], m[1], m[3], m[2], m[4], m[5]): co
                           for m, co in self.terms.items()})

    # -- leading data -------------------------------------------------------
    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=grlex_key)

    def leading_coeff(self) -> GaussianRational:
        return self.terms[self.leading_monomial()]

    # -- evaluation ---------------------------------------------------------
    def eval(self, vals) -> GaussianRational:
        """Exact evaluation; vals is a 6-sequence of GaussianRationals."""
        pows = [{} for _ in range(NVARS)]
        acc = GR_ZERO
        for m in sorted(self.terms, key=grlex_key):
            co = self.terms[m]
            t = co
            for i, e in enumerate(m):
                if not e:
                    continue
                p = pows[i].get(e)
                if p is None:
                    p = vals[i] ** e
                    pows[i][e] = p
                t = t * p
            acc = acc + t
        return acc

    def eval_generic(self, vals, coerce):
        """Evaluate with any commutative value type (mpmath, sqrt extensions).

        `vals` is a 6-sequence in the target ring; `coerce` maps a
        GaussianRational coefficient into it.  Term order is fixed, so
        floating evaluation is deterministic.
        """
        pows = [{} for _ in range(NVARS)]
        acc = coerce(GR_ZERO)
        for m in sorted(self.terms, key=grlex_key):
            t = coerce(self.terms[m])
            for i, e in enumerate(m):
                if not e:
                    continue
                p = pows[i].get(e)
                if p is None:
                    p = vals[i] ** e
                    pows[i][e] = p
                t = t * p
            acc = acc + t
        return acc

    # -- division -----------------------------------------------------------
    def try_divide(self, d: "Polynomial") -> Optional["Polynomial"]:
        """Return q with self == q*d in the plain ring, or None."""
        if d.is_zero:
            return None
        if self.is_zero:
            return Polynomial({})
        dl = d.leading_monomial()
        dlc = d.terms[dl]
        rem = dict(self.terms)
        q: dict = {}
        dterms = d.terms
        while rem:
            lm = max(rem, key=grlex_key)
            qm = (lm[0] - dl[0], lm[1] - dl[1], lm[2] - dl[2],
                  lm[3] - dl[3], lm[4] - dl[4], lm[5] - dl[5])
            if qm[0] < 0 or qm[1] < 0 or qm[2] < 0 or qm[3] < 0 or qm[4] < 0 or qm[5] < 0:
                return None
            qc = rem[lm] / dlc
            q[qm] = qc
            for m, co in dterms.items():
                mm = (m[0] + qm[0], m[1] + qm[1], m[2] + qm[2],
                      m[3] + qm[3], m[4] + qm[4], m[5] + qm[5])
                w = rem.get(mm)
                w = -(qc * co) if w is None else w - qc * co
                if w.is_zero():
                    rem.pop(mm, None)
                else:
                    rem[mm] = w
        return Polynomial(q)

    def _c_split(self):
        """Split canonical self into (u, v) with self = u + c*v, both c-free."""
        u: dict = {}
        v: dict = {}
        for m, co in self.terms.items():
            if m[C] == 0:
                u[m] = co
            else:
                mm = list(m)
                mm[C] = 0
                v[tuple(mm)] = co
        return Polynomial(u), Polynomial(v)

    def quotient_divide(self, d: "Polynomial") -> Optional["Polynomial"]:
        """Exact division valid modulo s^2 + c^2 - 1.

        Both operands must be canonical.  For a c-free divisor this divides
        the two c-strata independently; otherwise it multiplies by the
        c-conjugate and divides by the c-free norm, which decides
        divisibility in the quotient ring without false negatives.
        """
        if d.is_zero:
            return None
        if self.is_zero:
            return Polynomial({})
        if d.max_cexp() == 0:
            u, v = self._c_split()
            qu = u.try_divide(d)
            if qu is None:
                return None
            if v.is_zero:
                return qu
            qv = v.try_divide(d)
            if qv is None:
                return None
            cpoly = Polynomial.var(C)
            return qu + cpoly * qv
        du, dv = d._c_split()
        # norm = du^2 - (1 - s^2) dv^2  (c-free)
        s2 = Polynomial.var(S, 2)
        one = Polynomial.const(GR_ONE)
        norm = du * du - (one - s2) * dv * dv
        cconj = du - Polynomial.var(C) * dv
        cand = (self * cconj).creduce()
        return cand.quotient_divide(norm)

    # -- misc -----------------------------------------------------------
    def iter_sorted(self) -> Iterator:
        for m in sorted(self.terms, key=grlex_key, reverse=True):
            yield m, self.terms[m]

    def __repr__(self) -> str:
        return f"Polynomial<{len(self.terms)} terms>"


P_ZERO = Polynomial({})
P_ONE = Polynomial({_ZMON: GR_ONE})
