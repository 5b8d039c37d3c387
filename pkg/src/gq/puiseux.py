"""Single-branch asymptotic germs: finite sums ``c * e**r`` with rational ``r``.

A germ carries an optional precision ``N``: the true value is only known
modulo ``O(e**N)``.  Coefficients are :class:`fractions.Fraction` unless an
inexact operation (a square root of a non-square) produced them, in which case
they are plain ``float`` and the germ is tagged approximate.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Union

from gq.config import get_order
from gq.errors import (
    IndeterminateAtPrecision,
    InexactDecision,
    NotInvertible,
    NotQPositiveLeading,
)

Coeff = Union[Fraction, float]
Term = tuple[Fraction, Coeff]


def _coeff(c) -> Coeff:
    if isinstance(c, float):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _exact_sqrt(q: Fraction) -> Optional[Fraction]:
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _fmt_exp(r: Fraction) -> str:
    if r.denominator == 1 and r >= 0:
        return str(r.numerator)
    return f"({r})"


class PuiseuxGerm:
    """A truncated Puiseux sum in the asymptotic parameter ``e``.

    >>> e = PuiseuxGerm.monomial(1)
    >>> str((1 + e) * (1 - e))
    '1 - e^2'
    >>> str(PuiseuxGerm.one().with_precision(2) * e)
    'e^1 + O(e^3)'
    """

    __slots__ = ("terms", "precision")

    def __init__(self, terms: Iterable = (), precision=None):
        acc: dict[Fraction, Coeff] = {}
        for r, c in terms:
            r = Fraction(r)
            c = _coeff(c)
            acc[r] = acc[r] + c if r in acc else c
        prec = None if precision is None else Fraction(precision)
        self.terms: tuple[Term, ...] = _clean(acc, prec)
        self.precision: Optional[Fraction] = prec

    @classmethod
    def _from_lattice(cls, acc: dict, d: int, prec) -> PuiseuxGerm:
        # keys are exponents times d, all already below prec
        g = object.__new__(cls)
        g.terms = tuple((Fraction(n, d), acc[n]) for n in sorted(acc) if acc[n] != 0)
        g.precision = prec
        return g

    @classmethod
    def _raw(cls, acc: dict, prec) -> PuiseuxGerm:
        # internal fast path: keys are Fractions, values already coefficients
        g = object.__new__(cls)
        g.terms = _clean(acc, prec)
        g.precision = prec
        return g

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> PuiseuxGerm:
        return cls()

    @classmethod
    def one(cls) -> PuiseuxGerm:
        return cls([(0, 1)])

    @classmethod
    def const(cls, c) -> PuiseuxGerm:
        return cls([(0, c)])

    @classmethod
    def monomial(cls, r, c=1) -> PuiseuxGerm:
        return cls([(r, c)])

    @classmethod
    def big_o(cls, n) -> PuiseuxGerm:
        """The unknown germ ``O(e**n)``."""
        return cls((), n)

    @classmethod
    def coerce(cls, value) -> PuiseuxGerm:
        if isinstance(value, PuiseuxGerm):
            return value
        return cls.const(value)

    def with_precision(self, n) -> PuiseuxGerm:
        n = Fraction(n)
        if self.precision is not None:
            n = min(n, self.precision)
        return PuiseuxGerm._raw(dict(self.terms), n)

    # -- inspection -----------------------------------------------------

    @property
    def is_approx(self) -> bool:
        return any(isinstance(c, float) for _, c in self.terms)

    @property
    def is_exact(self) -> bool:
        """No O-term and no approximate coefficients."""
        return self.precision is None and not self.is_approx

    def is_zero(self) -> bool:
        """True for the exact zero germ; raises when zero only up to O(e**N)."""
        if self.terms:
            return False
        if self.precision is not None:
            raise IndeterminateAtPrecision(f"germ {self} has no known terms below e^{self.precision}")
        return True

    def leading(self) -> Optional[Term]:
        """``(exponent, coefficient)`` of the smallest-exponent term, ``None`` for exact zero."""
        if self.terms:
            return self.terms[0]
        if self.precision is not None:
            raise IndeterminateAtPrecision(f"leading term of {self} is undetermined")
        return None

    def valuation(self):
        lead = self.leading()
        return math.inf if lead is None else lead[0]

    def order(self):
        """Smallest exponent at which this germ may be nonzero (``inf`` for exact 0).

        Used as the residual order in certificates: ``(f*g - 1).order() > N``.
        """
        candidates = []
        if self.terms:
            candidates.append(self.terms[0][0])
        if self.precision is not None:
            candidates.append(self.precision)
        return min(candidates) if candidates else math.inf

    def key(self):
        """Structural identity, safe for approximate germs (floats stay tagged)."""
        return (
            tuple((r, isinstance(c, float), c) for r, c in self.terms),
            self.precision,
        )

    def require_exact_coefficients(self, what: str = "decision") -> None:
        if self.is_approx:
            raise InexactDecision(f"{what} on approximate germ {self} refused")

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        prec = _min_prec(self.precision, other.precision)
        d = _common_denominator(self.terms, other.terms, None)
        acc: dict = {}
        for terms in (self.terms, other.terms):
            for r, c in terms:
                n = r.numerator * (d // r.denominator)
                acc[n] = acc[n] + c if n in acc else c
        if prec is not None:
            limit = math.ceil(prec * d)
            acc = {n: c for n, c in acc.items() if n < limit}
        return PuiseuxGerm._from_lattice(acc, d, prec)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxGerm._raw({r: -c for r, c in self.terms}, self.precision)

    def __sub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        f, g = self, other
        # f = F + O(Nf), g = G + O(Ng): the unknown part of f*g starts at
        # min(Nf + v(G), Ng + v(F), Nf + Ng)
        bounds = []
        if f.precision is not None:
            if g.terms:
                bounds.append(f.precision + g.terms[0][0])
            if g.precision is not None:
                bounds.append(f.precision + g.precision)
        if g.precision is not None and f.terms:
            bounds.append(g.precision + f.terms[0][0])
        prec = min(bounds) if bounds else None
        # work on the integer lattice n/D: int keys hash and add cheaply
        d = _common_denominator(f.terms, g.terms, prec)
        limit = None if prec is None else math.ceil(prec * d)
        gi = [(r.numerator * (d // r.denominator), c) for r, c in g.terms]
        acc: dict = {}
        for rf, cf in f.terms:
            nf = rf.numerator * (d // rf.denominator)
            for ng, cg in gi:
                n = nf + ng
                if limit is not None and n >= limit:
                    break
                acc[n] = acc[n] + cf * cg if n in acc else cf * cg
        return PuiseuxGerm._from_lattice(acc, d, prec)

    __rmul__ = __mul__

    def shift(self, r) -> PuiseuxGerm:
        """Multiply by ``e**r`` exactly."""
        r = Fraction(r)
        prec = None if self.precision is None else self.precision + r
        return PuiseuxGerm._raw({e + r: c for e, c in self.terms}, prec)

    def scale(self, c) -> PuiseuxGerm:
        c = _coeff(c)
        if c == 0:
            return PuiseuxGerm()
        return PuiseuxGerm._raw({r: c * x for r, x in self.terms}, self.precision)

    def __pow__(self, n: int, order=None):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert(order).__pow__(-n)
        result = PuiseuxGerm.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- inversion and roots -------------------------------------------

    def _split(self):
        """Write ``self = c * e**v * (1 + h)`` with ``h`` of positive order."""
        lead = self.leading()
        if lead is None:
            return None
        v, c = lead
        h = PuiseuxGerm(self.terms[1:], self.precision).shift(-v).scale(1 / c if isinstance(c, float) else 1 / Fraction(c))
        return v, c, h

    def invert(self, order=None) -> PuiseuxGerm:
        """Inverse germ with ``self * result = 1 + O(e**(order+1))``.

        Exact (no O-term) when ``self`` is an exact monomial.
        """
        n = Fraction(get_order() if order is None else order)
        split = self._split()
        if split is None:
            raise NotInvertible("the zero germ has no inverse")
        v, c, h = split
        inv_c = 1 / c if isinstance(c, float) else 1 / Fraction(c)
        series = _series(h, n + 1, "inv")
        return series.scale(inv_c).shift(-v)

    def sqrt(self, order=None) -> PuiseuxGerm:
        """Square root germ with ``result**2 - self`` of order ``> order``.

        The coefficient of the leading term is stored exactly when it is a
        rational square and as a float otherwise.
        """
        n = Fraction(get_order() if order is None else order)
        split = self._split()
        if split is None:
            return PuiseuxGerm()
        v, c, h = split
        if not c > 0:
            raise NotQPositiveLeading(f"leading coefficient {c} of {self} is not positive")
        root_c = _exact_sqrt(c) if isinstance(c, Fraction) else None
        if root_c is None:
            root_c = math.sqrt(c)
        rel = n + 1 + max(Fraction(0), -v)
        series = _series(h, rel, "sqrt")
        return series.scale(root_c).shift(v / 2)

    # -- evaluation -----------------------------------------------------

    def __call__(self, eps: float) -> float:
        return math.fsum(float(c) * eps ** float(r) for r, c in self.terms)

    evaluate = __call__

    # -- comparison and text -------------------------------------------

    def __eq__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        if self.is_approx or other.is_approx:
            raise InexactDecision("equality of germs with approximate coefficients is refused")
        return self.terms == other.terms and self.precision == other.precision

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        parts = []
        for r, c in self.terms:
            neg = c < 0
            mag = -c if neg else c
            if r == 0:
                body = str(mag)
            elif mag == 1:
                body = f"e^{_fmt_exp(r)}"
            else:
                body = f"{mag}*e^{_fmt_exp(r)}"
            parts.append(("-" if neg else "+", body))
        if self.precision is not None:
            parts.append(("+", f"O(e^{_fmt_exp(self.precision)})"))
        if not parts:
            return "0"
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"PuiseuxGerm({list(self.terms)!r}, precision={self.precision!r})"


def _maybe(value) -> Optional[PuiseuxGerm]:
    if isinstance(value, PuiseuxGerm):
        return value
    if isinstance(value, (int, float, Rational)):
        return PuiseuxGerm.const(value)
    return None


def _common_denominator(a, b, prec) -> int:
    d = 1 if prec is None else prec.denominator
    for terms in (a, b):
        for r, _ in terms:
            if d % r.denominator:
                d = d * r.denominator // math.gcd(d, r.denominator)
    return d


def _clean(acc: dict, prec) -> tuple:
    return tuple((r, acc[r]) for r in sorted(acc) if acc[r] != 0 and (prec is None or r < prec))


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _series(h: PuiseuxGerm, rel: Fraction, kind: str) -> PuiseuxGerm:
    """``1/(1+h)`` or ``sqrt(1+h)`` known modulo ``O(e**rel)``; ``h`` has positive order.

    Exponents of ``h`` lie on a lattice ``(1/d)Z``, so in ``t = e**(1/d)`` both
    are dense power series and the usual coefficient recurrences apply.
    """
    if not h.terms and h.precision is None:
        return PuiseuxGerm.one()
    prec = rel if h.precision is None else min(rel, h.precision)
    d = 1
    for r, _ in h.terms:
        d = d * r.denominator // math.gcd(d, r.denominator)
    size = math.ceil(prec * d)  # indices n with n/d < prec
    hc = [0] * size
    for r, c in h.terms:
        n = int(r * d)
        if n < size:
            hc[n] = c
    nz = [j for j in range(1, size) if hc[j]]
    out = [Fraction(1)] + [0] * (size - 1)
    for n in range(1, size):
        if kind == "inv":
            acc = 0
            for j in nz:
                if j > n:
                    break
                acc -= hc[j] * out[n - j]
        else:
            acc = hc[n] - sum(out[j] * out[n - j] for j in range(1, n))
            acc = acc / 2
        out[n] = acc
    return PuiseuxGerm._raw({Fraction(n, d): c for n, c in enumerate(out) if c}, prec)
