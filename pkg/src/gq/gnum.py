"""Generalized scalars: germs assigned to the blocks of a periodic partition.

Only the behaviour as ``e -> 0`` matters, so a scalar is determined by what
happens on large blocks.  Internally a scalar is the tuple of germs attached
to the residues ``k mod L`` for its minimal period ``L``; finite (non
accumulating) pieces of a partition are irrelevant and vanish on
construction.  Two scalars are equal exactly when their germ tuples agree.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Optional

import mpmath

from gq.blocksets import BlockSet
from gq.errors import (
    InexactDecision,
    IsUnit,
    NotInvertible,
    NotQPositive,
    ZeroInput,
)
from gq.puiseux import PuiseuxGerm

_ZERO = PuiseuxGerm.zero()
_ONE = PuiseuxGerm.one()


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _int_key(g: PuiseuxGerm) -> tuple:
    # same identity as g.key(), built from ints (Fraction hashing is slow)
    terms = tuple(
        (r.numerator, r.denominator, c) if isinstance(c, float) else (r.numerator, r.denominator, c.numerator, c.denominator)
        for r, c in g.terms
    )
    p = g.precision
    return terms, None if p is None else (p.numerator, p.denominator)


def _minimize(germs: tuple) -> tuple:
    n = len(germs)
    keys = [_int_key(g) for g in germs]
    # equal germs share one object, which lets map/_zip reuse results
    shared: dict = {}
    germs = tuple(shared.setdefault(k, g) for k, g in zip(keys, germs))
    for d in range(1, n + 1):
        if n % d == 0 and all(keys[i] == keys[i % d] for i in range(n)):
            return germs[:d]
    return germs


def block_index(eps: float) -> int:
    """The block ``k`` with ``2**-(k+1) < eps <= 2**-k``."""
    if not 0 < eps <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {eps}")
    m, e = math.frexp(eps)
    return 1 - e if m == 0.5 else -e


class GenScalar:
    """An element of the generalized scalar ring.

    >>> from gq.blocksets import EVENS
    >>> x = chi(EVENS) * alpha(1)
    >>> str(x)
    '{pre=;per=10 : e^1 | pre=;per=01 : 0}'
    >>> x.is_unit()
    False
    >>> str(x.annihilator_idempotent())
    '{pre=;per=10 : 0 | pre=;per=01 : 1}'
    """

    __slots__ = ("germs",)

    def __init__(self, germs: Iterable[PuiseuxGerm]):
        germs = tuple(PuiseuxGerm.coerce(g) for g in germs)
        if not germs:
            raise ValueError("a scalar needs at least one germ")
        self.germs: tuple[PuiseuxGerm, ...] = _minimize(germs)

    # -- constructors ---------------------------------------------------

    @classmethod
    def const(cls, c) -> GenScalar:
        return cls([PuiseuxGerm.const(c)])

    @classmethod
    def from_germ(cls, germ: PuiseuxGerm) -> GenScalar:
        return cls([germ])

    @classmethod
    def from_branches(cls, branches: Iterable[tuple[BlockSet, PuiseuxGerm]]) -> GenScalar:
        """Build from ``(set, germ)`` pairs whose sets partition the naturals."""
        branches = [(s, PuiseuxGerm.coerce(g)) for s, g in branches]
        if not branches:
            raise ValueError("no branches given")
        union = BlockSet.empty()
        for s, _ in branches:
            if not union.isdisjoint(s):
                raise ValueError(f"branch set {s} overlaps another branch")
            union = union | s
        if not union.is_full():
            raise ValueError(f"branch sets do not cover every block (missing {~union})")
        pre = max(len(s.preperiod) for s, _ in branches)
        period = 1
        for s, _ in branches:
            period = _lcm(period, len(s.period))
        start = -(-pre // period) * period
        germs = []
        for r in range(period):
            k = start + r
            germs.append(next(g for s, g in branches if k in s))
        return cls(germs)

    @classmethod
    def coerce(cls, value) -> GenScalar:
        if isinstance(value, GenScalar):
            return value
        if isinstance(value, PuiseuxGerm):
            return cls([value])
        if isinstance(value, (int, float, Rational)):
            return cls.const(value)
        raise TypeError(f"cannot make a generalized scalar from {value!r}")

    # -- structure ------------------------------------------------------

    @property
    def period(self) -> int:
        return len(self.germs)

    def germ_at_block(self, k: int) -> PuiseuxGerm:
        return self.germs[k % len(self.germs)]

    @property
    def branches(self) -> list[tuple[BlockSet, PuiseuxGerm]]:
        """Maximal ``(set, germ)`` pairs, ordered by their first block."""
        groups: dict = {}
        for r, g in enumerate(self.germs):
            groups.setdefault(g.key(), (g, []))[1].append(r)
        return [(BlockSet.residues(self.period, rs), g) for g, rs in groups.values()]

    @property
    def is_approx(self) -> bool:
        return any(g.is_approx for g in self.germs)

    @property
    def is_exact(self) -> bool:
        return all(g.is_exact for g in self.germs)

    def _require_exact(self, what: str) -> None:
        if self.is_approx:
            raise InexactDecision(f"{what} of {self} refused: approximate coefficients")

    def _residue_set(self, pred) -> BlockSet:
        return BlockSet.residues(self.period, (r for r, g in enumerate(self.germs) if pred(g)))

    def zero_set(self) -> BlockSet:
        """Blocks on which the germ vanishes exactly (the zeros of the representative)."""
        return self._residue_set(lambda g: g.is_zero())

    def support(self) -> BlockSet:
        return ~self.zero_set()

    def residual_order(self):
        """Least order over all blocks; ``(x*y - 1).residual_order() > N`` certifies ``y ~ 1/x``."""
        return min(g.order() for g in self.germs)

    def map(self, fn) -> GenScalar:
        # blocks often share one germ object; compute each distinct one once
        done: dict = {}
        out = []
        for g in self.germs:
            if id(g) not in done:
                done[id(g)] = fn(g)
            out.append(done[id(g)])
        return GenScalar(out)

    def _zip(self, other: GenScalar, fn) -> GenScalar:
        n = _lcm(self.period, other.period)
        done: dict = {}
        out = []
        for i in range(n):
            a, b = self.germs[i % self.period], other.germs[i % other.period]
            key = (id(a), id(b))
            if key not in done:
                done[key] = fn(a, b)
            out.append(done[key])
        return GenScalar(out)

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return self._zip(other, lambda a, b: a - b)

    def __rsub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return self.map(lambda g: -g)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return self._zip(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other * self.invert()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert() ** (-n)
        return self.map(lambda g: g ** n)

    # -- units and zero divisors ---------------------------------------

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.germs)

    def is_unit(self) -> bool:
        """Invertible iff the zero set of the representative does not accumulate."""
        self._require_exact("unit test")
        return self.zero_set().is_empty()

    def invert(self, order=None) -> GenScalar:
        """Blockwise inverse with ``x * x.invert(N) - 1`` of residual order ``> N``."""
        z = self.zero_set()
        if z.is_full():
            raise ZeroInput("0 has no inverse")
        if not z.is_empty():
            raise NotInvertible(f"{self} vanishes on {z}", witness=chi(z))
        return self.map(lambda g: g.invert(order))

    def annihilator_idempotent(self) -> GenScalar:
        """Nonzero idempotent ``e`` with ``x*e == 0``, for a nonzero non-unit ``x``."""
        self._require_exact("annihilator")
        z = self.zero_set()
        if z.is_full():
            raise ZeroInput("every idempotent annihilates 0; no canonical witness")
        if z.is_empty():
            raise IsUnit(f"{self} is a unit")
        return chi(z)

    def exchange_idempotent(self) -> GenScalar:
        """Idempotent ``e`` such that ``x + e`` is a unit (``e = 0`` for units)."""
        self._require_exact("exchange idempotent")
        return chi(self.zero_set())

    def unit_within_radius(self, s) -> GenScalar:
        """A unit ``u`` with ``distance(x, u) <= exp(-s)``."""
        self._require_exact("unit approximation")
        z = self.zero_set()
        if z.is_empty():
            return self
        return self + alpha(s) * chi(z)

    def is_idempotent(self) -> Optional[BlockSet]:
        """The set ``A`` when this is ``chi(A)``, else ``None``."""
        self._require_exact("idempotent test")
        for g in self.germs:
            if not (g == _ZERO or g == _ONE):
                return None
        if self * self != self:
            raise AssertionError(f"{self} has 0/1 germs but is not idempotent")
        return self._residue_set(lambda g: g == _ONE)

    # -- valuation and metric ------------------------------------------

    def valuation(self):
        """``V(x) = sup{r : e**-r * x -> 0}``: the least leading exponent, ``inf`` for 0."""
        self._require_exact("valuation")
        return min(g.valuation() for g in self.germs)

    def vanishing_exponents(self) -> str:
        """The set ``A(x)`` of exponents ``r`` with ``e**-r * x -> 0``."""
        v = self.valuation()
        return "R" if v == math.inf else f"(-inf, {v})"

    def sharp_norm(self) -> float:
        return sharp_norm_of_valuation(self.valuation())

    def distance(self, other) -> float:
        return (self - GenScalar.coerce(other)).sharp_norm()

    # -- order ----------------------------------------------------------

    def is_qpositive(self) -> bool:
        """Every accumulating branch is 0 or has a positive leading coefficient."""
        self._require_exact("order test")
        for g in self.germs:
            lead = g.leading()
            if lead is not None and lead[1] < 0:
                return False
        return True

    def order_leq(self, other) -> bool:
        return (GenScalar.coerce(other) - self).is_qpositive()

    def __le__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return self.order_leq(other)

    def __ge__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other.order_leq(self)

    def __abs__(self):
        self._require_exact("absolute value")

        def flip(g):
            lead = g.leading()
            return -g if lead is not None and lead[1] < 0 else g

        return self.map(flip)

    def sqrt(self, order=None) -> GenScalar:
        """q-positive ``y`` with ``y*y - x`` of residual order ``> N`` on every block."""
        if not self.is_qpositive():
            raise NotQPositive(f"{self} is not q-positive")
        return self.map(lambda g: g.sqrt(order))

    # -- association ----------------------------------------------------

    def associates_zero(self) -> bool:
        """``x(e) -> 0`` as ``e -> 0``: every leading exponent is positive."""
        self._require_exact("association")
        for g in self.germs:
            lead = g.leading()
            if lead is not None and lead[0] <= 0:
                return False
        return True

    def associates(self, other) -> bool:
        return (self - GenScalar.coerce(other)).associates_zero()

    def shadow(self) -> Optional[Fraction]:
        """The real number ``a`` with ``x - a`` associated to 0, if there is one."""
        self._require_exact("shadow")
        value = None
        for g in self.germs:
            lead = g.leading()
            if lead is not None and lead[0] < 0:
                return None
            c = lead[1] if lead is not None and lead[0] == 0 else Fraction(0)
            if value is not None and c != value:
                return None
            value = c
        return value

    # -- evaluation -----------------------------------------------------

    def __call__(self, eps: float) -> float:
        return self.germ_at_block(block_index(eps))(eps)

    evaluate = __call__

    # -- comparison and text -------------------------------------------

    def __eq__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        n = _lcm(self.period, other.period)
        return all(self.germs[i % self.period] == other.germs[i % other.period] for i in range(n))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(tuple(g.key() for g in self.germs))

    def __str__(self):
        if self.period == 1:
            return str(self.germs[0])
        return "{" + " | ".join(f"{s} : {g}" for s, g in self.branches) + "}"

    def __repr__(self):
        return f"GenScalar({str(self)!r})"

    def to_json(self) -> dict:
        return {"branches": [{"set": str(s), **germ_to_json(g)} for s, g in self.branches]}

    @classmethod
    def from_json(cls, data: dict) -> GenScalar:
        return cls.from_branches(
            (BlockSet.parse(b["set"]), germ_from_json(b)) for b in data["branches"]
        )


def _maybe(value) -> Optional[GenScalar]:
    if isinstance(value, GenScalar):
        return value
    if isinstance(value, (PuiseuxGerm, int, float, Rational)):
        return GenScalar.coerce(value)
    return None


def sharp_norm_of_valuation(v) -> float:
    """``exp(-v)`` correctly rounded; 0 for ``v = inf``."""
    if v == math.inf:
        return 0.0
    v = Fraction(v)
    with mpmath.workprec(120):
        return float(mpmath.exp(-mpmath.mpf(v.numerator) / v.denominator))


def alpha(r) -> GenScalar:
    """The scale element with representative ``e**r``."""
    return GenScalar([PuiseuxGerm.monomial(r)])


def chi(a: BlockSet) -> GenScalar:
    """The idempotent that is 1 on the blocks of ``a`` and 0 elsewhere."""
    t = a.tail()
    return GenScalar(_ONE if b else _ZERO for b in t.period)


def germ_to_json(g: PuiseuxGerm) -> dict:
    terms = []
    for r, c in g.terms:
        if isinstance(c, float):
            terms.append({"exp": str(r), "approx": c})
        else:
            terms.append({"exp": str(r), "num": c.numerator, "den": c.denominator})
    return {"terms": terms, "precision": "exact" if g.precision is None else str(g.precision)}


def germ_from_json(data: dict) -> PuiseuxGerm:
    terms = []
    for t in data["terms"]:
        c = float(t["approx"]) if "approx" in t else Fraction(t["num"], t["den"])
        terms.append((Fraction(t["exp"]), c))
    prec = data.get("precision", "exact")
    return PuiseuxGerm(terms, None if prec == "exact" else Fraction(prec))
