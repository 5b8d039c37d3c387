"""Quaternions with generalized scalar components.

Decisions (units, zero divisors, exchange idempotents) all route through the
exact scalar ``normsq(x) = x * conj(x)``; the square-root norm is only formed
when a polar decomposition is asked for.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Optional

from gq.blocksets import BlockSet
from gq.config import get_order
from gq.errors import InexactDecision, IsUnit, NotInvertible, ZeroInput
from gq.gnum import GenScalar, block_index, chi, sharp_norm_of_valuation
from gq.puiseux import PuiseuxGerm

_NAMES = ("", "i", "j", "k")


class GenQuaternion:
    """``x0 + x1*i + x2*j + x3*k`` over the generalized scalars.

    >>> i, j = GenQuaternion.basis("i"), GenQuaternion.basis("j")
    >>> str(i * j), str(j * i)
    ('k', '-k')
    >>> str((1 + i) * (1 - i))
    '2'
    """

    __slots__ = ("x0", "x1", "x2", "x3")

    def __init__(self, x0=0, x1=0, x2=0, x3=0):
        self.x0 = GenScalar.coerce(x0)
        self.x1 = GenScalar.coerce(x1)
        self.x2 = GenScalar.coerce(x2)
        self.x3 = GenScalar.coerce(x3)

    @classmethod
    def basis(cls, name: str) -> GenQuaternion:
        parts = [0, 0, 0, 0]
        parts[_NAMES.index(name) if name else 0] = 1
        return cls(*parts)

    @classmethod
    def coerce(cls, value) -> GenQuaternion:
        if isinstance(value, GenQuaternion):
            return value
        return cls(GenScalar.coerce(value))

    @property
    def components(self) -> tuple[GenScalar, GenScalar, GenScalar, GenScalar]:
        return (self.x0, self.x1, self.x2, self.x3)

    def is_scalar(self) -> bool:
        return all(c.is_zero() for c in self.components[1:])

    @property
    def is_approx(self) -> bool:
        return any(c.is_approx for c in self.components)

    def _require_exact(self, what: str) -> None:
        if self.is_approx:
            raise InexactDecision(f"{what} of {self} refused: approximate coefficients")

    def residual_order(self):
        return min(c.residual_order() for c in self.components)

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return GenQuaternion(*(a + b for a, b in zip(self.components, other.components)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return GenQuaternion(*(a - b for a, b in zip(self.components, other.components)))

    def __rsub__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GenQuaternion(*(-a for a in self.components))

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        a0, a1, a2, a3 = self.components
        b0, b1, b2, b3 = other.components
        return GenQuaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return other * self

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
        base = self if n >= 0 else self.invert()
        result = GenQuaternion(1)
        for _ in range(abs(n)):
            result = result * base
        return result

    def conj(self) -> GenQuaternion:
        return GenQuaternion(self.x0, -self.x1, -self.x2, -self.x3)

    def scale(self, s) -> GenQuaternion:
        s = GenScalar.coerce(s)
        return GenQuaternion(*(s * c for c in self.components))

    # -- norm, units, zero divisors ------------------------------------

    def normsq(self) -> GenScalar:
        """``x0**2 + x1**2 + x2**2 + x3**2``, the scalar ``x * conj(x)``."""
        x0, x1, x2, x3 = self.components
        return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3

    def norm(self, order=None) -> GenScalar:
        return self.normsq().sqrt(order)

    def is_unit(self) -> bool:
        self._require_exact("unit test")
        return self.normsq().is_unit()

    def invert(self, order=None) -> GenQuaternion:
        """``conj(x) * normsq(x)**-1``; ``x * result - 1`` has residual order ``> N``."""
        q = self.normsq()
        try:
            inv = q.invert(order)
        except NotInvertible as exc:
            raise NotInvertible(f"{self} is a zero divisor", witness=exc.witness) from None
        except ZeroInput:
            raise ZeroInput("0 has no inverse") from None
        return self.conj().scale(inv)

    def zero_divisor_witness(self) -> GenScalar:
        """Central idempotent ``e != 0`` with ``x*e == e*x == 0``."""
        self._require_exact("zero-divisor witness")
        q = self.normsq()
        if q.is_zero():
            raise ZeroInput("0 is annihilated by everything")
        if q.is_unit():
            raise IsUnit(f"{self} is a unit")
        return chi(q.zero_set())

    def exchange_idempotent(self) -> GenScalar:
        """Idempotent ``e`` making ``x + e`` a unit."""
        self._require_exact("exchange idempotent")
        return chi(self.normsq().zero_set())

    def is_idempotent(self) -> Optional[BlockSet]:
        """The set ``A`` if ``x*x == x`` (then ``x`` is the scalar ``chi(A)``), else ``None``."""
        self._require_exact("idempotent test")
        if self * self != self:
            return None
        if not self.is_scalar():
            raise AssertionError(f"non-scalar idempotent {self}")
        return self.x0.is_idempotent()

    # -- valuation and metrics -----------------------------------------

    def valuation(self):
        """Half the valuation of ``normsq``.

        Leading coefficients of squares are positive, so nothing cancels and
        this equals the least component valuation.
        """
        self._require_exact("valuation")
        v = self.normsq().valuation()
        return v if v == math.inf else v / 2

    def component_valuation(self):
        self._require_exact("valuation")
        return min(c.valuation() for c in self.components)

    def sharp_norm(self) -> float:
        return sharp_norm_of_valuation(self.valuation())

    def distance(self, other) -> float:
        return (self - _coerce(other)).sharp_norm()

    def product_distance(self, other) -> float:
        """The product metric: largest componentwise scalar distance."""
        diff = self - _coerce(other)
        return max(c.sharp_norm() for c in diff.components)

    # -- polar form -----------------------------------------------------

    def polar(self, order=None) -> tuple[GenQuaternion, GenScalar]:
        """``(theta, n)`` with ``n = norm(x)`` and ``theta * n = x`` to order ``N``.

        Defined for units only.
        """
        n_order = Fraction(get_order() if order is None else order)
        if not self.is_unit():
            raise NotInvertible(
                f"polar form of the zero divisor {self} is not provided",
                witness=chi(self.normsq().zero_set()) if not self.normsq().is_zero() else None,
            )
        v = self.valuation()
        work = n_order + max(Fraction(0), -v)
        n = self.norm(work)
        theta = self.scale(n.invert(work))
        return theta, n

    # -- association ----------------------------------------------------

    def associates_zero(self) -> bool:
        return all(c.associates_zero() for c in self.components)

    def associates(self, other) -> bool:
        return (self - _coerce(other)).associates_zero()

    def shadow(self) -> Optional[tuple[Fraction, Fraction, Fraction, Fraction]]:
        parts = tuple(c.shadow() for c in self.components)
        if any(p is None for p in parts):
            return None
        return parts

    # -- evaluation -----------------------------------------------------

    def __call__(self, eps: float) -> tuple[float, float, float, float]:
        k = block_index(eps)
        return tuple(c.germ_at_block(k)(eps) for c in self.components)

    evaluate = __call__

    def magnitude(self, eps: float) -> float:
        return math.hypot(*self(eps))

    # -- comparison and text -------------------------------------------

    def __eq__(self, other):
        other = _maybe(other)
        if other is None:
            return NotImplemented
        return all(a == b for a, b in zip(self.components, other.components))

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        pieces = []
        only_real = self.is_scalar_structurally()
        for name, comp in zip(_NAMES, self.components):
            if _is_structural_zero(comp):
                continue
            c = _plain_constant(comp)
            if c is not None:
                mag = -c if c < 0 else c
                if name and mag == 1:
                    body = name
                elif name and mag.denominator != 1:
                    body = f"({mag}){name}"
                else:
                    body = f"{mag}{name}"
                pieces.append(("-" if c < 0 else "+", body))
            elif not name and only_real:
                pieces.append(("+", str(comp)))
            else:
                pieces.append(("+", f"({comp}){name}"))
        if not pieces:
            return "0"
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def is_scalar_structurally(self) -> bool:
        return all(_is_structural_zero(c) for c in self.components[1:])

    def __repr__(self):
        return f"GenQuaternion({str(self)!r})"

    def to_json(self) -> dict:
        return {f"x{n}": c.to_json() for n, c in enumerate(self.components)}

    @classmethod
    def from_json(cls, data: dict) -> GenQuaternion:
        return cls(*(GenScalar.from_json(data[f"x{n}"]) for n in range(4)))


def _is_structural_zero(s: GenScalar) -> bool:
    return all(not g.terms and g.precision is None for g in s.germs)


def _plain_constant(s: GenScalar):
    if s.period != 1:
        return None
    g = s.germs[0]
    if g.precision is None and len(g.terms) == 1 and g.terms[0][0] == 0:
        c = g.terms[0][1]
        return c if isinstance(c, Fraction) else None
    return None


def _maybe(value) -> Optional[GenQuaternion]:
    if isinstance(value, GenQuaternion):
        return value
    if isinstance(value, (GenScalar, PuiseuxGerm, int, float, Rational)):
        return GenQuaternion(GenScalar.coerce(value))
    return None


def _coerce(value) -> GenQuaternion:
    q = _maybe(value)
    if q is None:
        raise TypeError(f"cannot make a quaternion from {value!r}")
    return q


I = GenQuaternion.basis("i")
J = GenQuaternion.basis("j")
K = GenQuaternion.basis("k")
