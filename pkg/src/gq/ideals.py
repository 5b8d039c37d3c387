"""Finitely generated ideals in Bezout normal form.

Every finitely generated ideal ``<a_1, ..., a_n>`` equals ``g * R`` with
``g = sum normsq(a_i)``.  The generator is a unit germ on every block of its
support and vanishes elsewhere; because quotients of Puiseux germs are
always moderate, membership reduces to containment of supports.  This is a
property of the Puiseux model, not of the full algebra.

Ideals are two-sided (the quaternion ring is duo), so there are no separate
left and right ideal types.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Union

from gq.blocksets import BlockSet
from gq.config import get_order
from gq.ghquat import GenQuaternion
from gq.gnum import GenScalar, chi

Element = Union[GenScalar, GenQuaternion]


def normsq(x) -> GenScalar:
    if isinstance(x, GenQuaternion):
        return x.normsq()
    x = GenScalar.coerce(x)
    return x * x


def conj(x):
    return x.conj() if isinstance(x, GenQuaternion) else x


def principal_generator(gens: Iterable) -> GenScalar:
    """``sum normsq(a_i)``: exact, q-positive and generating ``<gens>``."""
    total = GenScalar.const(0)
    for a in gens:
        total = total + normsq(a)
    return total


class FgIdeal:
    """A finitely generated ideal of the scalar or quaternion ring.

    >>> from gq.ghquat import I, J
    >>> from gq.gnum import alpha
    >>> ideal = FgIdeal([alpha(1) * I, alpha(2) * J])
    >>> str(ideal.generator)
    'e^2 + e^4'
    >>> ideal.is_proper()
    False
    """

    def __init__(self, generators: Iterable, ring: Optional[str] = None):
        gens = list(generators)
        if not gens:
            gens = [GenScalar.const(0)]
        if ring is None:
            ring = "quaternion" if any(isinstance(a, GenQuaternion) for a in gens) else "scalar"
        if ring not in ("scalar", "quaternion"):
            raise ValueError(f"unknown ring {ring!r}")
        if ring == "scalar":
            if any(isinstance(a, GenQuaternion) for a in gens):
                raise TypeError("quaternion generator in a scalar ideal")
            gens = [GenScalar.coerce(a) for a in gens]
        else:
            gens = [GenQuaternion.coerce(a) for a in gens]
        for a in gens:
            if a.is_approx:
                raise ValueError(f"generator {a} has approximate coefficients")
        self.ring = ring
        self.generators: tuple = tuple(gens)
        self.generator: GenScalar = principal_generator(gens)
        self.support: BlockSet = self.generator.support()
        self._inverses: dict = {}

    @classmethod
    def principal(cls, a, ring: Optional[str] = None) -> FgIdeal:
        return cls([a], ring)

    def _lift(self, x):
        if self.ring == "quaternion":
            return GenQuaternion.coerce(x)
        if isinstance(x, GenQuaternion):
            raise TypeError("quaternion element tested against a scalar ideal")
        return GenScalar.coerce(x)

    # -- membership ----------------------------------------------------

    def __contains__(self, x) -> bool:
        x = self._lift(x)
        return normsq(x).support().issubset(self.support)

    member = __contains__

    def witness(self, x, order=None):
        """A quotient ``q`` with ``generator * q - x`` of residual order ``> N``."""
        n = Fraction(get_order() if order is None else order)
        x = self._lift(x)
        if x not in self:
            raise ValueError(f"{x} is not in the ideal")
        if normsq(x).is_zero():
            return x * 0
        v = x.valuation()
        work = n + max(Fraction(0), -v)
        return x * self._completed_inverse(work)

    def _completed_inverse(self, work: Fraction) -> GenScalar:
        # g + chi(off-support) is a unit; cached per working order
        if work not in self._inverses:
            completed = self.generator + chi(~self.support)
            self._inverses[work] = completed.invert(work)
        return self._inverses[work]

    def contains(self, other: FgIdeal) -> bool:
        return other.support.issubset(self.support)

    def __le__(self, other: FgIdeal) -> bool:
        return other.contains(self)

    def __eq__(self, other):
        if not isinstance(other, FgIdeal):
            return NotImplemented
        return self.ring == other.ring and self.support == other.support

    def __hash__(self):
        return hash((self.ring, self.support))

    def is_proper(self) -> bool:
        return not self.support.is_full()

    def is_zero(self) -> bool:
        return self.support.is_empty()

    # -- annihilators and essentiality ----------------------------------

    def right_annihilator_idempotent(self) -> Optional[GenScalar]:
        """``chi`` of the blocks where every generator vanishes, or ``None`` if there are none."""
        off = ~self.support
        return None if off.is_empty() else chi(off)

    def containing_idempotent(self) -> GenScalar:
        """The idempotent ``e = chi(support)``; the ideal is exactly ``R * e``."""
        return chi(self.support)

    def is_essential(self) -> bool:
        return self.right_annihilator_idempotent() is None

    def norm_ideal(self) -> FgIdeal:
        """The scalar ideal generated by the norms of the elements."""
        return FgIdeal([self.generator], "scalar")

    # -- arithmetic of ideals -----------------------------------------

    def __add__(self, other: FgIdeal) -> FgIdeal:
        ring = "quaternion" if "quaternion" in (self.ring, other.ring) else "scalar"
        return FgIdeal(self.generators + other.generators, ring)

    def __mul__(self, other: FgIdeal) -> FgIdeal:
        ring = "quaternion" if "quaternion" in (self.ring, other.ring) else "scalar"
        return FgIdeal([a * b for a in self.generators for b in other.generators], ring)

    def is_idempotent(self) -> bool:
        """Compare normal forms of ``I*I`` and ``I``."""
        return self * self == self

    def radical_membership(self, x, n: int) -> bool:
        """Truth of ``x**n in I  =>  x in I``."""
        if n < 1:
            raise ValueError("power must be positive")
        x = self._lift(x)
        return (x ** n) not in self or x in self

    # -- certificates ---------------------------------------------------

    def bezout_certificate(self, order=None) -> dict:
        """Check ``<gens> == generator * R`` both ways.

        Each generator gets a quotient witness; the generator itself is the
        exact combination ``sum a_i * conj(a_i)``.
        """
        n = Fraction(get_order() if order is None else order)
        quotients = []
        ok = True
        for a in self.generators:
            if a not in self:
                ok = False
                quotients.append(None)
                continue
            q = self.witness(a, n)
            residual = self.generator * q - a
            ok = ok and residual.residual_order() > n
            quotients.append(q)
        combo = GenScalar.const(0)
        for a in self.generators:
            prod = a * conj(a)
            combo = combo + (prod.x0 if isinstance(prod, GenQuaternion) else prod)
            if isinstance(prod, GenQuaternion) and not prod.is_scalar():
                ok = False
        ok = ok and combo == self.generator
        return {"generator": self.generator, "quotients": quotients, "coefficients": [conj(a) for a in self.generators], "verified": ok}

    def __str__(self):
        return f"<{', '.join(str(a) for a in self.generators)}> = ({self.generator})R"

    def __repr__(self):
        return f"FgIdeal({[str(a) for a in self.generators]!r}, ring={self.ring!r})"
