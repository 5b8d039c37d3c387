"""Eventually periodic subsets of the block indices.

Block ``k`` stands for the dyadic interval ``(2**-(k+1), 2**-k]`` of the
regularization parameter, so a subset of the naturals names a union of such
intervals.  A set accumulates at 0 exactly when it is infinite.
"""

from __future__ import annotations

import re
from math import gcd
from typing import Iterable, Iterator

from gq.errors import NotAccumulating

_TEXT = re.compile(r"^\s*pre=([01]*)\s*;\s*per=([01]+)\s*$")


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _minimal_period(bits: tuple[bool, ...]) -> tuple[bool, ...]:
    n = len(bits)
    for d in range(1, n + 1):
        if n % d == 0 and all(bits[i] == bits[i % d] for i in range(n)):
            return bits[:d]
    return bits


class BlockSet:
    """An eventually periodic set of block indices.

    ``preperiod`` gives membership of blocks ``0..m-1``; ``period`` repeats
    cyclically from block ``m`` on.  Instances are always stored in canonical
    form (shortest period, then shortest preperiod), so ``==`` is set equality.

    >>> evens = BlockSet.parse("pre=;per=10")
    >>> 4 in evens, 5 in evens
    (True, False)
    >>> str(~evens)
    'pre=;per=01'
    """

    __slots__ = ("preperiod", "period")

    def __init__(self, preperiod: Iterable = (), period: Iterable = (False,)):
        pre = tuple(bool(b) for b in preperiod)
        per = tuple(bool(b) for b in period)
        if not per:
            raise ValueError("period must be nonempty")
        per = _minimal_period(per)
        while pre and pre[-1] == per[-1]:
            pre = pre[:-1]
            per = (per[-1],) + per[:-1]
        self.preperiod = pre
        self.period = per

    # -- constructors -------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> BlockSet:
        m = _TEXT.match(text)
        if not m:
            raise ValueError(f"bad block set literal {text!r}; expected pre=<bits>;per=<bits>")
        return cls((c == "1" for c in m.group(1)), (c == "1" for c in m.group(2)))

    @classmethod
    def empty(cls) -> BlockSet:
        return cls((), (False,))

    @classmethod
    def full(cls) -> BlockSet:
        return cls((), (True,))

    @classmethod
    def finite(cls, members: Iterable[int]) -> BlockSet:
        members = set(members)
        if any(k < 0 for k in members):
            raise ValueError("block indices are nonnegative")
        top = max(members, default=-1)
        return cls((k in members for k in range(top + 1)), (False,))

    @classmethod
    def residues(cls, period: int, members: Iterable[int]) -> BlockSet:
        """The purely periodic set ``{k : k mod period in members}``."""
        members = {r % period for r in members}
        return cls((), (r in members for r in range(period)))

    # -- membership ---------------------------------------------------

    def __contains__(self, k: int) -> bool:
        m = len(self.preperiod)
        if k < m:
            return self.preperiod[k]
        return self.period[(k - m) % len(self.period)]

    def members(self, start: int = 0) -> Iterator[int]:
        """Increasing enumeration of the members ``>= start`` (possibly infinite)."""
        k = start
        limit = len(self.preperiod) + len(self.period)
        while True:
            if k in self:
                yield k
            elif k >= limit and not self.accumulates():
                return
            k += 1

    def accumulates(self) -> bool:
        return any(self.period)

    def is_empty(self) -> bool:
        return not any(self.preperiod) and not self.accumulates()

    def is_full(self) -> bool:
        return all(self.preperiod) and all(self.period)

    def tail(self) -> BlockSet:
        """The purely periodic set agreeing with this one on all large blocks."""
        m, p = len(self.preperiod), len(self.period)
        shift = (-m) % p
        rotated = self.period[shift:] + self.period[:shift]
        return BlockSet((), rotated)

    # -- Boolean algebra ----------------------------------------------

    def _combine(self, other: BlockSet, op) -> BlockSet:
        m = max(len(self.preperiod), len(other.preperiod))
        p = _lcm(len(self.period), len(other.period))
        bits = [op(k in self, k in other) for k in range(m + p)]
        return BlockSet(bits[:m], bits[m:])

    def __or__(self, other: BlockSet) -> BlockSet:
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other: BlockSet) -> BlockSet:
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other: BlockSet) -> BlockSet:
        return self._combine(other, lambda a, b: a and not b)

    def __xor__(self, other: BlockSet) -> BlockSet:
        return self._combine(other, lambda a, b: a != b)

    def __invert__(self) -> BlockSet:
        return BlockSet((not b for b in self.preperiod), (not b for b in self.period))

    union = __or__
    intersection = __and__
    difference = __sub__
    complement = __invert__

    def issubset(self, other: BlockSet) -> bool:
        return (self - other).is_empty()

    __le__ = issubset

    def isdisjoint(self, other: BlockSet) -> bool:
        return (self & other).is_empty()

    # -- sampling -----------------------------------------------------

    def sample_epsilons(self, count: int, start: int = 0) -> list[float]:
        """Midpoints ``3 * 2**-(k+2)`` of the first ``count`` member blocks ``k >= start``.

        Successive values are strictly decreasing.
        """
        if not self.accumulates():
            raise NotAccumulating(f"{self} is finite; no blocks near epsilon = 0")
        out = []
        for k in self.members(start):
            if len(out) == count:
                break
            out.append(block_midpoint(k))
        return out

    # -- dunder plumbing ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, BlockSet):
            return NotImplemented
        return self.preperiod == other.preperiod and self.period == other.period

    def __hash__(self):
        return hash((self.preperiod, self.period))

    def __str__(self):
        bits = lambda seq: "".join("1" if b else "0" for b in seq)
        return f"pre={bits(self.preperiod)};per={bits(self.period)}"

    def __repr__(self):
        return f"BlockSet.parse({str(self)!r})"


def block_midpoint(k: int) -> float:
    return 3.0 * 2.0 ** -(k + 2)


EVENS = BlockSet((), (True, False))
ODDS = BlockSet((), (False, True))
