"""Seeded random elements for property checks and the cross-validation suite.

Exponents are half-integers in [-3, 3] and coefficients have small numerators
and denominators, so the leading term dominates a germ once ``e < 1e-6``.
"""

from __future__ import annotations

import random
from fractions import Fraction

from gq.blocksets import BlockSet
from gq.ghquat import GenQuaternion
from gq.gnum import GenScalar
from gq.puiseux import PuiseuxGerm

EXPONENTS = [Fraction(n, 2) for n in range(-6, 7)]


def blockset(rng: random.Random, max_period: int = 6, max_pre: int = 3) -> BlockSet:
    pre = [rng.random() < 0.5 for _ in range(rng.randint(0, max_pre))]
    per = [rng.random() < 0.5 for _ in range(rng.randint(1, max_period))]
    return BlockSet(pre, per)


def coefficient(rng: random.Random) -> Fraction:
    return Fraction(rng.choice([-1, 1]) * rng.randint(1, 5), rng.randint(1, 3))


def germ(rng: random.Random, max_terms: int = 3, exponents=EXPONENTS) -> PuiseuxGerm:
    count = rng.randint(1, max_terms)
    exps = rng.sample(exponents, count)
    return PuiseuxGerm((r, coefficient(rng)) for r in exps)


def positive_germ(rng: random.Random, max_terms: int = 3) -> PuiseuxGerm:
    g = germ(rng, max_terms)
    return -g if g.terms[0][1] < 0 else g


def scalar(rng: random.Random, max_period: int = 6, zero_prob: float = 0.3, max_terms: int = 3) -> GenScalar:
    period = rng.randint(1, max_period)
    pool = [germ(rng, max_terms) for _ in range(rng.randint(1, 3))]
    if rng.random() < zero_prob:
        pool.append(PuiseuxGerm.zero())
    return GenScalar(rng.choice(pool) for _ in range(period))


def nonzero_scalar(rng: random.Random, **kwargs) -> GenScalar:
    while True:
        x = scalar(rng, **kwargs)
        if not x.is_zero():
            return x


def qpositive_scalar(rng: random.Random, max_period: int = 6) -> GenScalar:
    period = rng.randint(1, max_period)
    pool = [positive_germ(rng) for _ in range(rng.randint(1, 3))] + [PuiseuxGerm.zero()]
    return GenScalar(rng.choice(pool) for _ in range(period))


def idempotent(rng: random.Random, max_period: int = 6) -> GenScalar:
    from gq.gnum import chi

    return chi(blockset(rng, max_period))


def quaternion(rng: random.Random, zero_prob: float = 0.3, **kwargs) -> GenQuaternion:
    parts = []
    for _ in range(4):
        if rng.random() < zero_prob:
            parts.append(GenScalar.const(0))
        else:
            parts.append(scalar(rng, **kwargs))
    return GenQuaternion(*parts)


def nonzero_quaternion(rng: random.Random, **kwargs) -> GenQuaternion:
    while True:
        x = quaternion(rng, **kwargs)
        if not x.normsq().is_zero():
            return x


def unit_quaternion(rng: random.Random, **kwargs) -> GenQuaternion:
    """A random invertible quaternion (not necessarily of norm one)."""
    while True:
        x = quaternion(rng, **kwargs)
        if x.is_unit():
            return x
