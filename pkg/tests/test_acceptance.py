"""Acceptance criteria 1-11.

Each test records PASS/FAIL in ``conftest.ACCEPTANCE``; the terminal summary
prints one line per criterion.  Run alone with
``pytest tests/test_acceptance.py -s`` to see the lines as they happen.
"""

import functools
import math
import random
import time
from fractions import Fraction

import mpmath
import pytest

from conftest import ACCEPTANCE
from gq import generate, oracle
from gq.blocksets import BlockSet
from gq.errors import IsUnit
from gq.ghquat import GenQuaternion as Q
from gq.ghquat import I, J, K
from gq.gnum import GenScalar, alpha, chi
from gq.ideals import FgIdeal

ZERO, ONE = GenScalar.const(0), GenScalar.const(1)
ORDER = 8


def criterion(number, title):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                ACCEPTANCE[number] = (title, False)
                print(f"\nAC{number:>2} FAIL  {title}")
                raise
            ACCEPTANCE[number] = (title, True)
            print(f"\nAC{number:>2} PASS  {title}")

        return wrapper

    return deco


def within_ulp(value: float, reference) -> bool:
    """``value`` is within one ulp of the high-precision ``reference``."""
    ref = float(reference)
    return abs(value - ref) <= math.ulp(ref) and abs(mpmath.mpf(value) - reference) <= math.ulp(ref)


def exp_neg(v) -> mpmath.mpf:
    with mpmath.workprec(200):
        return mpmath.exp(-mpmath.mpf(v.numerator) / v.denominator)


# -- 1 --------------------------------------------------------------------


@criterion(1, "sharp-norm law ||alpha(r)|| = e^-r and ||alpha(r) x|| = e^-r ||x||")
def test_ac1_sharp_norm_law():
    for r in (-2, -1, 0, Fraction(1, 2), 1, 2, 5):
        r = Fraction(r)
        a = alpha(r)
        assert a.valuation() == r
        assert within_ulp(a.sharp_norm(), exp_neg(r)), r
    assert alpha(2).sharp_norm() == pytest.approx(0.135335, abs=1e-6)

    rng = random.Random(101)
    for n in range(100):
        x = generate.scalar(rng)
        r = Fraction(rng.randint(-6, 6), rng.choice([1, 2, 3]))
        v = x.valuation()
        lhs = alpha(r) * x
        if v == math.inf:
            assert lhs.sharp_norm() == 0.0 == x.sharp_norm()
            continue
        assert lhs.valuation() == r + v
        # e^-r * ||x|| evaluated exactly, then compared to the float result
        assert within_ulp(lhs.sharp_norm(), exp_neg(r) * exp_neg(v)), (n, str(x), r)


# -- 2 and 3 --------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def dichotomy_family():
    rng = random.Random(202)
    scalars = [generate.nonzero_scalar(rng) for _ in range(1000)]
    quats = [generate.nonzero_quaternion(rng) for _ in range(500)]
    return scalars, quats


@criterion(2, "fundamental dichotomy on 1000 scalars and 500 quaternions (< 10 s)")
def test_ac2_dichotomy():
    scalars, quats = dichotomy_family()
    start = time.perf_counter()
    units = witnesses = 0
    for x in scalars:
        unit = x.is_unit()
        try:
            e = x.annihilator_idempotent()
        except IsUnit:
            e = None
        assert unit != (e is not None), str(x)
        if e is None:
            units += 1
        else:
            witnesses += 1
            assert e != ZERO and e * e == e and x * e == ZERO
    for x in quats:
        unit = x.is_unit()
        try:
            e = x.zero_divisor_witness()
        except IsUnit:
            e = None
        assert unit != (e is not None), str(x)
        if e is None:
            units += 1
        else:
            witnesses += 1
            assert e != ZERO and e * e == e
            assert x * e == Q(0) and e * x == Q(0)
    elapsed = time.perf_counter() - start
    assert units and witnesses
    assert elapsed < 10, f"{elapsed:.1f}s"


@criterion(3, "inverse certificates x*invert(x, 8) = 1 + O(e^>8) for every unit")
def test_ac3_inverse_certificates():
    scalars, quats = dichotomy_family()
    checked = 0
    for x in scalars + quats:
        if not x.is_unit():
            continue
        inv = x.invert(ORDER)
        residual = x * inv - 1
        parts = residual.components if isinstance(residual, Q) else (residual,)
        for part in parts:
            for g in part.germs:
                assert not g.is_approx
                assert all(r > ORDER for r, _ in g.terms)
                assert g.precision is None or g.precision > ORDER
        checked += 1
    assert checked > 300


# -- 4 --------------------------------------------------------------------


@criterion(4, "ultrametric inequality on 1000 triples; d = dpi on 500 quaternion pairs")
def test_ac4_metrics():
    rng = random.Random(404)
    for n in range(1000):
        make = generate.scalar if n % 2 == 0 else generate.quaternion
        x, y, z = make(rng), make(rng), make(rng)
        assert x.distance(z) <= max(x.distance(y), y.distance(z))
    for _ in range(500):
        x, y = generate.quaternion(rng), generate.quaternion(rng)
        assert x.distance(y) == x.product_distance(y)


# -- 5 --------------------------------------------------------------------


def _small_factor(rng) -> GenScalar:
    """A q-positive scalar ``c`` with ``c**2 <= 1``."""
    s = Fraction(rng.randint(0, 4), 2)
    return chi(generate.blockset(rng)) * alpha(s) if rng.random() < 0.5 else alpha(s)


@criterion(5, "q-positive cone, antisymmetry, convexity on 300 (x, y, g)")
def test_ac5_order_and_convexity():
    rng = random.Random(505)
    for _ in range(300):
        x, y = generate.qpositive_scalar(rng), generate.qpositive_scalar(rng)
        assert x.is_qpositive() and y.is_qpositive()
        assert (x + y).is_qpositive() and (x * y).is_qpositive()

    a = BlockSet.parse("pre=;per=10")
    samples = [chi(a) - chi(~a), ZERO] + [generate.scalar(rng) for _ in range(300)]
    for x in samples:
        if x.is_qpositive() and (-x).is_qpositive():
            assert x == ZERO
    s = chi(a) - chi(~a)
    assert not s.is_qpositive() and not (-s).is_qpositive()

    units = [Q(1), I, J, K, Q(Fraction(3, 5), Fraction(4, 5)), Q(0, 0, Fraction(-5, 13), Fraction(12, 13))]
    scalar_cases = quat_cases = 0
    while quat_cases < 300:
        g = generate.quaternion(rng)
        x = g * generate.quaternion(rng)
        if rng.random() < 0.5:
            y = x * rng.choice(units) * _small_factor(rng)
        else:
            y = generate.quaternion(rng)
        if not y.normsq().order_leq(x.normsq()):
            continue
        ideal = FgIdeal([g])
        assert x in ideal
        assert y in ideal, (str(x), str(y), str(g))
        quat_cases += 1
    while scalar_cases < 300:
        g = generate.scalar(rng)
        x = g * generate.scalar(rng)
        y = x * _small_factor(rng) if rng.random() < 0.5 else generate.scalar(rng)
        if not abs(y).order_leq(abs(x)):
            continue
        ideal = FgIdeal([g])
        assert x in ideal and abs(x) in ideal
        assert y in ideal, (str(x), str(y), str(g))
        scalar_cases += 1


# -- 6 --------------------------------------------------------------------


@criterion(6, "exchange idempotent on 500 quaternions: e^2 = e and x + e a unit")
def test_ac6_exchange():
    rng = random.Random(606)
    for _ in range(500):
        x = generate.quaternion(rng)
        e = x.exchange_idempotent()
        assert e * e == e
        assert (x + e).is_unit(), str(x)


# -- 7 --------------------------------------------------------------------


@criterion(7, "Bezout certificate on 300 generator pairs")
def test_ac7_bezout():
    rng = random.Random(707)
    for n in range(300):
        make = generate.quaternion if n % 3 else generate.scalar
        a, b = make(rng), make(rng)
        ideal = FgIdeal([a, b])
        assert a in ideal and b in ideal
        cert = ideal.bezout_certificate(ORDER)
        assert cert["verified"], (str(a), str(b))
        expected = a.normsq() + b.normsq() if isinstance(a, Q) else a * a + b * b
        assert cert["generator"] == expected


# -- 8 --------------------------------------------------------------------


def idempotent_candidates(rng):
    """200 ``(candidate, expected set or None)`` pairs."""
    out = []
    while len(out) < 200:
        a = generate.blockset(rng)
        kind = len(out) % 8
        if kind == 0:
            out.append((Q(chi(a)), a.tail()))
        elif kind == 1:
            # imaginary part supported on finitely many blocks: still chi(A)
            finite = BlockSet.finite(rng.sample(range(6), 2))
            out.append((Q(chi(a), chi(finite)), a.tail()))
        elif kind == 2:
            s = Fraction(rng.randint(1, 6), 2)
            out.append((Q(chi(a) + alpha(s)), None))
        elif kind == 3:
            b = generate.blockset(rng)
            cand = Q(chi(a), chi(b) * alpha(rng.randint(1, 3)))
            out.append((cand, a.tail() if not b.accumulates() else None))
        elif kind == 4:
            out.append((Q(Fraction(1, 2), Fraction(1, 2)), None))
        elif kind == 5:
            out.append((Q(chi(a) * (1 + alpha(3))), a.tail() if not a.accumulates() else None))
        elif kind == 6:
            out.append((Q(chi(a) * 2), a.tail() if not a.accumulates() else None))
        else:
            out.append((generate.quaternion(rng), "unknown"))
    return out


@criterion(8, "idempotent classification on 200 candidates; accepted ones central")
def test_ac8_idempotents():
    rng = random.Random(808)
    probes = [generate.quaternion(rng) for _ in range(100)]
    accepted = []
    for cand, expected in idempotent_candidates(rng):
        found = cand.is_idempotent()
        square_ok = cand * cand == cand
        assert (found is not None) == square_ok
        if expected != "unknown":
            assert found == expected, str(cand)
        if found is not None:
            assert all(c.is_zero() for c in cand.components[1:])
            assert cand == Q(chi(found))
            accepted.append(cand)
    assert len(accepted) >= 50
    for e in {str(c): c for c in accepted}.values():
        for q in probes:
            assert e * q == q * e


# -- 9 --------------------------------------------------------------------


def proper_ideal(rng):
    while True:
        count = rng.randint(1, 3)
        quaternion = rng.random() < 0.6
        gens = []
        for _ in range(count):
            x = generate.quaternion(rng) if quaternion else generate.scalar(rng)
            gens.append(x * chi(generate.blockset(rng)))
        ideal = FgIdeal(gens, "quaternion" if quaternion else "scalar")
        if ideal.is_proper():
            return ideal


@criterion(9, "essential-ideal lemma on 200 proper ideals; essential(I) <=> essential(n(I))")
def test_ac9_essential():
    rng = random.Random(909)
    for _ in range(200):
        ideal = proper_ideal(rng)
        e = ideal.containing_idempotent()
        assert e * e == e and e != ONE
        container = FgIdeal([e], ideal.ring)
        assert container.is_proper()
        assert all(g in container for g in ideal.generators)
        ann = ideal.right_annihilator_idempotent()
        assert ann is not None and ann == ONE - e
        assert all(g * ann == g * 0 for g in ideal.generators)
        assert not ideal.is_essential()
        assert ideal.is_essential() == ideal.norm_ideal().is_essential()
    for _ in range(200):
        ideal = FgIdeal([generate.quaternion(rng), generate.quaternion(rng)])
        assert ideal.is_essential() == ideal.norm_ideal().is_essential()


# -- 10 -------------------------------------------------------------------


@criterion(10, "oracle concordance: seed 42, 500 trials, zero mismatches (< 60 s)")
def test_ac10_oracle_concordance():
    start = time.perf_counter()
    summary = oracle.cross_validate_suite(42, 500)
    elapsed = time.perf_counter() - start
    assert summary.trials == 500
    assert summary.mismatches == [], summary.to_json()["mismatches"][:5]
    assert elapsed < 60, f"{elapsed:.1f}s"


# -- 11 -------------------------------------------------------------------


def _exact_order_ok(residual) -> bool:
    return residual.residual_order() > ORDER


@criterion(11, "polar round trip on 200 unit quaternions")
def test_ac11_polar():
    rng = random.Random(1111)
    eps = 2.0 ** -20
    approx = 0
    for _ in range(200):
        x = generate.unit_quaternion(rng)
        theta, n = x.polar(ORDER)
        if not (theta.is_approx or n.is_approx):
            assert _exact_order_ok(theta.scale(n) - x), str(x)
            assert _exact_order_ok(theta.normsq() - 1), str(x)
            continue
        approx += 1
        xv, tv, nv = x(eps), theta(eps), n(eps)
        size = math.hypot(*xv)
        err = math.hypot(*(t * nv - c for t, c in zip(tv, xv)))
        assert err / size < 1e-9, (str(x), err / size)
        assert abs(theta.normsq()(eps) - 1) < 1e-9, str(x)
    assert approx > 0
