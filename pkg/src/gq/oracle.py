"""Numeric cross-checks of symbolic decisions.

Representatives are evaluated at block midpoints ``e_k = 3 * 2**-(k+2)`` for
``k = 20..40`` and compared with the analytic definitions: the unit bound
``|x(e)| >= e**r``, the limit ``x(e) -> 0`` and the order bound
``x(e) > -e**b``.  Symbolic results stay authoritative; the oracle only
reports whether the samples agree.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Union

from gq import generate
from gq.blocksets import block_midpoint
from gq.ghquat import GenQuaternion
from gq.gnum import GenScalar

K_MIN = 20
K_MAX = 40
ASSOCIATION_CUTOFF = 1e-3
APPROX_MARGIN = 1e-6

Element = Union[GenScalar, GenQuaternion]


@dataclass
class OracleReport:
    decision: str
    samples: list[tuple[float, float]]
    verdict: str
    margin: float
    counterexample: Optional[tuple[float, float]] = None

    def to_json(self) -> dict:
        out = {
            "decision": self.decision,
            "samples": [{"eps": e, "value": v} for e, v in self.samples],
            "verdict": self.verdict,
            "margin": self.margin,
        }
        if self.counterexample is not None:
            eps, value = self.counterexample
            out["counterexample"] = {"eps": eps, "value": value}
        return out


def _components(x: Element):
    return x.components if isinstance(x, GenQuaternion) else (x,)


def _period(x: Element) -> int:
    p = 1
    for c in _components(x):
        p = p * c.period // gcd(p, c.period)
    return p


def sample_blocks(x: Element, k_min: int = K_MIN, k_max: int = K_MAX) -> list[list[int]]:
    """Blocks to sample, grouped by residue class of the element's period.

    Every accumulating branch is a union of residue classes, so each branch
    gets samples; a class with no block in ``[k_min, k_max]`` gets its first
    block past ``k_min``.
    """
    p = _period(x)
    groups = []
    for r in range(p):
        first = k_min + (r - k_min) % p
        ks = list(range(first, k_max + 1, p)) or [first]
        groups.append(ks)
    return groups


def _value(x: Element, k: int) -> float:
    eps = block_midpoint(k)
    if isinstance(x, GenQuaternion):
        return math.hypot(*(c.germ_at_block(k)(eps) for c in x.components))
    return x.germ_at_block(k)(eps)


def _worst_branch_valuation(x: Element):
    """Largest leading exponent over blocks (blockwise min over components).

    A unit satisfies ``|x(e)| >= e**r`` for ``r`` above this value; the global
    valuation is the smallest one and is too weak once branches differ.
    """
    worst = -math.inf
    for k in range(_period(x)):
        exps = [c.germ_at_block(k).terms[0][0] for c in _components(x) if c.germ_at_block(k).terms]
        if exps:
            worst = max(worst, min(exps))
    return worst


def check_unit_threshold(x: Element, r=None, k_max: int = K_MAX) -> OracleReport:
    """Test ``|x(e)| >= e**r`` on every branch.

    ``r`` defaults to one more than the largest branch valuation, i.e.
    ``1 - V(1/x)`` for a unit.
    """
    if r is None:
        v = _worst_branch_valuation(x)
        r = Fraction(1) if v == -math.inf else v + 1
    r = float(r)
    samples, slack = [], []
    counter = None
    for ks in sample_blocks(x, K_MIN, k_max):
        for k in ks:
            eps = block_midpoint(k)
            value = abs(_value(x, k))
            bound = eps ** r
            samples.append((eps, value))
            slack.append((value - bound) / max(value, bound))
            if value < bound and counter is None:
                counter = (eps, value)
    margin = min(slack)
    if counter is not None:
        verdict = "refute"
    else:
        verdict = "confirm"
    if x.is_approx and margin < APPROX_MARGIN:
        verdict = "inconclusive"
    return OracleReport("unit-threshold", samples, verdict, margin, counter)


def check_association(x: Element, k_max: int = K_MAX) -> OracleReport:
    """Samples of ``|x(e)|`` must decrease along each branch and end below 1e-3."""
    samples = []
    counter = None
    worst = -math.inf
    for ks in sample_blocks(x, K_MIN, k_max):
        values = [abs(_value(x, k)) for k in ks]
        samples.extend((block_midpoint(k), v) for k, v in zip(ks, values))
        for a, (k, b) in zip(values, list(zip(ks, values))[1:]):
            if b > a and counter is None:
                counter = (block_midpoint(k), b)
        last_k, last = ks[-1], values[-1]
        worst = max(worst, last)
        if last >= ASSOCIATION_CUTOFF and counter is None:
            counter = (block_midpoint(last_k), last)
    samples.sort(key=lambda s: -s[0])
    margin = (ASSOCIATION_CUTOFF - worst) / ASSOCIATION_CUTOFF
    verdict = "refute" if counter is not None else "confirm"
    if x.is_approx and abs(margin) < APPROX_MARGIN:
        verdict = "inconclusive"
    return OracleReport("association", samples, verdict, margin, counter)


def check_qpositivity(x: GenScalar, b=1, k_max: int = K_MAX) -> OracleReport:
    """Test ``x(e) > -e**b`` at every sample."""
    if isinstance(x, GenQuaternion):
        raise TypeError("q-positivity is defined for scalars only")
    b = float(b)
    samples, slack = [], []
    counter = None
    for ks in sample_blocks(x, K_MIN, k_max):
        for k in ks:
            eps = block_midpoint(k)
            value = _value(x, k)
            bound = eps ** b
            samples.append((eps, value))
            slack.append((value + bound) / bound)
            if not value > -bound and counter is None:
                counter = (eps, value)
    samples.sort(key=lambda s: -s[0])
    margin = min(slack)
    verdict = "refute" if counter is not None else "confirm"
    if x.is_approx and margin < APPROX_MARGIN:
        verdict = "inconclusive"
    return OracleReport("q-positivity", samples, verdict, margin, counter)


# -- cross validation ---------------------------------------------------


@dataclass
class Comparison:
    trial: int
    decision: str
    element: str
    symbolic: bool
    verdict: str
    outcome: str  # agree | inconclusive | mismatch


@dataclass
class SuiteSummary:
    seed: Optional[int]
    trials: int
    comparisons: list[Comparison] = field(default_factory=list)

    @property
    def mismatches(self) -> list[Comparison]:
        return [c for c in self.comparisons if c.outcome == "mismatch"]

    def counts(self) -> dict:
        out = {"agree": 0, "inconclusive": 0, "mismatch": 0}
        for c in self.comparisons:
            out[c.outcome] += 1
        return out

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "checks": len(self.comparisons),
            **self.counts(),
            "mismatches": [vars(c) for c in self.mismatches],
        }


def _compare(decision: str, symbolic: bool, report: OracleReport, one_sided: bool) -> str:
    if report.verdict == "inconclusive":
        return "inconclusive"
    oracle = report.verdict == "confirm"
    if oracle == symbolic:
        return "agree"
    # b = 1 only witnesses violations of order below e**1
    if one_sided and not symbolic:
        return "inconclusive"
    return "mismatch"


def check_element(x: Element, trial: int = 0, claims: Optional[dict] = None) -> list[Comparison]:
    """Run every symbolic decision on ``x`` against its numeric counterpart.

    ``claims`` overrides symbolic verdicts by decision name, which is how a
    deliberately wrong claim is planted in tests.
    """
    claims = claims or {}
    out = []
    text = str(x)

    def record(decision, symbolic, report, one_sided=False):
        symbolic = claims.get(decision, symbolic)
        out.append(Comparison(trial, decision, text, symbolic, report.verdict,
                              _compare(decision, symbolic, report, one_sided)))

    record("unit", x.is_unit(), check_unit_threshold(x))
    record("association", x.associates_zero(), check_association(x))
    if isinstance(x, GenScalar):
        record("q-positivity", x.is_qpositive(), check_qpositivity(x), one_sided=True)
    else:
        record("q-positivity", x.normsq().is_qpositive(), check_qpositivity(x.normsq()), one_sided=True)
    return out


def cross_validate(elements, claims: Optional[dict] = None, seed=None) -> SuiteSummary:
    """``claims`` maps a trial index to per-decision overrides."""
    elements = list(elements)
    summary = SuiteSummary(seed, len(elements))
    claims = claims or {}
    for n, x in enumerate(elements):
        summary.comparisons.extend(check_element(x, n, claims.get(n)))
    summary.comparisons.sort(key=lambda c: c.trial)
    return summary


def cross_validate_suite(seed: int, trials: int) -> SuiteSummary:
    """Random exact scalars (even trials) and quaternions (odd trials)."""
    rng = random.Random(seed)
    elements = [
        generate.scalar(rng) if n % 2 == 0 else generate.quaternion(rng)
        for n in range(trials)
    ]
    return cross_validate(elements, seed=seed)
