"""Global truncation order and numeric tolerances."""

from contextlib import contextmanager
from contextvars import ContextVar
from fractions import Fraction

DEFAULT_ORDER = 8

#: relative tolerance for checks on approx-tagged coefficients
APPROX_TOL = 1e-9

_order: ContextVar[Fraction] = ContextVar("gq_order", default=Fraction(DEFAULT_ORDER))


def get_order() -> Fraction:
    return _order.get()


def set_order(n) -> None:
    n = Fraction(n)
    if n <= 0:
        raise ValueError(f"truncation order must be positive, got {n}")
    _order.set(n)


@contextmanager
def working_order(n):
    """Temporarily change the truncation order used by ``/`` and friends."""
    token = _order.set(Fraction(n))
    try:
        yield
    finally:
        _order.reset(token)
