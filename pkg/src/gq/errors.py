"""Exception hierarchy.

Every error carries a ``meaning`` string saying what the failure says about
the element in ring-theoretic terms; the CLI prints it next to the name.
"""


class GQError(Exception):
    meaning = ""

    def describe(self) -> str:
        text = f"{type(self).__name__}: {self}"
        if self.meaning:
            text += f" [{self.meaning}]"
        return text


class NotAccumulating(GQError):
    meaning = "the block set is finite, so it does not reach epsilon -> 0"


class IndeterminateAtPrecision(GQError):
    meaning = "all known terms vanish; the germ cannot be certified zero or nonzero at this order"


class InexactDecision(GQError):
    meaning = "approximate coefficients present; exact decisions are refused"


class ZeroInput(GQError):
    meaning = "the element is 0"


class NotInvertible(GQError):
    meaning = "the zero set accumulates at 0, so the element is a zero divisor"

    def __init__(self, message, witness=None):
        super().__init__(message)
        #: idempotent e != 0 with x*e == 0, when one was computed
        self.witness = witness


class IsUnit(GQError):
    meaning = "the element is invertible, so no annihilating idempotent exists"


class NotQPositive(GQError):
    meaning = "some accumulating branch has a negative leading coefficient"


class NotQPositiveLeading(NotQPositive):
    meaning = "leading coefficient is not positive, no real square root germ exists"
