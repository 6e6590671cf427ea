"""Exception hierarchy shared by every equilib module.

Two broad families matter to callers: input problems (bad expressions,
malformed systems) and numeric problems (evaluation blow-ups, tolerance
failures, violated theorem hypotheses).  The CLI maps the first family to
exit code 2 and the second to exit code 3.
"""


class EquilibError(Exception):
    """Base class for all equilib errors."""


class InputError(EquilibError, ValueError):
    """Arguments violate a contract: lengths, signs, unknown labels."""


class ExprSyntaxError(InputError):
    """Expression source failed to parse.

    `offset` is the byte offset into the source where parsing stopped.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (offset {offset})")
        self.offset = offset


class EvalError(EquilibError, ArithmeticError):
    """Expression evaluation failed at a specific point."""

    def __init__(self, message: str, x: float):
        super().__init__(f"{message} at x={x!r}")
        self.x = x


class EvalDomainError(EvalError):
    """ln of a nonpositive value, division by zero, 0^negative, non-real power."""


class EvalOverflowError(EvalError):
    """Evaluation produced a non-finite value."""


class QuadratureError(EquilibError, RuntimeError):
    """Requested tolerance not reached within the subdivision budget."""


class SolverError(EquilibError, RuntimeError):
    """Root bracketing or iteration budget failed."""


class HypothesisError(EquilibError, RuntimeError):
    """The data violate a hypothesis of the theorem being applied."""
