"""Exception hierarchy for the jaya package."""


class JayaError(Exception):
    """Base class for every error raised by this package."""


class InvalidConfigError(JayaError, ValueError):
    pass


class InvalidBoundsError(JayaError, ValueError):
    pass


class DimensionError(JayaError, ValueError):
    pass


class EvaluationOrderError(JayaError, RuntimeError):
    """Raised when a member is read before it has been evaluated."""


class NonFiniteObjectiveError(JayaError, ArithmeticError):
    def __init__(self, x, value, objective_index=0):
        self.x = x
        self.value = value
        self.objective_index = objective_index
        super().__init__(
            f"objective {objective_index} returned {value!r} at x={list(map(float, x))}"
        )


class NonFiniteConstraintError(JayaError, ArithmeticError):
    def __init__(self, index, x, detail):
        self.index = index
        self.x = x
        super().__init__(f"constraint {index} failed at x={list(map(float, x))}: {detail}")


class UseJayaInsteadError(JayaError, ValueError):
    """jaya_multi was handed fewer than two objectives."""
