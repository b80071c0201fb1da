"""Exception and warning types shared across the package."""


class ScenarioError(ValueError):
    """Scenario file or dict cannot be parsed into a valid Scenario."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class BracketFailure(RuntimeError):
    """The analytic root bracket is numerically empty; inputs are pathological."""


class FixedPointDivergence(RuntimeError):
    """The multiplier fixed-point equation has no root inside its bracket."""


class NonUnitGamma(ValueError):
    """FR power optimization requires all field weights equal to one."""


class DimensionTooLarge(ValueError):
    """Brute-force oracles only support small sensor counts."""


class DistanceDegenerateWarning(UserWarning):
    """A geometric distance fell below the clamp threshold and was clamped."""
