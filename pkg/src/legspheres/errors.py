"""Exception taxonomy shared by all modules."""


class ArgumentError(ValueError):
    """Malformed argument: wrong dimension, out-of-range parameter, unknown label."""


class DomainError(ValueError):
    """Input lies outside the declared domain of a map or field."""


class ConstructionError(ValueError):
    """A geometric construction cannot be completed for the given data."""


class SingularityError(ValueError):
    """Evaluation hit a singular locus (vanishing denominator, rank drop)."""
