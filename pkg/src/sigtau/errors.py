class DomainError(ValueError):
    """Argument lies outside the range where a formula or bound is defined."""


class RangeError(IndexError):
    """Request exceeds what the current prime table or generated data covers."""


class TieError(RuntimeError):
    """Two critical epsilon values coincide within the tie tolerance."""

    def __init__(self, message: str, pairs=()):
        super().__init__(message)
        self.pairs = list(pairs)
