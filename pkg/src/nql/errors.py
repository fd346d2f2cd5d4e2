class InexactDivision(ArithmeticError):
    """An exact division left a remainder; indicates a bug upstream."""


class OracleBoundExceeded(ValueError):
    """The naive expansion oracle refuses inputs above its size bound."""


class SearchFailure(RuntimeError):
    """A certificate search ran out of budget. This does not prove degeneracy."""

    def __init__(self, message, attempted=None):
        super().__init__(message)
        self.attempted = attempted or []


class CertificateFailure(RuntimeError):
    """A certificate check failed."""
