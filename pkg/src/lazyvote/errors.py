"""Exceptions shared across the solver suite."""


class ProfileError(ValueError):
    """Structurally or semantically invalid election data."""


class BoundExceeded(RuntimeError):
    """A solver's state space or table would exceed its configured limit."""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
