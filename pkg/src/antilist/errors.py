class AntilistError(ValueError):
    """Base class for all library errors."""


class PreconditionError(AntilistError):
    pass


class ProviderExhausted(AntilistError):
    """A list provider could not yield the item at the requested index."""

    def __init__(self, index: int):
        super().__init__(f"provider exhausted before index {index}")
        self.index = index


class FixtureError(AntilistError):
    pass
