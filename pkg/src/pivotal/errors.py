"""Exception types shared across the library."""


class GuardLimitError(ValueError):
    """An input exceeds one of the documented size guards."""


class SpecParseError(ValueError):
    """A game or distribution file could not be parsed."""
