"""Exception types shared across the package."""


class DomainError(Exception):
    """A well-formed input violates a mathematical precondition."""


class InputError(Exception):
    """Malformed input: bad JSON, schema violation, unparsable expression."""
