"""Exception types shared across the package."""


class InfeasibleError(RuntimeError):
    """Instance too large for exact desk-scale enumeration."""


class EnumerationCapError(InfeasibleError):
    pass


class PromiseViolation(ValueError):
    """A promise problem was called on an input that does not satisfy its promise."""


class HypothesisError(ValueError):
    """A reduction was invoked outside the hypotheses of its statement."""


class OracleFailure(RuntimeError):
    """An injected oracle returned an answer that fails verification."""


class DecodingError(RuntimeError):
    pass
