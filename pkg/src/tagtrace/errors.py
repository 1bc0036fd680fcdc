"""Exception types shared across the engine."""


class TagTraceError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(TagTraceError):
    """Invalid or inconsistent configuration: unknown format tag, bad
    threshold, cutoff outside the trace span, malformed generator config."""


class EmptyTraceError(TagTraceError):
    """A source yielded zero parseable assignments."""


class EmptyInputError(TagTraceError):
    """An operation received an empty series or population."""


class ColdStartError(TagTraceError):
    """A recommendation was requested for a user absent from training."""


class PairLimitError(TagTraceError):
    """The pairwise-similarity accumulator exceeded its entry budget.

    Raised instead of silently truncating; callers must either raise the
    budget or shrink the input.
    """
