"""Exception types shared across the library."""


class DecodeFailure(Exception):
    """Bounded-distance decoding found no codeword inside the radius.

    Raised by block decoders and propagated (or caught and counted) by the
    harnesses; decoding failures are data, not bugs, so this type is kept
    distinct from usage errors.
    """


class UsageError(ValueError):
    """An API precondition was violated (lengths, ranges, reuse of a
    one-time key, mismatched field specs)."""


class ConfigError(ValueError):
    """A parameter set violates a required inequality; the message names
    the inequality that failed."""
