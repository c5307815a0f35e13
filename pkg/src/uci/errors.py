"""Exception types shared across the package."""


class UCIError(Exception):
    """Base class for every error raised by :mod:`uci`."""


class BitstreamExhausted(UCIError, EOFError):
    """A read ran past the end of the data or past the bit limit."""


class CodepointOverflow(UCIError, OverflowError):
    """A codeword announces a value wider than the native 64-bit range."""


class KraftViolation(UCIError):
    """A length function cannot be realized as a prefix code."""


class NonMonotoneLength(UCIError):
    """A length function decreased where canonical assignment needs it nondecreasing."""


class ValueGap(UCIError):
    """A bit pattern falls outside every assigned codeword interval."""


class ContainerError(UCIError):
    pass


class BadMagic(ContainerError):
    pass


class UnknownCode(ContainerError, KeyError):
    def __str__(self):  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class TruncatedPayload(ContainerError):
    pass
