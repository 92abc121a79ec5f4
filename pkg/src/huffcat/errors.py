"""Exception types raised across the package."""


class HuffcatError(Exception):
    """Base class for every error raised by this package."""


class ZeroMultisetError(HuffcatError, ValueError):
    """An operation that needs a non-zero multiset received the zero multiset."""


class DisjointnessViolation(HuffcatError, ValueError):
    """Two subtrees with overlapping supports were joined."""


class NotALeaf(HuffcatError, LookupError):
    """A multiset was looked up as a leaf of a tree that does not carry it."""


class NotMonomial(HuffcatError, ValueError):
    """A code table was requested for a tree with a non-monomial leaf."""


class TooLarge(HuffcatError):
    """An exhaustive computation would exceed its configured size guard."""


class UnknownLaw(HuffcatError, KeyError):
    pass


class CodecError(HuffcatError, ValueError):
    """Base class for encoding/decoding failures."""


class UnknownSymbol(CodecError):
    pass


class TruncatedStream(CodecError):
    pass


class InvalidCodeword(CodecError):
    pass


class ContainerError(CodecError):
    """The compressed container header or payload is malformed."""
