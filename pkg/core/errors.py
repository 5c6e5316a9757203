"""Exception hierarchy shared by the library, the services and the CLI."""


class CombinatoricsError(Exception):
    """Base class for every error raised on purpose by this package."""


class PreconditionError(CombinatoricsError, ValueError):
    """An operation was called outside its domain (e.g. x not in D_{i,j})."""


class ShapeError(CombinatoricsError, ValueError):
    """A tableau, partition or word has the wrong shape or is not standard."""


class ParseError(CombinatoricsError, ValueError):
    """Text input could not be parsed."""


class WebStructureError(CombinatoricsError, ValueError):
    """A web violates degree, orientation or embedding consistency."""


class UnreducedWebError(CombinatoricsError, ValueError):
    """An operation that needs a reduced web received an unreduced one."""


class ResourceLimitError(CombinatoricsError, RuntimeError):
    """A configured size or memory bound was exceeded."""


class UniquenessError(CombinatoricsError, RuntimeError):
    """Zero or several candidates where exactly one must exist."""


class VerificationError(CombinatoricsError, RuntimeError):
    """A computed object failed its defining conditions."""
