"""Exception hierarchy shared by all modules."""


class ProdquotError(Exception):
    """Base class for every error raised by this package."""


class MalformedTypeError(ProdquotError, ValueError):
    pass


class SizeCapError(ProdquotError):
    pass


class GroupSpecError(ProdquotError, ValueError):
    pass


class MalformedSignatureError(ProdquotError, ValueError):
    pass


class InadmissibleSignatureError(ProdquotError, ValueError):
    pass


class InvalidSystemError(ProdquotError, ValueError):
    pass


class GroupMismatchError(ProdquotError, ValueError):
    pass


class ActionNotFreeError(ProdquotError):
    pass


class InconsistentStructureError(ProdquotError):
    pass


class ContainmentError(ProdquotError, ValueError):
    pass


class RankError(ProdquotError, ValueError):
    pass


class UnsupportedHypothesisError(ProdquotError):
    """Raised when an abelian-only computation receives a non-abelian group."""
