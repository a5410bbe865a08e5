"""Error hierarchy shared by the kernel, the checker and the CLI.

Each exception class maps to one CLI exit code class, see cli.EXIT_CODES.
"""


class ReftcError(Exception):
    """Base class for all errors raised by this package."""


class KernelError(ReftcError):
    """Structural misuse of the finite-set kernel."""


class BaseMismatch(KernelError):
    """An operation received families or maps over incompatible bases."""


class NotVertical(KernelError):
    """A fibrewise operation received a morphism with a non-identity base part."""


class NotRefined(KernelError):
    """A candidate refined object violates the defining inequality Q <= pull(proj, P)."""

    def __init__(self, msg, offending=None):
        super().__init__(msg)
        self.offending = offending


class SharingMismatch(KernelError):
    """Nested refined data disagrees on the shared middle predicate."""


class LiftingUnsound(KernelError):
    """A predicate lifting failed its soundness inequality; carries a counterexample."""

    def __init__(self, msg, counterexample=None):
        super().__init__(msg)
        self.counterexample = counterexample


class NotMonotone(KernelError):
    """A map handed to the fixpoint machinery is not monotone."""

    def __init__(self, msg, fibre=None):
        super().__init__(msg)
        self.fibre = fibre


class Unsupported(ReftcError):
    """A requested monad/lifting combination is not available."""


class ParseError(ReftcError):
    """Concrete-syntax error, with source position."""

    def __init__(self, msg, line=None, col=None):
        super().__init__(msg)
        self.line = line
        self.col = col

    def __str__(self):
        base = super().__str__()
        if self.line is not None:
            return "%d:%d: %s" % (self.line, self.col, base)
        return base


class CheckError(ReftcError):
    """Type checking failed.  Carries a diagnostic code and source location."""

    def __init__(self, msg, code="E-TYPE", loc=None):
        super().__init__(msg)
        self.code = code
        self.loc = loc


class ModelError(ReftcError):
    """A signature's finite model is ill-formed or violates a declared refinement."""


class Unchecked(ReftcError):
    """Denotation was requested for input that does not type check."""
