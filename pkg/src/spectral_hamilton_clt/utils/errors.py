""" Exception hierarchy for the library and command-line tools

Library functions raise these exceptions instead of printing and exiting. The
command-line entry point catches them in one place and turns them into a
diagnostic on the error stream plus the exit code stored on the class.
"""


class HamiltonCLTError(Exception):
    """ Base class for every error raised by the package.

    Attributes:
        exit_code: Process exit code the command-line tools use for the error.
    """
    exit_code = 1


class UsageError(HamiltonCLTError):
    """ Bad arguments, unknown suite names, unwritable outputs."""
    exit_code = 1


class DomainError(HamiltonCLTError):
    """ An operation was called outside its mathematical domain."""
    exit_code = 1


class PreconditionError(HamiltonCLTError):
    """ A certificate construction was handed inputs that break its shape."""
    exit_code = 1


class GraphFormatError(HamiltonCLTError):
    """ Malformed graph6 or edge-json payload."""
    exit_code = 2


class NonBipartiteError(GraphFormatError):
    """ An odd cycle was found while recovering a bipartition."""


class AmbiguousBipartitionError(GraphFormatError):
    """ A disconnected graph6 payload arrived without explicit parts."""


class ResourceLimitError(HamiltonCLTError):
    """ A size limit or step budget refused the request."""
    exit_code = 4


class SearchBudgetExceeded(ResourceLimitError):
    """ A cancellable search ran out of its caller-supplied step budget."""


class ConvergenceError(ResourceLimitError):
    """ Power iteration hit its iteration cap before meeting the tolerance."""
