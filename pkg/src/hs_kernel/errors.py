"""Exception hierarchy shared by every hs_kernel module.

Each class also derives from the builtin a caller would naturally catch
(``KeyError`` for unknown ids, ``ValueError`` for bad input, ...).
"""


class HSKernelError(Exception):
    """Base class for all hs_kernel errors."""


class UnknownVertexError(HSKernelError, KeyError):
    """A vertex id is not part of the instance."""

    def __init__(self, vertex: int) -> None:
        super().__init__(f"Unknown vertex id: {vertex}")
        self.vertex = vertex

    def __str__(self) -> str:
        return str(self.args[0])


class UnknownEdgeError(HSKernelError, KeyError):
    """An edge id is not part of the hypergraph."""

    def __init__(self, edge: int) -> None:
        super().__init__(f"Unknown edge id: {edge}")
        self.edge = edge

    def __str__(self) -> str:
        return str(self.args[0])


class PreconditionError(HSKernelError, ValueError):
    """An operation was called outside its documented precondition."""


class InfeasibleInstanceError(HSKernelError, ValueError):
    """The instance contains an empty edge, so no hitting set exists."""


class InvalidWitnessError(HSKernelError, ValueError):
    """A witness handed to a lifting or checking routine is not a solution."""


class InstanceFormatError(HSKernelError, ValueError):
    """Malformed instance, witness or trace text."""

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NodeBudgetExceeded(HSKernelError, RuntimeError):
    """An exact solver ran out of its branching-node budget."""

    def __init__(self, budget: int) -> None:
        super().__init__(f"Exact solver exceeded its node budget of {budget}")
        self.budget = budget


class InvariantViolation(HSKernelError, AssertionError):
    """A pipeline produced a result that breaks its own guarantee."""
