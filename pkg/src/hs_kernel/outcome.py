"""Result types shared by the three kernelization pipelines."""

from dataclasses import dataclass
from typing import Generic, TypeVar

InstanceT = TypeVar("InstanceT")
StepT = TypeVar("StepT")


@dataclass(frozen=True)
class Decided:
    """A final answer. YES answers carry a witness on the original instance."""

    answer: bool
    witness: frozenset[int] | None = None

    def __str__(self) -> str:
        return "YES" if self.answer else "NO"


@dataclass(frozen=True)
class Kernel(Generic[InstanceT, StepT]):
    """An equivalent reduced instance plus the trace that produced it."""

    instance: InstanceT
    trace: tuple[StepT, ...] = ()

    @property
    def parameter(self) -> int:
        return self.instance.k  # type: ignore[attr-defined]


KernelOutcome = Decided | Kernel
