"""Fault models and fault-site bindings shared by gate and circuit evaluation.

Wire-level models apply where a value is produced (driver output); gate-level
models rewrite one instance's output vector or its computed function; MV-node
models degrade a single majority voter inside a gate's network form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .kernel import TruthPerm


class FaultLocationError(ValueError):
    """A fault references a wire, instance, or MV node that does not exist,
    or a model incompatible with its location kind."""


@dataclass(frozen=True)
class BitFlip:
    """Transient inversion of one wire value."""


@dataclass(frozen=True)
class StuckAt:
    """Permanent force of one wire to a fixed value."""

    value: int

    def __post_init__(self) -> None:
        if self.value not in (0, 1):
            raise ValueError("stuck-at value must be 0 or 1")


@dataclass(frozen=True)
class OutputMask:
    """XOR of a nonzero mask onto a gate instance's full output vector.

    This is the multi-bit error model: a single fault site corrupting
    several output wires at once.
    """

    mask: int

    def __post_init__(self) -> None:
        if self.mask <= 0:
            raise ValueError("output mask must be a nonzero bit mask")


@dataclass(frozen=True)
class GateReplace:
    """The instance computes a different bijection than its nominal gate."""

    perm: TruthPerm


@dataclass(frozen=True)
class MvInputBias:
    """One voter operand is replaced by a constant.

    Biasing to 0 degrades MV(a,b,c) to AND of the survivors, biasing to 1
    to OR; the standard logic-level images of a missing or additional cell.
    The constant replaces the effective (post-complement) operand value.
    """

    operand: int
    value: int

    def __post_init__(self) -> None:
        if self.operand not in (0, 1, 2):
            raise ValueError("MV operand index must be 0, 1, or 2")
        if self.value not in (0, 1):
            raise ValueError("bias value must be 0 or 1")


@dataclass(frozen=True)
class MvStuckAt:
    """MV node output forced to a fixed value."""

    value: int

    def __post_init__(self) -> None:
        if self.value not in (0, 1):
            raise ValueError("stuck-at value must be 0 or 1")


@dataclass(frozen=True)
class MvOutputInvert:
    """MV node output inverted."""


WireModel = Union[BitFlip, StuckAt]
InstanceModel = Union[OutputMask, GateReplace]
MvModel = Union[MvInputBias, MvStuckAt, MvOutputInvert]
FaultModel = Union[WireModel, InstanceModel, MvModel]

_WIRE_MODELS = (BitFlip, StuckAt)
_INSTANCE_MODELS = (OutputMask, GateReplace)
_MV_MODELS = (MvInputBias, MvStuckAt, MvOutputInvert)


@dataclass(frozen=True)
class Fault:
    """A fault model bound to one location in a circuit.

    Exactly one location kind applies per model family: ``wire`` for
    BitFlip/StuckAt, ``instance`` for OutputMask/GateReplace, and
    ``instance`` plus ``node`` for the MV models. ``region`` records the
    region tag of the faulted site (bookkeeping only).
    """

    model: FaultModel
    wire: str | None = None
    instance: int | None = None
    node: int | None = None
    region: str | None = None

    def __post_init__(self) -> None:
        if isinstance(self.model, _WIRE_MODELS):
            if self.wire is None or self.instance is not None or self.node is not None:
                raise FaultLocationError(f"{type(self.model).__name__} requires a wire location")
        elif isinstance(self.model, _INSTANCE_MODELS):
            if self.instance is None or self.wire is not None or self.node is not None:
                raise FaultLocationError(f"{type(self.model).__name__} requires an instance location")
        elif isinstance(self.model, _MV_MODELS):
            if self.instance is None or self.node is None or self.wire is not None:
                raise FaultLocationError(f"{type(self.model).__name__} requires an instance and MV node")
        else:
            raise FaultLocationError(f"unknown fault model {self.model!r}")

    @property
    def fault_id(self) -> str:
        """Stable, human-readable identifier used in reports."""
        m = self.model
        if isinstance(m, BitFlip):
            return f"bitflip:w={self.wire}"
        if isinstance(m, StuckAt):
            return f"stuckat{m.value}:w={self.wire}"
        if isinstance(m, OutputMask):
            return f"outputmask:g{self.instance}:m={m.mask}"
        if isinstance(m, GateReplace):
            return f"gatereplace:g{self.instance}:p={','.join(map(str, m.perm.table))}"
        if isinstance(m, MvInputBias):
            return f"mvbias:g{self.instance}:n{self.node}:op{m.operand}={m.value}"
        if isinstance(m, MvStuckAt):
            return f"mvstuckat{m.value}:g{self.instance}:n{self.node}"
        return f"mvinvert:g{self.instance}:n{self.node}"
