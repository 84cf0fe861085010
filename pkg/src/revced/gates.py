"""Named reversible gates and the gate registry.

A gate is a permutation plus optional quantum-cost metadata, an optional
registered inverse, and (for majority-logic technologies) a network of
3-input majority voters that realizes the same permutation. The built-in
registry carries the gates this toolkit works with out of the box:

* NOT, FG (Feynman / controlled-NOT, also the fan-out copy gate),
* OTG and its inverse IOTG (4-wire; OTG with one ancilla at 0 is a full
  adder),
* QCA1, QCA2 and their inverses IQCA1, IQCA2 (3-wire majority-voter gates).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .faultmodels import (
    FaultLocationError,
    MvInputBias,
    MvModel,
    MvOutputInvert,
    MvStuckAt,
)
from .kernel import (
    AnfPoly,
    BitWord,
    TruthPerm,
    WidthError,
    anf_transform,
    perm_invert,
)


class DuplicateNameError(ValueError):
    """A gate with this name is already registered."""


class UnknownGateError(KeyError):
    """No gate with this name is registered."""


class MvMismatchError(ValueError):
    """A gate's MV network disagrees with its permutation."""


class BadInverseLinkError(ValueError):
    """Cross-registered inverse gates whose permutations do not invert
    each other."""


class NoInverseError(ValueError):
    """Gate has no registered inverse and derivation was disabled."""


@dataclass(frozen=True)
class MvNode:
    """Three-input majority voter; each operand may be complemented.

    Operand references are integers: 0..inputs-1 select a primary input,
    inputs+k selects the output of node k (which must come earlier).
    """

    operands: tuple[int, int, int]
    complemented: tuple[bool, bool, bool] = (False, False, False)


@dataclass(frozen=True)
class MvNetwork:
    """Acyclic network of MV nodes with input/output port bookkeeping."""

    inputs: int
    nodes: tuple[MvNode, ...]
    outputs: tuple[int, ...]
    input_names: tuple[str, ...] | None = None
    output_names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        for k, node in enumerate(self.nodes):
            for ref in node.operands:
                if not 0 <= ref < self.inputs + k:
                    raise ValueError(
                        f"node {k} operand {ref} must reference an input or an earlier node"
                    )
        for ref in self.outputs:
            if not 0 <= ref < self.inputs + len(self.nodes):
                raise ValueError(f"output reference {ref} out of range")
        if self.input_names is not None and len(self.input_names) != self.inputs:
            raise ValueError("input_names length must match inputs")
        if self.output_names is not None and len(self.output_names) != len(self.outputs):
            raise ValueError("output_names length must match outputs")


def mv_eval(
    net: MvNetwork,
    x: BitWord,
    faults: Mapping[int, Sequence[MvModel]] | Iterable[tuple[int, MvModel]] | None = None,
) -> BitWord:
    """Evaluate an MV network, optionally degrading nodes with MV faults.

    ``faults`` maps node index to the models applied at that node (or is an
    iterable of (node, model) pairs).
    """
    if x.width != net.inputs:
        raise WidthError(f"word width {x.width} != network inputs {net.inputs}")
    fault_map: dict[int, list[MvModel]] = {}
    if faults:
        if isinstance(faults, Mapping):
            pairs = [(k, m) for k, models in faults.items() for m in models]
        else:
            pairs = list(faults)
        for node_idx, model in pairs:
            if not 0 <= node_idx < len(net.nodes):
                raise FaultLocationError(f"MV network has no node {node_idx}")
            fault_map.setdefault(node_idx, []).append(model)

    values = list(x.bits)
    for k, node in enumerate(net.nodes):
        ops = [
            values[ref] ^ (1 if comp else 0)
            for ref, comp in zip(node.operands, node.complemented)
        ]
        models = fault_map.get(k, ())
        for m in models:
            if isinstance(m, MvInputBias):
                ops[m.operand] = m.value
        out = 1 if ops[0] + ops[1] + ops[2] >= 2 else 0
        for m in models:
            if isinstance(m, MvStuckAt):
                out = m.value
            elif isinstance(m, MvOutputInvert):
                out ^= 1
        values.append(out)
    return BitWord(len(net.outputs), tuple(values[r] for r in net.outputs))


def perm_from_network(net: MvNetwork) -> TruthPerm:
    """Tabulate an MV network into a permutation (raises if not bijective)."""
    width = net.inputs
    table = tuple(
        mv_eval(net, BitWord.from_int(i, width)).to_int() for i in range(1 << width)
    )
    return TruthPerm(width, table)


@dataclass(frozen=True)
class GateDef:
    """A named reversible gate."""

    name: str
    width: int
    perm: TruthPerm
    quantum_cost: int | None = None
    inverse_name: str | None = None
    mv_network: MvNetwork | None = None

    def __post_init__(self) -> None:
        if self.perm.width != self.width:
            raise WidthError(
                f"gate {self.name}: permutation width {self.perm.width} != {self.width}"
            )
        if self.quantum_cost is not None and self.quantum_cost < 0:
            raise ValueError(f"gate {self.name}: negative quantum cost")
        if self.mv_network is not None:
            if self.mv_network.inputs != self.width or len(self.mv_network.outputs) != self.width:
                raise WidthError(f"gate {self.name}: MV network shape != gate width")


def gate_eval(gate: GateDef, x: BitWord) -> BitWord:
    """Apply the gate's permutation to an input word."""
    return gate.perm.apply_word(x)


class GateRegistry:
    """Name -> GateDef mapping with inverse cross-link validation.

    Registration checks that an MV network (if present) reproduces the
    permutation on every input, and that cross-registered inverses really
    invert each other. Build the registry up front; evaluation never
    mutates it.
    """

    def __init__(self) -> None:
        self._gates: dict[str, GateDef] = {}

    def __contains__(self, name: str) -> bool:
        return name in self._gates

    def __iter__(self) -> Iterator[GateDef]:
        return iter(self._gates.values())

    def names(self) -> list[str]:
        return list(self._gates)

    def lookup(self, name: str) -> GateDef:
        try:
            return self._gates[name]
        except KeyError:
            raise UnknownGateError(f"unknown gate {name!r}") from None

    def register(self, gate: GateDef) -> "GateRegistry":
        if gate.name in self._gates:
            raise DuplicateNameError(f"gate {gate.name!r} already registered")
        if gate.mv_network is not None:
            derived = perm_from_network(gate.mv_network)
            if derived != gate.perm:
                raise MvMismatchError(
                    f"gate {gate.name}: MV network disagrees with permutation"
                )
        if gate.inverse_name is not None and gate.inverse_name in self._gates:
            self._check_inverse_pair(gate, self._gates[gate.inverse_name])
        # a previously registered gate may name this one as its inverse
        for other in self._gates.values():
            if other.inverse_name == gate.name:
                self._check_inverse_pair(other, gate)
        self._gates[gate.name] = gate
        return self

    @staticmethod
    def _check_inverse_pair(gate: GateDef, other: GateDef) -> None:
        if other.width != gate.width or perm_invert(gate.perm) != other.perm:
            raise BadInverseLinkError(
                f"gates {gate.name} and {other.name} are cross-linked as inverses "
                "but their permutations do not invert each other"
            )
        if other.inverse_name is not None and other.inverse_name != gate.name:
            raise BadInverseLinkError(
                f"gate {other.name} names {other.inverse_name} as inverse, not {gate.name}"
            )

    def derive_inverse(self, gate: GateDef | str, allow_derive: bool = True) -> GateDef:
        """Return the gate's inverse, deriving and registering one on demand.

        A registered inverse wins. Otherwise a new gate named
        ``<name>_INV`` is created with the inverted permutation and the
        forward gate's cost (no MV network is synthesized).
        """
        if isinstance(gate, str):
            gate = self.lookup(gate)
        if gate.inverse_name is not None and gate.inverse_name in self._gates:
            return self._gates[gate.inverse_name]
        inv_name = gate.name + "_INV"
        inv_perm = perm_invert(gate.perm)
        if inv_name in self._gates:
            existing = self._gates[inv_name]
            if existing.perm != inv_perm:
                raise DuplicateNameError(
                    f"gate name {inv_name!r} is taken by an unrelated gate"
                )
            return existing
        if not allow_derive:
            raise NoInverseError(f"gate {gate.name} has no registered inverse")
        inv = GateDef(
            name=inv_name,
            width=gate.width,
            perm=inv_perm,
            quantum_cost=gate.quantum_cost,
            inverse_name=gate.name,
        )
        self.register(inv)
        return inv

    def copy(self) -> "GateRegistry":
        dup = GateRegistry()
        dup._gates = dict(self._gates)
        return dup


# OTG output equations fitted to its truth table:
#   P = A, Q = A^B, R = A^B^D, S = AB ^ AD ^ BD ^ C
# so with C held at 0 the gate computes a full adder (R = sum, S = carry).
_OTG_TABLE = (0, 7, 6, 9, 8, 15, 14, 1, 4, 11, 10, 13, 12, 3, 2, 5)


def _mv(*specs: tuple[str, str, str]) -> tuple[MvNode, ...]:
    """Build nodes from operand specs like ("A", "B", "~C") over inputs A,B,C
    (or P,Q,R). Purely a readability helper for the built-in definitions."""
    order = {}
    nodes = []
    for spec in specs:
        operands = []
        comps = []
        for term in spec:
            comp = term.startswith("~")
            name = term.lstrip("~")
            if name not in order:
                order[name] = len(order)
            operands.append(order[name])
            comps.append(comp)
        nodes.append(MvNode(tuple(operands), tuple(comps)))
    return tuple(nodes)


def _qca_network(
    in_names: tuple[str, str, str],
    out_names: tuple[str, str, str],
    specs: tuple[tuple[str, str, str], ...],
) -> MvNetwork:
    return MvNetwork(
        inputs=3,
        nodes=_mv(*specs),
        outputs=(3, 4, 5),
        input_names=in_names,
        output_names=out_names,
    )


@lru_cache(maxsize=1)
def _base_registry() -> GateRegistry:
    reg = GateRegistry()
    # all 1x1 and 2x2 reversible gates count one unit of quantum cost
    reg.register(GateDef("NOT", 1, TruthPerm(1, (1, 0)), quantum_cost=1, inverse_name="NOT"))
    reg.register(
        GateDef("FG", 2, TruthPerm(2, (0, 3, 2, 1)), quantum_cost=1, inverse_name="FG")
    )
    otg = TruthPerm(4, _OTG_TABLE)
    reg.register(GateDef("OTG", 4, otg, quantum_cost=6, inverse_name="IOTG"))
    reg.register(GateDef("IOTG", 4, perm_invert(otg), quantum_cost=6, inverse_name="OTG"))

    abc = ("A", "B", "C")
    pqr = ("P", "Q", "R")
    qca1 = _qca_network(abc, pqr, (("A", "B", "C"), ("A", "B", "~C"), ("~A", "B", "C")))
    qca2 = _qca_network(abc, pqr, (("A", "B", "C"), ("A", "B", "~C"), ("~A", "B", "~C")))
    iqca1 = _qca_network(pqr, abc, (("P", "Q", "~R"), ("P", "Q", "R"), ("P", "~Q", "R")))
    iqca2 = _qca_network(pqr, abc, (("P", "Q", "~R"), ("P", "Q", "R"), ("P", "~Q", "~R")))
    for name, inv_name, net in (
        ("QCA1", "IQCA1", qca1),
        ("IQCA1", "QCA1", iqca1),
        ("QCA2", "IQCA2", qca2),
        ("IQCA2", "QCA2", iqca2),
    ):
        reg.register(
            GateDef(name, 3, perm_from_network(net), inverse_name=inv_name, mv_network=net)
        )
    return reg


def builtin_registry() -> GateRegistry:
    """Fresh registry preloaded with the built-in gates."""
    return _base_registry().copy()


def feynman_gate() -> GateDef:
    """The 2-wire copy/XOR gate used for fan-out legalization."""
    return _base_registry().lookup("FG")


def output_polynomials(gate: GateDef) -> list[AnfPoly]:
    """ANF of each output bit, in port order."""
    size = 1 << gate.width
    return [
        anf_transform([(gate.perm.table[x] >> j) & 1 for x in range(size)])
        for j in range(gate.width)
    ]


def xor_lower_bound(gate: GateDef) -> tuple[int, int]:
    """Greedy shared-operand count of (XOR, AND) operations across outputs.

    Outputs are processed in port order. For each output, any
    earlier-computed output whose monomial set is a subset of the remaining
    monomials is substituted as a single operand (largest subset first,
    earliest output on ties); the XOR cost is then operands minus one.
    AND cost counts each distinct degree-2-or-higher monomial once.

    Every counted XOR needs at least one 2-wire primitive, so the XOR total
    is a lower bound on quantum cost.
    """
    polys = output_polynomials(gate)
    computed: list[frozenset[frozenset[int]]] = []
    xor_total = 0
    for poly in polys:
        remaining = set(poly.monomials)
        operands = 0
        while True:
            best: frozenset[frozenset[int]] | None = None
            for monos in computed:  # earliest output first; ties keep the earliest
                if monos and monos <= remaining and (best is None or len(monos) > len(best)):
                    best = monos
            if best is None:
                break
            remaining -= best
            operands += 1
        operands += len(remaining)
        xor_total += max(operands - 1, 0)
        computed.append(poly.monomials)
    and_total = len({m for p in polys for m in p.monomials if len(m) >= 2})
    return xor_total, and_total
