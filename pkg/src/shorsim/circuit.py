"""Ordered, invertible, serializable sequences of gate placements.

Circuits are purely unitary: measurements are driver-level actions, never
circuit ops, so ``inverse`` is total.

Text format, one op per line, ``#`` starts a comment::

    qubits <n>                     # optional header; width inferred if absent
    H <q>
    X <q>
    PHASE <q> <radians>
    CNOT <control> <target>
    CCNOT <control1> <control2> <target>
    CPHASE <control> <target> <radians>
    U2 <q> <8 reals>               # 2x2 matrix, row-major, re im per entry
    U4 <qa> <qb> <32 reals>        # 4x4 matrix, row-major, re im per entry

Numbers are written with 17 significant digits so that serialization round
trips exactly.  Ops with no line form (basis permutations, generic
multi-controlled gates) cannot be serialized and are rejected.
"""

from dataclasses import dataclass, field

import numpy as np

from .gates import Gate2, Gate4, hadamard, not_gate, phase_shift, swap_gate
from .state import BasisPermutation, QuantumState

SINGLE = "single"
CONTROLLED = "controlled"
TWO_QUBIT = "two_qubit"
PERMUTATION = "permutation"


class CircuitParseError(ValueError):
    """Malformed circuit text; the message carries the 1-based line number."""


@dataclass(frozen=True, eq=False)
class GateOp:
    """One gate placement.

    ``name`` is a serialization mnemonic only; structural equality compares
    kind, qubit indices, and the payload matrix/table.
    """

    kind: str
    payload: object
    target: int | None = None
    targets: tuple[int, int] | None = None
    controls: frozenset[int] = field(default_factory=frozenset)
    name: str | None = None
    angle: float | None = None

    def qubits(self) -> tuple[int, ...]:
        """Every qubit index the op touches (empty for a full-width permutation)."""
        out: tuple[int, ...] = tuple(sorted(self.controls))
        if self.target is not None:
            out += (self.target,)
        if self.targets is not None:
            out += self.targets
        return out

    def inverse(self) -> "GateOp":
        if self.kind == PERMUTATION:
            return GateOp(PERMUTATION, self.payload.inverse(), name=self.name)
        angle = None if self.angle is None else -self.angle
        if angle is not None:
            payload = phase_shift(angle)
        else:
            payload = self.payload.dagger()
        return GateOp(
            self.kind,
            payload,
            target=self.target,
            targets=self.targets,
            controls=self.controls,
            name=self.name,
            angle=angle,
        )

    def shifted(self, offset: int) -> "GateOp":
        """The same op with every qubit index moved up by ``offset``."""
        if self.kind == PERMUTATION:
            raise ValueError("a basis permutation is tied to the full register")
        return GateOp(
            self.kind,
            self.payload,
            target=None if self.target is None else self.target + offset,
            targets=None if self.targets is None else (self.targets[0] + offset, self.targets[1] + offset),
            controls=frozenset(c + offset for c in self.controls),
            name=self.name,
            angle=self.angle,
        )

    def __eq__(self, other):
        if not isinstance(other, GateOp):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.target == other.target
            and self.targets == other.targets
            and self.controls == other.controls
            and self.payload == other.payload
        )


# -- op constructors -----------------------------------------------------

def h(q: int) -> GateOp:
    return GateOp(SINGLE, hadamard(), target=q, name="H")


def x(q: int) -> GateOp:
    return GateOp(SINGLE, not_gate(), target=q, name="X")


def phase(q: int, angle: float) -> GateOp:
    return GateOp(SINGLE, phase_shift(angle), target=q, name="PHASE", angle=float(angle))


def u2(q: int, gate: Gate2) -> GateOp:
    if not isinstance(gate, Gate2):
        gate = Gate2(gate)
    return GateOp(SINGLE, gate, target=q, name="U2")


def cnot(control: int, target: int) -> GateOp:
    if control == target:
        raise ValueError("control equals target")
    return GateOp(CONTROLLED, not_gate(), target=target, controls=frozenset([control]), name="CNOT")


def ccnot(c1: int, c2: int, target: int) -> GateOp:
    if len({c1, c2, target}) != 3:
        raise ValueError(f"CCNOT qubits must be distinct, got {c1}, {c2}, {target}")
    return GateOp(CONTROLLED, not_gate(), target=target, controls=frozenset([c1, c2]), name="CCNOT")


def cphase(control: int, target: int, angle: float) -> GateOp:
    if control == target:
        raise ValueError("control equals target")
    return GateOp(
        CONTROLLED,
        phase_shift(angle),
        target=target,
        controls=frozenset([control]),
        name="CPHASE",
        angle=float(angle),
    )


def controlled(gate: Gate2, controls, target: int) -> GateOp:
    """Generic (multi-)controlled single-qubit gate; not serializable."""
    if not isinstance(gate, Gate2):
        gate = Gate2(gate)
    controls = frozenset(int(c) for c in controls)
    if target in controls:
        raise ValueError("control equals target")
    return GateOp(CONTROLLED, gate, target=target, controls=controls)


def u4(qa: int, qb: int, gate: Gate4) -> GateOp:
    if not isinstance(gate, Gate4):
        gate = Gate4(gate)
    if qa == qb:
        raise ValueError(f"two-qubit gate needs distinct qubits, got {qa} twice")
    return GateOp(TWO_QUBIT, gate, targets=(qa, qb), name="U4")


def swap(qa: int, qb: int) -> GateOp:
    if qa == qb:
        raise ValueError(f"SWAP needs distinct qubits, got {qa} twice")
    return GateOp(TWO_QUBIT, swap_gate(), targets=(qa, qb), name="SWAP")


def permutation_op(perm: BasisPermutation) -> GateOp:
    if not isinstance(perm, BasisPermutation):
        perm = BasisPermutation(perm)
    return GateOp(PERMUTATION, perm, name="PERM")


class Circuit:
    """A fixed-width ordered gate sequence."""

    __slots__ = ("width", "ops")

    def __init__(self, width: int, ops=()):
        if width < 0:
            raise ValueError(f"width must be non-negative, got {width}")
        self.width = width
        self.ops: list[GateOp] = []
        for op in ops:
            self.append(op)

    @property
    def gate_count(self) -> int:
        return len(self.ops)

    def append(self, op: GateOp) -> "Circuit":
        """Add ``op`` at the end, after checking it fits the width."""
        for q in op.qubits():
            if not 0 <= q < self.width:
                raise ValueError(f"qubit index {q} out of range for width {self.width}")
        if op.kind == PERMUTATION and op.payload.num_qubits != self.width:
            raise ValueError(
                f"permutation acts on {op.payload.num_qubits} qubits, circuit width is {self.width}"
            )
        self.ops.append(op)
        return self

    def run(self, state: QuantumState) -> QuantumState:
        """Apply every op in order, mutating and returning ``state``."""
        if state.num_qubits != self.width:
            raise ValueError(
                f"circuit width {self.width} does not match state with {state.num_qubits} qubits"
            )
        for op in self.ops:
            if op.kind == SINGLE:
                state.apply_single(op.payload, op.target)
            elif op.kind == CONTROLLED:
                state.apply_controlled(op.payload, op.controls, op.target)
            elif op.kind == TWO_QUBIT:
                state.apply_two_qubit(op.payload, *op.targets)
            else:
                state.apply_permutation(op.payload)
        return state

    def inverse(self) -> "Circuit":
        """Inverse gates in reversed order; undoes ``run`` on any state."""
        inv = Circuit(self.width)
        inv.ops = [op.inverse() for op in reversed(self.ops)]
        return inv

    def embedded(self, width: int, offset: int = 0) -> "Circuit":
        """This circuit acting on qubits ``offset .. offset+self.width`` of a wider register."""
        if offset < 0 or offset + self.width > width:
            raise ValueError(
                f"cannot embed width-{self.width} circuit at offset {offset} in {width} qubits"
            )
        out = Circuit(width)
        out.ops = [op.shifted(offset) for op in self.ops]
        return out

    def __add__(self, other: "Circuit") -> "Circuit":
        if not isinstance(other, Circuit):
            return NotImplemented
        if self.width != other.width:
            raise ValueError(f"cannot concatenate widths {self.width} and {other.width}")
        out = Circuit(self.width)
        out.ops = list(self.ops) + list(other.ops)
        return out

    def __iter__(self):
        return iter(self.ops)

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.width == other.width and self.ops == other.ops

    def __repr__(self):
        return f"Circuit(width={self.width}, gate_count={self.gate_count})"

    # -- text format -----------------------------------------------------

    def serialize(self) -> str:
        lines = [f"qubits {self.width}"]
        for op in self.ops:
            lines.append(_op_line(op))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Circuit":
        return _parse(cls, text)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _matrix_fields(m: np.ndarray) -> str:
    return " ".join(f"{_fmt(e.real)} {_fmt(e.imag)}" for e in m.ravel())


def _op_line(op: GateOp) -> str:
    name = op.name
    if op.kind == SINGLE:
        if name in ("H", "X"):
            return f"{name} {op.target}"
        if name == "PHASE":
            return f"PHASE {op.target} {_fmt(op.angle)}"
        return f"U2 {op.target} {_matrix_fields(op.payload.matrix)}"
    if op.kind == CONTROLLED:
        ctrls = sorted(op.controls)
        if name == "CNOT" and len(ctrls) == 1:
            return f"CNOT {ctrls[0]} {op.target}"
        if name == "CCNOT" and len(ctrls) == 2:
            return f"CCNOT {ctrls[0]} {ctrls[1]} {op.target}"
        if name == "CPHASE" and len(ctrls) == 1:
            return f"CPHASE {ctrls[0]} {op.target} {_fmt(op.angle)}"
        raise ValueError(f"cannot serialize generic controlled op {op!r}: no line form")
    if op.kind == TWO_QUBIT:
        qa, qb = op.targets
        return f"U4 {qa} {qb} {_matrix_fields(op.payload.matrix)}"
    raise ValueError("cannot serialize a basis-permutation op: no line form")


# token counts after the op name: (qubit args, numeric args)
_ARITY = {
    "H": (1, 0),
    "X": (1, 0),
    "PHASE": (1, 1),
    "CNOT": (2, 0),
    "CCNOT": (3, 0),
    "CPHASE": (2, 1),
    "U2": (1, 8),
    "U4": (2, 32),
}


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise CircuitParseError(f"line {lineno}: invalid qubit index {tok!r}") from None


def _parse_float(tok: str, lineno: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise CircuitParseError(f"line {lineno}: invalid number {tok!r}") from None


def _parse(cls, text: str):
    width: int | None = None
    parsed: list[tuple[int, GateOp]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        op_name = toks[0]

        if op_name == "qubits":
            if parsed or width is not None:
                raise CircuitParseError(f"line {lineno}: 'qubits' header must come first")
            if len(toks) != 2:
                raise CircuitParseError(f"line {lineno}: expected 'qubits <n>'")
            width = _parse_int(toks[1], lineno)
            if width < 0:
                raise CircuitParseError(f"line {lineno}: negative qubit count {width}")
            continue

        if op_name not in _ARITY:
            raise CircuitParseError(f"line {lineno}: unknown operation {op_name!r}")
        n_qubits, n_nums = _ARITY[op_name]
        args = toks[1:]
        if len(args) != n_qubits + n_nums:
            plural = "s" if n_qubits != 1 else ""
            msg = f"line {lineno}: expected {n_qubits} qubit argument{plural}"
            if op_name in ("PHASE", "CPHASE"):
                msg += " and an angle"
            elif n_nums:
                msg += f" and {n_nums} matrix values"
            raise CircuitParseError(msg)
        qubits = [_parse_int(t, lineno) for t in args[:n_qubits]]
        nums = [_parse_float(t, lineno) for t in args[n_qubits:]]

        try:
            op = _build_op(op_name, qubits, nums)
        except ValueError as exc:
            raise CircuitParseError(f"line {lineno}: {exc}") from None
        parsed.append((lineno, op))

    if width is None:
        width = 1 + max((q for _, op in parsed for q in op.qubits()), default=-1)
        width = max(width, 0)

    circuit = cls(width)
    for lineno, op in parsed:
        try:
            circuit.append(op)
        except ValueError as exc:
            raise CircuitParseError(f"line {lineno}: {exc}") from None
    return circuit


def _numbers_to_matrix(nums: list[float], dim: int) -> np.ndarray:
    vals = np.array(nums[0::2]) + 1j * np.array(nums[1::2])
    return vals.reshape(dim, dim)


def _build_op(op_name: str, qubits: list[int], nums: list[float]) -> GateOp:
    if op_name == "H":
        return h(qubits[0])
    if op_name == "X":
        return x(qubits[0])
    if op_name == "PHASE":
        return phase(qubits[0], nums[0])
    if op_name == "CNOT":
        return cnot(qubits[0], qubits[1])
    if op_name == "CCNOT":
        return ccnot(qubits[0], qubits[1], qubits[2])
    if op_name == "CPHASE":
        return cphase(qubits[0], qubits[1], nums[0])
    if op_name == "U2":
        return u2(qubits[0], Gate2(_numbers_to_matrix(nums, 2)))
    return u4(qubits[0], qubits[1], Gate4(_numbers_to_matrix(nums, 4)))
