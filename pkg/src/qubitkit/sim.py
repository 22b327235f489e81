"""Dense statevector simulation of small {H, X, CNOT} circuits.

Bit-ordering convention, used everywhere in this package:

* qubit 0 is the least-significant bit of an amplitude index, so the
  basis state with qubit 0 = 1 and all others 0 sits at index 1;
* outcome bitstrings are printed most-significant qubit first, i.e.
  ``format(index, f"0{n}b")`` — qubit n-1 is the leftmost character.

Randomness comes from numpy's PCG64 generator. Outcome sampling is
inverse-CDF over ``Generator.random()`` uniforms (cumsum + searchsorted),
so equal seeds give bit-identical counts on any platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping

import numpy as np

from .errors import CapacityError

DEFAULT_QUBIT_CAP = 24

GATE_KINDS = ("H", "X", "CNOT")

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def make_rng(seed: int) -> np.random.Generator:
    """Seeded PCG64 generator; the single RNG used for all sampling."""
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(master: int, *parts: int) -> int:
    """Child seed from (master, parts), independent of evaluation order.

    Work items seeded this way (heatmap cells, repeated protocol runs) give
    identical results no matter how they are scheduled across workers.
    """
    sequence = np.random.SeedSequence([master, *parts])
    return int(sequence.generate_state(1, np.uint64)[0])


def bitstring(index: int, num_qubits: int) -> str:
    """Outcome label for an amplitude index (most-significant qubit first)."""
    return format(index, f"0{num_qubits}b")


@dataclass(frozen=True)
class Gate:
    """One gate application; ``targets`` is (qubit,) or (control, target)."""

    kind: str
    targets: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind == "CNOT" else 1
        if len(self.targets) != arity:
            raise ValueError(f"{self.kind} takes {arity} target(s), got {self.targets}")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"{self.kind} targets must be distinct, got {self.targets}")
        if any(t < 0 for t in self.targets):
            raise IndexError(f"negative qubit index in {self.targets}")


@dataclass
class Circuit:
    """Ordered gate list over ``num_qubits`` qubits.

    ``measured`` records a terminal measure-all directive; it controls the
    [M] column in :func:`draw`. ``run`` always samples all qubits at the
    end regardless (measurement here is terminal and total by design).
    """

    num_qubits: int
    gates: list[Gate] = field(default_factory=list)
    measured: bool = False

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError(f"need at least one qubit, got {self.num_qubits}")
        for gate in self.gates:
            self._check(gate)

    def _check(self, gate: Gate) -> None:
        for t in gate.targets:
            if not 0 <= t < self.num_qubits:
                raise IndexError(
                    f"gate {gate.kind} targets qubit {t}, circuit has {self.num_qubits}"
                )

    def append(self, gate: Gate) -> "Circuit":
        self._check(gate)
        self.gates.append(gate)
        return self

    def h(self, qubit: int) -> "Circuit":
        return self.append(Gate("H", (qubit,)))

    def x(self, qubit: int) -> "Circuit":
        return self.append(Gate("X", (qubit,)))

    def cnot(self, control: int, target: int) -> "Circuit":
        return self.append(Gate("CNOT", (control, target)))

    def measure_all(self) -> "Circuit":
        self.measured = True
        return self


@dataclass
class Statevector:
    """Complex amplitudes of an ``num_qubits``-qubit register (length 2^n)."""

    num_qubits: int
    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def new_zero_state(n: int, cap: int = DEFAULT_QUBIT_CAP) -> Statevector:
    """|0...0> on n qubits; n outside [1, cap] raises CapacityError."""
    if not 1 <= n <= cap:
        raise CapacityError(f"qubit count {n} outside supported range 1..{cap}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return Statevector(n, amps)


def apply_gate(state: Statevector, gate: Gate) -> Statevector:
    """Return the state transformed by one gate (the input is not touched)."""
    for t in gate.targets:
        if not 0 <= t < state.num_qubits:
            raise IndexError(
                f"gate {gate.kind} targets qubit {t}, state has {state.num_qubits}"
            )
    amps = state.amplitudes
    if gate.kind == "H":
        q = gate.targets[0]
        t = amps.reshape(-1, 2, 1 << q)
        out = np.empty_like(t)
        a0, a1 = t[:, 0, :], t[:, 1, :]
        out[:, 0, :] = (a0 + a1) * _INV_SQRT2
        out[:, 1, :] = (a0 - a1) * _INV_SQRT2
        return Statevector(state.num_qubits, out.reshape(-1))
    if gate.kind == "X":
        q = gate.targets[0]
        idx = np.arange(amps.size)
        return Statevector(state.num_qubits, amps[idx ^ (1 << q)])
    # CNOT: flip the target bit wherever the control bit is 1.
    control, target = gate.targets
    idx = np.arange(amps.size)
    src = np.where((idx >> control) & 1 == 1, idx ^ (1 << target), idx)
    return Statevector(state.num_qubits, amps[src])


def evolve(circuit: Circuit, cap: int = DEFAULT_QUBIT_CAP) -> Statevector:
    """Apply the circuit's gates in order to the zero state."""
    state = new_zero_state(circuit.num_qubits, cap=cap)
    for gate in circuit.gates:
        state = apply_gate(state, gate)
    return state


def sample_measurement(state: Statevector, rng: np.random.Generator) -> str:
    """Draw one terminal measure-all outcome under the Born rule."""
    cum = np.cumsum(state.probabilities())
    u = rng.random() * cum[-1]
    index = min(int(np.searchsorted(cum, u, side="right")), state.dim - 1)
    return bitstring(index, state.num_qubits)


@dataclass
class Counts(Mapping):
    """Outcome histogram: bitstring -> occurrences, summing to ``shots``."""

    counts: dict[str, int]
    shots: int

    def __post_init__(self):
        total = sum(self.counts.values())
        if total != self.shots:
            raise ValueError(f"counts sum to {total}, expected shots={self.shots}")

    def __getitem__(self, outcome: str) -> int:
        return self.counts[outcome]

    def __iter__(self) -> Iterator[str]:
        return iter(self.counts)

    def __len__(self) -> int:
        return len(self.counts)


def run(circuit: Circuit, shots: int, seed: int, cap: int = DEFAULT_QUBIT_CAP) -> Counts:
    """Evolve from |0...0>, then sample ``shots`` measure-all outcomes.

    Equal (circuit, shots, seed) gives bit-identical Counts. Keys are
    sorted by outcome.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    state = evolve(circuit, cap=cap)
    cum = np.cumsum(state.probabilities())
    u = make_rng(seed).random(shots) * cum[-1]
    indices = np.minimum(np.searchsorted(cum, u, side="right"), state.dim - 1)
    values, tallies = np.unique(indices, return_counts=True)
    table = {
        bitstring(int(v), circuit.num_qubits): int(c) for v, c in zip(values, tallies)
    }
    return Counts(table, shots)


_CELL = {
    "H": "─[H]─",
    "X": "─[X]─",
    "control": "──●──",
    "target": "──⊕──",
    "wire": "─────",
    "measure": "─[M]─",
}


def draw(circuit: Circuit) -> str:
    """Text diagram: one row per qubit, one column per gate, in order."""
    labels = [f"q{i}:" for i in range(circuit.num_qubits)]
    width = max(len(s) for s in labels)
    rows = [f"{label:<{width}} ─" for label in labels]
    for gate in circuit.gates:
        for q in range(circuit.num_qubits):
            if gate.kind == "CNOT" and q == gate.targets[0]:
                cell = _CELL["control"]
            elif gate.kind == "CNOT" and q == gate.targets[1]:
                cell = _CELL["target"]
            elif gate.kind != "CNOT" and q == gate.targets[0]:
                cell = _CELL[gate.kind]
            else:
                cell = _CELL["wire"]
            rows[q] += cell
    if circuit.measured:
        rows = [row + _CELL["measure"] for row in rows]
    return "\n".join(row + "─" for row in rows)
