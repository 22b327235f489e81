"""Execution backends: enumerate them, pick one, run circuits on it.

Only local simulator backends ship here (guest-only model); the registry
surface is the seam where remote backends would plug in. A backend object
provides:

* ``info`` — a :class:`BackendInfo`
* ``run(circuit, shots, seed)`` — sample counts
* ``evolve(circuit)`` — deterministic statevector of the circuit, used by
  protocol drivers that need direct state access (BB84 transport)
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass

from . import sim
from .errors import CapacityError, UnknownBackendError

LOCAL_BACKEND_NAME = "local_statevector"


@dataclass(frozen=True)
class BackendInfo:
    name: str
    description: str
    max_qubits: int
    deterministic: bool  # accepts a seed and reproduces runs exactly


class LocalStatevectorBackend:
    """Embedded dense statevector simulator."""

    def __init__(self, max_qubits: int = sim.DEFAULT_QUBIT_CAP):
        self.info = BackendInfo(
            name=LOCAL_BACKEND_NAME,
            description="embedded dense statevector simulator (H, X, CNOT)",
            max_qubits=max_qubits,
            deterministic=True,
        )

    def run(self, circuit: sim.Circuit, shots: int, seed: int) -> sim.Counts:
        return sim.run(circuit, shots, seed, cap=self.info.max_qubits)

    def evolve(self, circuit: sim.Circuit) -> sim.Statevector:
        return sim.evolve(circuit, cap=self.info.max_qubits)


@dataclass
class ExecutionResult:
    """Counts plus the metadata needed to replay the run exactly."""

    counts: sim.Counts
    backend_name: str
    shots: int
    seed: int


def fresh_seed() -> int:
    """Entropy-derived seed; always recorded so any run is replayable."""
    return secrets.randbits(63)


class BackendRegistry:
    """Named backends, listed in registration order."""

    def __init__(self):
        self._backends: dict[str, object] = {}

    def register(self, backend) -> None:
        name = backend.info.name
        if name in self._backends:
            raise ValueError(f"backend name {name!r} already registered")
        self._backends[name] = backend

    def list_backends(self) -> list[BackendInfo]:
        return [b.info for b in self._backends.values()]

    def get(self, name: str):
        try:
            return self._backends[name]
        except KeyError:
            known = ", ".join(self._backends) or "none"
            raise UnknownBackendError(
                f"no backend named {name!r} (available: {known})"
            ) from None

    def execute(
        self,
        backend_name: str,
        circuit: sim.Circuit,
        shots: int,
        seed: int | None = None,
    ) -> ExecutionResult:
        """Run a circuit; a missing seed is drawn from entropy and recorded."""
        backend = self.get(backend_name)
        if circuit.num_qubits > backend.info.max_qubits:
            raise CapacityError(
                f"circuit needs {circuit.num_qubits} qubits, backend "
                f"{backend_name!r} caps at {backend.info.max_qubits}"
            )
        effective_seed = fresh_seed() if seed is None else seed
        counts = backend.run(circuit, shots, effective_seed)
        return ExecutionResult(counts, backend_name, shots, effective_seed)


def default_registry(max_qubits: int = sim.DEFAULT_QUBIT_CAP) -> BackendRegistry:
    registry = BackendRegistry()
    registry.register(LocalStatevectorBackend(max_qubits=max_qubits))
    return registry
