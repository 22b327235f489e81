"""Bernstein-Vazirani key recovery.

The hidden key s defines the parity function f(x) = s.x mod 2. Classically
recovering s costs one oracle query per bit; quantumly a single query
suffices: a phase oracle built from one CNOT per set key bit flips the sign
of each amplitude by (-1)^(s.x), and Hadamards turn that phase pattern back
into the basis state |s>.

Qubit layout: key character i (leftmost is position 0) rides on input qubit
n-1-i, the phase ancilla is qubit n. Under the package bit-ordering this
makes the measured input register print byte-identical to the key as typed;
the ancilla is the first printed character and is never part of the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..backends import BackendRegistry, LOCAL_BACKEND_NAME
from ..errors import ValidationError
from ..framework import AlgorithmDescriptor, ParamSpec, Params
from ..sim import DEFAULT_QUBIT_CAP, Circuit, Counts, evolve

_SQRT_HALF = 1.0 / np.sqrt(2.0)


def _check_key(key: str) -> str:
    if not key or set(key) - {"0", "1"}:
        raise ValidationError("key", f"expected a bitstring over {{0,1}}, got {key!r}")
    return key


def classical_oracle(key: str, x: str) -> int:
    """f(x) = sum_i key_i * x_i mod 2."""
    _check_key(key)
    if len(x) != len(key):
        raise ValueError(f"candidate length {len(x)} != key length {len(key)}")
    return sum(int(k) & int(c) for k, c in zip(key, x)) % 2


@dataclass(frozen=True)
class BvSolveResult:
    key: str
    queries: int


def classical_solve(oracle: Callable[[str], int], n: int) -> BvSolveResult:
    """Recover the key with exactly n queries, one unit vector per bit."""
    bits = []
    for i in range(n):
        probe = "0" * i + "1" + "0" * (n - 1 - i)
        bits.append(str(oracle(probe)))
    return BvSolveResult("".join(bits), queries=n)


def _oracle_prefix(key: str) -> Circuit:
    """X on the ancilla, H everywhere, then one CNOT per set key bit."""
    n = len(key)
    circuit = Circuit(n + 1)
    circuit.x(n)
    for q in range(n + 1):
        circuit.h(q)
    for i, bit in enumerate(key):
        if bit == "1":
            circuit.cnot(n - 1 - i, n)
    return circuit


def bv_circuit(key: str) -> Circuit:
    """Full recovery circuit: oracle prefix, H on the inputs, measure.

    Contains exactly popcount(key) CNOTs. The ancilla gets no trailing H;
    its measured bit is noise and interpretation drops it.
    """
    _check_key(key)
    circuit = _oracle_prefix(key)
    for q in range(len(key)):
        circuit.h(q)
    return circuit.measure_all()


def _project_out_ancilla(amplitudes: np.ndarray, n: int) -> np.ndarray:
    # Ancilla (qubit n) stays exactly |->; contracting against it leaves
    # the input-register amplitudes.
    minus = np.array([_SQRT_HALF, -_SQRT_HALF])
    half = 1 << n
    return amplitudes[:half] * minus[0] + amplitudes[half:] * minus[1]


def state_after_oracle(key: str) -> np.ndarray:
    """Input-register amplitudes right after the oracle block.

    Index x (with key character i at bit n-1-i, i.e. index int(x_string, 2))
    should carry (-1)^(key.x) / sqrt(2^n).
    """
    _check_key(key)
    return _project_out_ancilla(evolve(_oracle_prefix(key)).amplitudes, len(key))


def input_register_state(key: str) -> np.ndarray:
    """Input-register amplitudes right before measurement (basis state |key>)."""
    _check_key(key)
    circuit = _oracle_prefix(key)
    for q in range(len(key)):
        circuit.h(q)
    return _project_out_ancilla(evolve(circuit).amplitudes, len(key))


def recovered_key(outcome: str) -> str:
    """Drop the ancilla bit (printed first) from a measured outcome."""
    return outcome[1:]


def bv_run(
    key: str,
    backends: BackendRegistry,
    backend_name: str = LOCAL_BACKEND_NAME,
    seed: int | None = None,
) -> str:
    """Single-query recovery; returns the key verbatim on every seed."""
    result = backends.execute(backend_name, bv_circuit(key), shots=1, seed=seed)
    (outcome,) = result.counts
    return recovered_key(outcome)


def _interpret(params: Params, counts: Counts) -> str:
    best = max(counts.items(), key=lambda item: (item[1], item[0]))[0]
    key = recovered_key(best)
    suffix = "" if counts.shots == 1 else f" (all {counts.shots} shots agree)" if len(
        counts
    ) == 1 else f" (most frequent of {len(counts)} outcomes)"
    return f"recovered key: {key}{suffix}"


def descriptor(cap: int = DEFAULT_QUBIT_CAP) -> AlgorithmDescriptor:
    return AlgorithmDescriptor(
        name="bernstein-vazirani",
        description="recover a hidden bitstring with a single oracle query",
        param_specs=[
            ParamSpec(
                "key",
                "bitstring",
                description="hidden key the oracle encodes",
                min_len=1,
                max_len=cap - 1,  # circuit needs len+1 qubits
            )
        ],
        build=lambda params: bv_circuit(params["key"]),
        interpret=_interpret,
        explain=(
            "The measured input register is the hidden key itself: the oracle "
            "phase pattern collapses to exactly one basis state, so the single "
            "run already gives the answer with certainty."
        ),
    )
