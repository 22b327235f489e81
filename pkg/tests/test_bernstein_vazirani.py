import math

import numpy as np
import pytest

from qubitkit.algorithms.bernstein_vazirani import (
    bv_circuit,
    bv_run,
    classical_oracle,
    classical_solve,
    input_register_state,
    recovered_key,
    state_after_oracle,
)
from qubitkit.backends import default_registry
from qubitkit.errors import ValidationError


def all_keys(n):
    return [format(v, f"0{n}b") for v in range(2**n)]


def test_classical_oracle_values():
    assert classical_oracle("101", "100") == 1
    assert classical_oracle("101", "111") == 0  # 1+0+1 mod 2
    for x in all_keys(3):
        assert classical_oracle("000", x) == 0


def test_classical_oracle_length_mismatch():
    with pytest.raises(ValueError):
        classical_oracle("101", "10")


def test_classical_solve_uses_n_queries():
    result = classical_solve(lambda x: classical_oracle("110", x), 3)
    assert result.key == "110"
    assert result.queries == 3
    result = classical_solve(lambda x: classical_oracle("0", x), 1)
    assert result.key == "0"
    assert result.queries == 1


def test_classical_solve_recovers_random_length_10_keys():
    rng = np.random.default_rng(3)
    for _ in range(20):
        key = "".join(str(b) for b in rng.integers(0, 2, size=10))
        result = classical_solve(lambda x: classical_oracle(key, x), 10)
        assert result.key == key


def test_circuit_gate_layout():
    # X on the ancilla, H on all, one CNOT per set bit, H on inputs, measured.
    circuit = bv_circuit("011")
    kinds = [g.kind for g in circuit.gates]
    assert circuit.num_qubits == 4
    assert kinds == ["X"] + ["H"] * 4 + ["CNOT"] * 2 + ["H"] * 3
    assert circuit.gates[0].targets == (3,)
    assert circuit.measured
    # No trailing H on the ancilla.
    assert all(g.targets[0] != 3 for g in circuit.gates[7:])


def test_cnot_count_matches_popcount():
    assert sum(g.kind == "CNOT" for g in bv_circuit("00000").gates) == 0
    assert sum(g.kind == "CNOT" for g in bv_circuit("011").gates) == 2
    minimal = bv_circuit("1")
    assert minimal.num_qubits == 2
    assert sum(g.kind == "CNOT" for g in minimal.gates) == 1


def test_invalid_key_rejected():
    for bad in ("", "012", "ab"):
        with pytest.raises(ValidationError, match="key"):
            bv_circuit(bad)


def test_phase_oracle_matches_classical_sign_pattern():
    # After the oracle block, input amplitude x must carry (-1)^(key.x)/sqrt(2^n).
    for n in range(1, 7):
        scale = 1 / math.sqrt(2**n)
        for key in all_keys(n):
            amps = state_after_oracle(key)
            key_int = int(key, 2)
            expected = np.array(
                [
                    scale * (-1) ** bin(key_int & x).count("1")
                    for x in range(2**n)
                ]
            )
            assert np.allclose(amps, expected, atol=1e-12), key


def test_pre_measurement_state_is_the_key_basis_state():
    for key in ("1", "011", "10110"):
        amps = input_register_state(key)
        expected = np.zeros(2 ** len(key))
        expected[int(key, 2)] = 1.0
        assert np.allclose(amps, expected, atol=1e-12)


def test_recovery_examples():
    backends = default_registry()
    assert bv_run("011", backends, seed=0) == "011"
    assert bv_run("0000000000", backends, seed=1) == "0000000000"


def test_recovery_of_random_keys_any_seed():
    backends = default_registry()
    rng = np.random.default_rng(19)
    for trial in range(60):
        n = int(rng.integers(1, 11))
        key = "".join(str(b) for b in rng.integers(0, 2, size=n))
        assert bv_run(key, backends, seed=trial) == key


def test_single_quantum_query_beats_n_classical_queries():
    key = "101101"
    classical = classical_solve(lambda x: classical_oracle(key, x), len(key))
    oracle_blocks = 1  # bv_circuit embeds the oracle exactly once
    assert classical.queries == len(key)
    assert oracle_blocks < classical.queries


def test_recovered_key_strips_ancilla():
    assert recovered_key("0101") == "101"
