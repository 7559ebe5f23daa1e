"""States, gates, circuit files, and seeded measurement, end to end.

Builds a Bell pair twice (once with direct gate calls, once from circuit
text), then histograms measurements to show the 50/50 correlated outcomes.

Run:  python demos/bell_and_measurement.py
"""

import numpy as np

from shorsim import Circuit, basis_state, hadamard, not_gate

# --- direct gate application -------------------------------------------
# Qubit 0 is the least-significant bit of the basis index, so |01> means
# "qubit 0 set".  Start in |00>, superpose qubit 0, entangle qubit 1.
state = basis_state(2, 0)
state.apply_single(hadamard(), 0)
state.apply_controlled(not_gate(), {0}, 1)

print("Bell state amplitudes:", np.round(state.amplitudes, 6))
print("probabilities:        ", np.round(state.probabilities(), 6))

# --- the same circuit as text ------------------------------------------
text = """
qubits 2
H 0        # superpose the low qubit
CNOT 0 1   # copy it coherently onto the high qubit
"""
circuit = Circuit.parse(text)
print("\nparsed circuit has", circuit.gate_count, "ops; round trip:")
print(circuit.serialize())

# --- seeded measurement ------------------------------------------------
# A fixed seed reproduces the same outcomes bit for bit.
rng = np.random.default_rng(7)
counts = {0: 0, 3: 0}
for _ in range(10_000):
    shot = circuit.run(basis_state(2, 0))
    counts[shot.measure_all(rng).value] += 1
print("10k shots:", counts, "(only 00 and 11 ever appear)")

# --- undoing a computation ---------------------------------------------
# Circuits are purely unitary, so the inverse circuit exactly undoes them.
state = circuit.run(basis_state(2, 0))
circuit.inverse().run(state)
print("\nafter circuit + inverse, back in |00>:", np.round(state.amplitudes.real, 12))
