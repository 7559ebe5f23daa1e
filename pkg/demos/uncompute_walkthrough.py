"""Garbage uncomputing: compute, copy the answer out, uncompute.

A reversible computation of f(x) usually drags intermediate junk g(x) along.
Wrapping it as  cf -> copy f -> inverse(cf)  leaves exactly |x, 0, f(x)>.
The last section shows why the cleanup matters for period finding: with the
garbage kept, the joint map (f, g) loses the periodicity of f itself.

Run:  python demos/uncompute_walkthrough.py
"""

import numpy as np

from shorsim import Circuit, basis_state, compute_copy_uncompute, modexp_trace, multi_and_circuit
from shorsim import circuit as circ

# --- a CCNOT computes AND, inputs survive as garbage --------------------
cf = Circuit(3, [circ.ccnot(0, 1, 2)])
wrapped = compute_copy_uncompute(cf, x_width=2, f_width=1, g_width=1)
print("AND of two bits, uncomputed (input a,b -> final |a, b, work, copy>):")
for a in (0, 1):
    for b in (0, 1):
        out = wrapped.run(basis_state(4, a | (b << 1)))
        idx = int(np.flatnonzero(out.amplitudes)[0])
        print(f"  a={a} b={b}  ->  basis {idx:04b}  (copy bit = {idx >> 3})")

# --- AND of many bits via an ancilla chain ------------------------------
c5 = multi_and_circuit(5)
print(f"\nAND of 5 bits: width {c5.width} (5 inputs, 3 ancillas, 1 result), "
      f"{c5.gate_count} CCNOTs")
for bits in (0b11111, 0b10111):
    out = c5.run(basis_state(c5.width, bits))
    idx = int(np.flatnonzero(out.amplitudes)[0])
    print(f"  inputs {bits:05b} -> result {idx >> (c5.width - 1)}, "
          f"ancillas {(idx >> 5) & 0b111:03b}")

# --- why the garbage has to go ------------------------------------------
# f(x) = 2^x mod 15 has period 4.  A square-and-multiply evaluator leaves a
# per-bit accumulator trace; keep it and the joint map is no longer periodic.
print("\nf(x) = 2^x mod 15 with its square-and-multiply trace:")
print("  x   f(x)  trace")
for x in range(8):
    fx, trace = modexp_trace(2, x, 15, 4)
    print(f"  {x}    {fx:2d}   {trace}")
f_vals = [modexp_trace(2, x, 15, 4)[0] for x in range(16)]
joint = [modexp_trace(2, x, 15, 4) for x in range(16)]
print("f(x) == f(x+4) for all x:       ", all(f_vals[x] == f_vals[x + 4] for x in range(12)))
print("(f,g)(x) == (f,g)(x+4) for all x:", all(joint[x] == joint[x + 4] for x in range(12)))
