"""The whole factoring pipeline, narrated run by run.

Full simulation for 15, 21, 35 (input register sized so 2^n >= N^2), then
the classical-order mode on 12827 = 101 x 127, whose full simulation would
need ~42 qubits.

Run:  python demos/factoring_walkthrough.py
"""

from shorsim import ShorConfig, run_shor

for n, seed in ((15, 0), (21, 1), (35, 1)):
    result = run_shor(ShorConfig(n, seed=seed))
    print(f"N = {n} (seed {seed}): {result.factors[0]} x {result.factors[1]}"
          f"   [{result.gate_estimate} elementary ops across {len(result.runs)} run(s)]")
    for i, run in enumerate(result.runs, start=1):
        conv = ", ".join(f"{c.p}/{c.q}" for c in run.convergents)
        print(f"  run {i}: a={run.a}, measured y={run.y} of 2^{run.n}"
              f" (f register read {run.f_outcome})")
        print(f"         convergents {conv}")
        print(f"         -> candidate period {run.candidate_r}, {run.status}")
    print()

# Beyond dense-simulation scale: get the order classically, keep the
# continued-fraction/post-processing machinery identical.
result = run_shor(ShorConfig(12827, mode="classical", seed=0))
run = result.runs[-1]
print(f"N = 12827 (classical mode): base a={run.a} has order r={run.candidate_r};")
print(f"gcd(a^(r/2) -+ 1, N) gives {result.factors[0]} x {result.factors[1]}")
