"""Comparing two circuits we can only run, not inspect.

Three protocols, in increasing order of required hardware power:

  swap test        - run each box on half of a fresh entangled state,
                     compare the results; 4n qubits, phase-blind.
  conditional test - apply either box conditioned on a control qubit;
                     2n+1 qubits, sees the relative phase.
  inverse test     - if U's description is known classically, undo it
                     after the black box; 2n qubits.

All three fire with a probability tied to the average-case distance,
so a few dozen repetitions suffice for a one-gate error.
"""

from qverify import (
    BlackBoxUnitary,
    Circuit,
    gate,
    one_gate_pair,
    repeat_until_confident,
    run_conditional_test,
    run_inverse_test,
    run_swap_test,
)
from qverify.protocols import ALL_CAPABILITIES

base = Circuit(2, (gate("H", 0), gate("CNOT", 0, 1), gate("S", 1)))
u, ut = one_gate_pair(base, 0, gate("I", 0))  # the Hadamard silently dropped

box_u = BlackBoxUnitary(u, ALL_CAPABILITIES)
box_ut = BlackBoxUnitary(ut, ALL_CAPABILITIES)
box_same = BlackBoxUnitary(u, ALL_CAPABILITIES)

print("Two chips are supposed to implement the same 2-qubit circuit; one")
print("came off the line with its first Hadamard replaced by a wire.")
print()

shots = 20000
print(f"swap test, {shots} shots each:")
good = run_swap_test(box_u, box_same, shots, seed=1)
bad = run_swap_test(box_u, box_ut, shots, seed=2)
print(f"  equal pair:   {good.ones_observed:6d} ones   (analytic p = {good.analytic_p:.4f})")
print(f"  faulty pair:  {bad.ones_observed:6d} ones   (analytic p = {bad.analytic_p:.4f})")
print(f"  verdicts: {good.verdict} / {bad.verdict}")
print()

print("conditional test (sees global phase):")
minus_u = Circuit(2, u.gates + (gate("Z", 0), gate("X", 0), gate("Z", 0), gate("X", 0)))
box_minus = BlackBoxUnitary(minus_u, ALL_CAPABILITIES)
swap_p = run_swap_test(box_u, box_minus, 100, seed=3).analytic_p
cond_p = run_conditional_test(box_u, box_minus, 100, seed=3).analytic_p
print(f"  U vs -U:  swap test p = {swap_p:.4f}   conditional test p = {cond_p:.4f}")
print("  The sign difference is invisible in isolation but matters the")
print("  moment the circuit is used as a controlled subroutine.")
print()

print("inverse test (U known classically, half the qubits):")
inv = run_inverse_test(u, box_ut, shots, seed=4)
print(f"  faulty pair: {inv.ones_observed} rejections, analytic p = {inv.analytic_p:.4f}")
print()

print("repetition schedule: how many runs until we are confident?")
for eps, delta in [(0.5, 1e-2), (0.5, 1e-6), (0.1, 1e-2)]:
    verdict, runs = repeat_until_confident(
        lambda s: run_swap_test(box_u, box_ut, s, seed=5), eps=eps, delta=delta
    )
    print(f"  eps = {eps:4.2f}, delta = {delta:.0e}:  {runs:5d} runs -> {verdict}")
print()
print("The schedule ceil(ln(1/delta) / (eps^2 / 2^(k+2))) is one-sided:")
print("an equal pair can never be declared different.")
