"""Exhaustive vs dyadic syndrome measurement.

Identifying which syndrome subspace holds the corrupted block is a chain of
yes/no projective measurements. The exhaustive walk asks about one subspace
at a time; the dyadic walk halves the candidate list with each question,
measuring unions of subspaces. Both collapse the state the same way, so the
outcome distributions agree to machine precision -- only the number of
measurements differs.
"""

import numpy as np

from qeclab import (
    apply_channel,
    build_syndrome_table,
    correct,
    encode,
    load_code,
    make_decoherence,
    random_channel,
    syndrome_distribution,
    trial_generator,
)

code = load_code("shor9")
table = build_syndrome_table(code, 1)
print("code %s: %d syndrome subspaces (%d of %d dimensions used)"
      % (code.name, len(table.patterns),
         2 * len(table.patterns), 1 << code.n))

rng = trial_generator(55, 0)
logical = rng.standard_normal(2) + 1j * rng.standard_normal(2)
ref = encode(code, logical / np.linalg.norm(logical))
noisy = apply_channel(ref, 6, random_channel(4, rng))

print("\n== the distributions agree exactly ==")
labels, pe = syndrome_distribution(noisy, table, "exhaustive")
_, ph = syndrome_distribution(noisy, table, "hierarchical")
print("max |p_exhaustive - p_hierarchical| = %.3g" % np.max(np.abs(pe - ph)))
print("support of the distribution:")
for lbl, p in zip(labels, pe):
    if p > 1e-12:
        print("  %-28s %.4f" % (lbl, p))

print("\n== but the measurement counts differ ==")
counts = {"exhaustive": [], "hierarchical": []}
for trial in range(400):
    for strategy in counts:
        rep = correct(noisy, code, 1, strategy, trial_generator(56, trial),
                      ref, table=table)
        counts[strategy].append(len(rep.outcome_trace))
        assert rep.fidelity >= 1 - 1e-8
for strategy, ns in counts.items():
    print("  %-13s mean %.2f  min %d  max %d  (of %d subspaces)"
          % (strategy, np.mean(ns), min(ns), max(ns), len(table.patterns)))

print("\n== a worked dyadic trace ==")
rep = correct(noisy, code, 1, "hierarchical", trial_generator(56, 7), ref,
              table=table)
for label, outcome in rep.outcome_trace:
    print("  measure %-32s -> %d" % (label, outcome))
print("syndrome %s, fidelity %.12f" % (rep.syndrome, rep.fidelity))

print("\n== complete tables skip the membership question ==")
phase3 = load_code("phase3")
ptable = build_syndrome_table(phase3, 1, pattern_filter="phase-only")
print("phase3 phase-only table complete:", ptable.is_complete)
ref3 = encode(phase3, np.array([0.6, 0.8]))
noisy3 = apply_channel(ref3, 1, make_decoherence(0.0))
rep3 = correct(noisy3, phase3, 1, "hierarchical", trial_generator(57, 0),
               ref3, pattern_filter="phase-only", table=ptable)
print("four subspaces resolved in %d measurements: %s"
      % (len(rep3.outcome_trace), rep3.outcome_trace))
