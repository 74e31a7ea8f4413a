"""Qubit-environment entanglement decomposed into error patterns.

A transit through a noisy channel entangles a qubit with fresh environment
levels: |gamma>|a> -> sum_gamma' |gamma'>|a_{gamma,gamma'}>. Whatever the
channel vectors are, the joint state of an n-qubit block always rewrites as

    sum_{alpha,beta} (A_alpha P_beta |psi>) (x) |R_alpha,beta>

with residues |R> built from the channel alone. Correcting entanglement
errors therefore reduces to correcting amplitude/phase patterns.
"""

import numpy as np

from qeclab import (
    BitString,
    ErrorPattern,
    apply_channel,
    apply_pattern,
    encode,
    load_code,
    make_decoherence,
    random_channel,
    residue_oracle,
    trial_generator,
    validate,
)

rng = trial_generator(44, 0)

print("== a random general-dissipation channel ==")
ch = random_channel(2, rng)
print("vector lengths: a00 %.3f  a01 %.3f  a10 %.3f  a11 %.3f"
      % tuple(np.linalg.norm(getattr(ch, v)) for v in ("a00", "a01", "a10", "a11")))
print("isometry violations:", validate(ch) or "none")
print()

print("== residues of a pure decoherence channel ==")
dec = make_decoherence(0.25)
zero = BitString.zeros(1)
one = BitString.ones(1)
for alpha, beta, label in [(zero, zero, "identity"), (zero, one, "phase flip"),
                           (one, zero, "bit flip"), (one, one, "both")]:
    r = residue_oracle([(0, dec)], alpha, beta)
    print("  |R_%s%s> (%squbit %s) norm^2 = %.4f"
          % (alpha, beta, "", label, r.norm() ** 2))
print("only the phase patterns carry weight: decoherence never flips bits,")
print("and the two residues are (a0 +/- a1)/2.")
print()

print("== decomposition identity on an encoded block ==")
code = load_code("shor9")
logical = rng.standard_normal(2) + 1j * rng.standard_normal(2)
ref = encode(code, logical / np.linalg.norm(logical))
qubit = 3
joint = apply_channel(ref, qubit, ch)

acc = np.zeros(joint.amps.shape, dtype=complex)
weights = {}
for a in (0, 1):
    for b in (0, 1):
        alpha = BitString(tuple(a if i == qubit else 0 for i in range(9)))
        beta = BitString(tuple(b if i == qubit else 0 for i in range(9)))
        residue = residue_oracle([(qubit, ch)], alpha, beta)
        errored = apply_pattern(ErrorPattern(alpha, beta), ref)
        acc += np.multiply.outer(errored.amps, residue.amps.ravel())
        weights["A%d P%d" % (a, b)] = residue.norm() ** 2
print("pattern weights (residue norms squared):")
for key, w in weights.items():
    print("  %s : %.4f" % (key, w))
print("weights sum to %.6f" % sum(weights.values()))
print("reconstruction error |sum - joint| = %.3g"
      % np.linalg.norm(acc - joint.amps))
print()

print("== residues ignore the transmitted state ==")
other = encode(code, np.array([1.0, 0.0]))
joint2 = apply_channel(other, qubit, ch)
acc2 = np.zeros(joint2.amps.shape, dtype=complex)
for a in (0, 1):
    for b in (0, 1):
        alpha = BitString(tuple(a if i == qubit else 0 for i in range(9)))
        beta = BitString(tuple(b if i == qubit else 0 for i in range(9)))
        residue = residue_oracle([(qubit, ch)], alpha, beta)
        acc2 += np.multiply.outer(
            apply_pattern(ErrorPattern(alpha, beta), other).amps,
            residue.amps.ravel())
print("same residues rebuild a different logical state: error %.3g"
      % np.linalg.norm(acc2 - joint2.amps))
