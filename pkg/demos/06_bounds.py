"""How many qubits does protection cost?

Packing: the syndrome subspaces of a t-error-correcting code are mutually
orthogonal, so 2^l * sum_{i<=t} 3^i C(n,i) <= 2^n (the quantum analogue of
the Hamming bound). Covering: a maximal code cannot leave room for another
codeword, which guarantees at least ceil(2^n / V(n,2t)) codewords (the
quantum analogue of the Gilbert-Varshamov bound). Everything here is exact
integer arithmetic.
"""

import numpy as np

from qeclab import (
    asymptotic_gv_rate,
    asymptotic_hamming_rate,
    finite_hamming_rate,
    gv_guaranteed_codewords,
    hamming_holds,
    hamming_rate_root,
    min_n_gv,
    min_n_hamming,
    sphere_volume,
)

print("== one logical qubit, one corrected error ==")
print("%3s %14s %9s %12s" % ("n", "2*V(n,1)", "2^n", "packing ok"))
for n in range(1, 11):
    lhs = 2 * sphere_volume(n, 1)
    print("%3d %14d %9d %12s" % (n, lhs, 1 << n, hamming_holds(n, 1, 1)))
print("smallest block by packing:  n = %d" % min_n_hamming(1, 1))
print("note n = 5 packs with equality -- no syndrome dimension is wasted")
print()

print("== covering guarantee for the same task ==")
print("%3s %10s %22s" % ("n", "V(n,2)", "guaranteed codewords"))
for n in range(4, 12):
    print("%3d %10d %22d" % (n, sphere_volume(n, 2), gv_guaranteed_codewords(n, 1)))
print("smallest block by covering: n = %d" % min_n_gv(1, 1))
print()

print("== scaling table ==")
print("%3s %3s %14s %10s" % ("l", "t", "min n (pack)", "min n (cover)"))
for l in (1, 2, 4):
    for t in (1, 2, 3):
        print("%3d %3d %14d %10d" % (l, t, min_n_hamming(l, t), min_n_gv(l, t)))
print()

print("== asymptotic rates ==")
print("tau = t/n    packing rate   covering rate   rate at n=1000")
for tau in (0.01, 0.02, 0.05, 0.1, 0.15):
    finite = finite_hamming_rate(1000, int(tau * 1000))
    print("  %.2f      %+.4f        %+.4f         %+.4f"
          % (tau, asymptotic_hamming_rate(tau), asymptotic_gv_rate(tau), finite))
root = hamming_rate_root()
print("the packing rate hits zero at tau = %.6f:" % root)
print("beyond roughly %.1f%% errors per qubit, no code keeps a positive rate."
      % (100 * root))
