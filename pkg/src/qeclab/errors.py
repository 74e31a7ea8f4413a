"""Amplitude / phase error operators and canonical pattern enumeration.

An amplitude pattern alpha flips the marked qubits: A_alpha|v> = |v+alpha>
(mod-2 addition). A phase pattern beta flips signs: P_beta|v> =
(-1)^(beta.v) |v>. A composed pattern applies the phase part first:
A_alpha P_beta (the opposite order differs only by the global sign
(-1)^(alpha.beta), but one order has to be fixed so residue comparisons are
exact equalities).

Canonical pattern order: patterns are keyed by the integer value of the
concatenated tuple alpha||beta with position 0 as the *least* significant
bit. This starts at the all-zero pattern and walks qubit 0's amplitude
error first, so for n=3, t=1 the order is

    I, X0, X1, X2, Z0, Y0, Z1, Y1, Z2, Y2

and the phase-only order is beta = 000, 100, 010, 001. Decoder transcripts,
file outputs, and measurement walks all inherit this order.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

from .bitstrings import BitString, union_weight
from .statespace import PureState


class ErrorPattern:
    """A named operator A_alpha P_beta; also the decoder's syndrome value."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        if not isinstance(alpha, BitString):
            alpha = BitString.from_text(alpha)
        if not isinstance(beta, BitString):
            beta = BitString.from_text(beta)
        if len(alpha) != len(beta):
            raise ValueError("alpha and beta lengths differ")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def __setattr__(self, name, value):
        raise AttributeError("ErrorPattern is immutable")

    @classmethod
    def zero(cls, n):
        return cls(BitString.zeros(n), BitString.zeros(n))

    @classmethod
    def from_text(cls, text):
        """Parse the textual form ``A(001010)P(001010)``."""
        s = text.strip()
        if not (s.startswith("A(") and ")P(" in s and s.endswith(")")):
            raise ValueError("not a pattern literal: %r" % text)
        a_part, p_part = s[1:].split("P", 1)
        return cls(BitString.from_text(a_part), BitString.from_text(p_part))

    def text(self):
        return "A%rP%r" % (self.alpha, self.beta)

    def __repr__(self):
        return self.text()

    def __eq__(self, other):
        return (isinstance(other, ErrorPattern)
                and self.alpha == other.alpha and self.beta == other.beta)

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def union_weight(self):
        return union_weight(self.alpha, self.beta)

    def is_zero(self):
        return self.alpha.is_zero() and self.beta.is_zero()

    def sort_key(self):
        """Canonical total order: little-endian value of alpha||beta."""
        key = 0
        for i, b in enumerate(self.alpha.bits):
            key |= b << i
        n = len(self.alpha)
        for i, b in enumerate(self.beta.bits):
            key |= b << (n + i)
        return key

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


# -- operator application ------------------------------------------------------

def _phase_signs(n, beta_index):
    v = np.arange(1 << n)
    return 1.0 - 2.0 * (np.bitwise_count(v & beta_index) & 1)


def apply_amplitude(alpha, state):
    """A_alpha: permutes basis amplitudes by v -> v+alpha. Acts as identity
    on environment factors; unitary (an involution, in fact)."""
    if len(alpha) != state.qubit_count:
        raise ValueError("alpha length %d != qubit count %d"
                         % (len(alpha), state.qubit_count))
    a = alpha.to_index()
    if a == 0:
        return state
    perm = np.arange(state.layout.system_dim) ^ a
    return PureState._trusted(state.layout, state.amps[perm],
                              normalized=state.is_normalized)


def apply_phase(beta, state):
    """P_beta: multiplies each basis amplitude by (-1)^(beta.v)."""
    if len(beta) != state.qubit_count:
        raise ValueError("beta length %d != qubit count %d"
                         % (len(beta), state.qubit_count))
    b = beta.to_index()
    if b == 0:
        return state
    signs = _phase_signs(state.qubit_count, b)
    signs = signs.reshape((-1,) + (1,) * len(state.layout.env_dims))
    return PureState._trusted(state.layout, state.amps * signs,
                              normalized=state.is_normalized)


def apply_pattern(pattern, state):
    """The composed operator A_alpha P_beta (phase part acts first)."""
    return apply_amplitude(pattern.alpha, apply_phase(pattern.beta, state))


# -- enumeration ---------------------------------------------------------------

def enumerate_bitstrings_by_weight(n, t):
    """All length-n tuples of weight <= t in canonical (little-endian) order."""
    if not 0 <= t <= n:
        raise ValueError("need 0 <= t <= n")
    out = []
    for w in range(t + 1):
        for pos in combinations(range(n), w):
            bits = [0] * n
            for p in pos:
                bits[p] = 1
            out.append(BitString(bits))
    key = lambda bs: sum(b << i for i, b in enumerate(bs.bits))
    out.sort(key=key)
    return out


def enumerate_patterns(n, t):
    """All patterns with union_weight(alpha, beta) <= t, canonically ordered.

    Per affected qubit the (alpha_i, beta_i) choices are exactly (1,0),
    (0,1), (1,1) -- sigma_x, sigma_z, sigma_y -- so the count is
    sum_{i<=t} 3^i C(n,i). The all-zero pattern comes first.
    """
    if not 0 <= t <= n:
        raise ValueError("need 0 <= t <= n")
    pats = []
    for w in range(t + 1):
        for pos in combinations(range(n), w):
            for choices in product(((1, 0), (0, 1), (1, 1)), repeat=w):
                a = [0] * n
                b = [0] * n
                for p, (ai, bi) in zip(pos, choices):
                    a[p] = ai
                    b[p] = bi
                pats.append(ErrorPattern(BitString(a), BitString(b)))
    pats.sort(key=ErrorPattern.sort_key)
    return pats
