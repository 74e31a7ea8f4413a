"""Qubit-environment entanglement channels and the analytic residue oracle.

A channel on one qubit is given by four environment vectors a_{g,g'} (input
bit g, output bit g') in a d_E-dimensional factor:

    |0>|a>  ->  |0>|a00> + |1>|a01>
    |1>|a>  ->  |0>|a10> + |1>|a11>

The map extends to a unitary on the qubit-environment pair starting from a
fixed |a> exactly when the rows of the 2 x 2d_E block matrix are
orthonormal:

    ||a00||^2 + ||a01||^2 = 1
    ||a10||^2 + ||a11||^2 = 1
    <a00|a10> + <a01|a11> = 0

Pure decoherence is the special case a01 = a10 = 0: bit values pass through
untouched and the environment merely learns them, which is equivalent to
random phase noise.

The residue oracle gives the environment-side factor attached to each error
pattern in the decomposition of a dissipated block: sending a set S of m
qubits of *any* state |psi> through channels yields exactly

    sum_{supp(a), supp(b) within S}   A_a P_b |psi>  (x)  |R_ab>,

    |R_ab>  =  2^-m  sum_g  (-1)^(g.b)  (x)_{j in S}  a^(j)_{g_j, g_j+a_j},

with g ranging over bit assignments on S. The residues depend only on the
channels, never on the transported state.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .bitstrings import BitString
from .statespace import TOL_NORM, FactorLayout, PureState

_UNITARITY_CONSTRAINTS = ("row0_norm", "row1_norm", "row_orthogonality")
_VEC_NAMES = {(0, 0): "a00", (0, 1): "a01", (1, 0): "a10", (1, 1): "a11"}


class QubitChannel:
    """Per-qubit environment-entangling map given by four env vectors."""

    __slots__ = ("env_dim", "a00", "a01", "a10", "a11")

    def __init__(self, a00, a01, a10, a11):
        vecs = [np.asarray(v, dtype=np.complex128).ravel()
                for v in (a00, a01, a10, a11)]
        d = vecs[0].size
        if d < 1 or any(v.size != d for v in vecs):
            raise ValueError("the four environment vectors must share one "
                             "dimension >= 1")
        for name, v in zip(("a00", "a01", "a10", "a11"), vecs):
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        object.__setattr__(self, "env_dim", d)

    def __setattr__(self, name, value):
        raise AttributeError("QubitChannel is immutable")

    def block(self):
        """The 2 x 2d_E matrix whose rows must be orthonormal."""
        return np.stack([np.concatenate([self.a00, self.a01]),
                         np.concatenate([self.a10, self.a11])])

    def __repr__(self):
        return "QubitChannel(env_dim=%d)" % self.env_dim


def validate(ch):
    """Check the three unitarity-closure constraints.

    Returns a list of (constraint_name, violation_magnitude) pairs; empty
    when the channel is valid within 1e-9.
    """
    row0 = math.fsum(np.abs(np.concatenate([ch.a00, ch.a01])) ** 2)
    row1 = math.fsum(np.abs(np.concatenate([ch.a10, ch.a11])) ** 2)
    cross = np.vdot(ch.a00, ch.a10) + np.vdot(ch.a01, ch.a11)
    checks = (abs(row0 - 1.0), abs(row1 - 1.0), abs(cross))
    return [(name, float(mag))
            for name, mag in zip(_UNITARITY_CONSTRAINTS, checks)
            if mag > TOL_NORM]


def is_valid(ch):
    return not validate(ch)


def make_decoherence(overlap):
    """Pure-decoherence channel with <a_0|a_1> = overlap (|overlap| <= 1).

    d_E = 2: a00 = e0, a11 = overlap*e0 + sqrt(1-|overlap|^2)*e1,
    a01 = a10 = 0. overlap = 1 is the identity channel, overlap = 0 full
    decoherence (orthogonal environment markers).
    """
    overlap = complex(overlap)
    if abs(overlap) > 1.0 + 1e-15:
        raise ValueError("|overlap| must be <= 1, got %r" % overlap)
    ortho = math.sqrt(max(0.0, 1.0 - abs(overlap) ** 2))
    zero = np.zeros(2)
    return QubitChannel(a00=[1.0, 0.0], a01=zero,
                        a10=zero, a11=[overlap, ortho])


def identity_channel(env_dim=1):
    """No entanglement: the environment stays in its reference state."""
    e0 = np.zeros(env_dim)
    e0[0] = 1.0
    zero = np.zeros(env_dim)
    return QubitChannel(a00=e0, a01=zero, a10=zero, a11=e0)


def random_channel(env_dim, rng):
    """A random valid channel: a seeded complex Gaussian 2 x 2d_E matrix,
    row-orthonormalized (Gram-Schmidt), split into the four vectors."""
    M = rng.standard_normal((2, 2 * env_dim)) \
        + 1j * rng.standard_normal((2, 2 * env_dim))
    M[0] /= np.linalg.norm(M[0])
    M[1] -= M[0] * np.vdot(M[0], M[1])
    M[1] /= np.linalg.norm(M[1])
    return QubitChannel(a00=M[0, :env_dim], a01=M[0, env_dim:],
                        a10=M[1, :env_dim], a11=M[1, env_dim:])


def apply_channel(state, qubit, ch):
    """Entangle `qubit` with a fresh d_E-dimensional environment factor.

    Each basis amplitude with qubit bit g turns into the superposition over
    output bits g' weighted by the components of a_{g,g'}. Requires that the
    qubit has no environment factor yet (one channel transit per qubit;
    re-entanglement is out of scope).
    """
    bad = validate(ch)
    if bad:
        raise ValueError("invalid channel: %s" % bad)
    n = state.qubit_count
    if not 0 <= qubit < n:
        raise ValueError("qubit index %d out of range" % qubit)
    if any(q == qubit for q, _ in state.layout.env_factors):
        raise ValueError("qubit %d already has an environment factor "
                         "(re-entanglement is out of scope)" % qubit)
    layout = state.layout.with_env(qubit, ch.env_dim)
    bit = 1 << (n - 1 - qubit)
    sel0 = (np.arange(state.layout.system_dim) & bit) == 0
    sel1 = ~sel0
    # amps[sel0][i] and amps[sel1][i] are the paired basis states differing
    # only in this qubit's bit; rows of `out` are indexed by the output bit
    a0 = state.amps[sel0][..., np.newaxis]
    a1 = state.amps[sel1][..., np.newaxis]
    out = np.empty(layout.shape, dtype=np.complex128)
    out[sel0] = a0 * ch.a00 + a1 * ch.a10
    out[sel1] = a0 * ch.a01 + a1 * ch.a11
    return PureState._trusted(layout, out, normalized=state.is_normalized)


def residue_oracle(channels, alpha, beta):
    """Environment residue |R_ab> for channels applied on an ordered set.

    `channels` is the ordered list of (qubit, QubitChannel) pairs, in
    application order; the supports of alpha and beta must lie inside the
    affected-qubit set. Returns an environment-only PureState (one factor
    per channel, in list order), generally unnormalized:

        2^-m  sum_g  (-1)^(g.b)  (x)_j  a^(j)_{g_j, (g+a)_j}
    """
    channels = list(channels)
    if not isinstance(alpha, BitString):
        alpha = BitString.from_text(alpha)
    if not isinstance(beta, BitString):
        beta = BitString.from_text(beta)
    if len(alpha) != len(beta):
        raise ValueError("alpha and beta have different lengths")
    affected = [q for q, _ in channels]
    if len(set(affected)) != len(affected):
        raise ValueError("affected qubits repeat")
    if any(not 0 <= q < len(alpha) for q in affected):
        raise ValueError("affected qubit outside the block")
    outside = (alpha.support() | beta.support()) - set(affected)
    if outside:
        raise ValueError("pattern support %s lies outside the affected set %s"
                         % (sorted(outside), affected))
    m = len(channels)
    dims = tuple(ch.env_dim for _, ch in channels)
    acc = np.zeros(dims if dims else (1,), dtype=np.complex128)
    for g in range(1 << m):
        sign = 1.0
        term = np.ones(1)
        for j, (q, ch) in enumerate(channels):
            gj = (g >> j) & 1
            if gj & beta[q]:
                sign = -sign
            vec = getattr(ch, _VEC_NAMES[(gj, gj ^ alpha[q])])
            term = np.multiply.outer(term, vec)
        acc += sign * term.reshape(acc.shape)
    acc /= float(1 << m)
    layout = FactorLayout.environment_only(dims)
    return PureState._trusted(layout, acc, normalized=False)


# -- noise models --------------------------------------------------------------

class NoiseModel:
    """Independent per-qubit activation with probability p.

    An activated qubit is sent through the model's channel; `qubits`
    restricts which qubits are eligible ("all" or an index list).
    """

    __slots__ = ("p", "channel", "qubits")

    def __init__(self, p, channel, qubits="all"):
        p = float(p)
        if not 0.0 <= p <= 1.0:
            raise ValueError("activation probability must be in [0, 1]")
        if not isinstance(channel, QubitChannel):
            raise TypeError("channel must be a QubitChannel")
        if qubits != "all":
            qubits = tuple(sorted(int(q) for q in qubits))
            if len(set(qubits)) != len(qubits):
                raise ValueError("qubit list repeats an index")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "channel", channel)
        object.__setattr__(self, "qubits", qubits)

    def __setattr__(self, name, value):
        raise AttributeError("NoiseModel is immutable")

    def eligible_qubits(self, n):
        if self.qubits == "all":
            return list(range(n))
        if any(not 0 <= q < n for q in self.qubits):
            raise ValueError("noise model names qubits outside the block")
        return list(self.qubits)

    def per_qubit(self, n):
        """Mapping qubit index -> channel (or None for untouched qubits)."""
        eligible = set(self.eligible_qubits(n))
        return {q: (self.channel if q in eligible else None)
                for q in range(n)}


# -- files ---------------------------------------------------------------------

def channel_to_dict(ch):
    def pairs(v):
        return [[float(x.real), float(x.imag)] for x in v]
    return {"env_dim": ch.env_dim, "a00": pairs(ch.a00), "a01": pairs(ch.a01),
            "a10": pairs(ch.a10), "a11": pairs(ch.a11)}


def channel_from_dict(data):
    try:
        d = int(data["env_dim"])
        vecs = {name: np.array([complex(re, im) for re, im in data[name]])
                for name in ("a00", "a01", "a10", "a11")}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError("malformed channel data: %s" % exc)
    ch = QubitChannel(**vecs)
    if ch.env_dim != d:
        raise ValueError("env_dim %d does not match vector length %d"
                         % (d, ch.env_dim))
    return ch


def save_channel(ch, path):
    with open(path, "w") as fh:
        json.dump(channel_to_dict(ch), fh, indent=1)


def load_channel(path):
    with open(path) as fh:
        return channel_from_dict(json.load(fh))


def noise_model_from_dict(data, base_dir="."):
    try:
        p = data["p"]
        chspec = data["channel"]
        qubits = data.get("qubits", "all")
    except (KeyError, TypeError) as exc:
        raise ValueError("malformed noise model: %s" % exc)
    if isinstance(chspec, str):
        path = chspec if os.path.isabs(chspec) else os.path.join(base_dir, chspec)
        channel = load_channel(path)
    else:
        channel = channel_from_dict(chspec)
    return NoiseModel(p, channel, qubits)


def load_noise_model(path):
    with open(path) as fh:
        data = json.load(fh)
    return noise_model_from_dict(data, base_dir=os.path.dirname(path) or ".")
