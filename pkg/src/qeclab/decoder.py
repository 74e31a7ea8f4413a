"""Projective syndrome decoding: measurement walks, recovery, verification.

A code passing the general correctability condition at weight t has
orthonormal images {A_a P_b |C^k>} across all patterns of union weight
<= t, so the syndrome subspaces

    H_ab = span{ A_a P_b |C^k> : k }

are mutually orthogonal. A corrupted block is measured projectively against
these subspaces; the subspace that answers identifies the pattern, and
applying P_b A_a (its own inverse up to a global sign) restores the encoded
state while disentangling the block from every environment factor.

Two measurement strategies are provided, with identical outcome statistics:

* exhaustive -- walk the subspaces in canonical order, one binary
  measurement each, stopping at the first hit;
* hierarchical -- binary search over dyadic blocks of the canonical order,
  measuring projectors onto unions of subspaces, O(log) measurements on the
  success path. Once the walk has established that the state lies inside a
  block, narrowing to a single subspace needs no further measurement.

If every outcome is 0 the state collapses to the orthogonal complement of
all table subspaces and no correction is attempted.
"""

from __future__ import annotations

import numpy as np

from .bitstrings import BitString
from .errors import (ErrorPattern, apply_amplitude, apply_phase,
                     enumerate_bitstrings_by_weight, enumerate_patterns)
from .codes import (ConditionError, check_amplitude_condition,
                    check_general_condition, check_phase_condition)
from .statespace import (TOL_ZERO, PureState, fidelity_against,
                         schmidt_diagnostics, state_to_dict)

PATTERN_FILTERS = ("all", "phase-only", "amplitude-only")

#: Gram tolerance for a whole syndrome table (looser than the per-inner-
#: product checker tolerance, since the table aggregates thousands of them).
TABLE_TOL = 1e-8


class SyndromeTable:
    """Ordered syndrome subspaces H_ab for one (code, t, pattern filter).

    patterns[i] names the i-th subspace; matrices[i] holds its orthonormal
    basis {A_a P_b |C^k>} as rows (2^l x 2^n). Bases are pairwise orthonormal
    across the whole table. Immutable and shareable across decode runs.
    """

    __slots__ = ("code", "t", "pattern_filter", "patterns", "matrices",
                 "labels", "is_complete", "_unions")

    def __init__(self, code, t, pattern_filter, patterns, matrices):
        object.__setattr__(self, "code", code)
        object.__setattr__(self, "t", int(t))
        object.__setattr__(self, "pattern_filter", pattern_filter)
        object.__setattr__(self, "patterns", tuple(patterns))
        object.__setattr__(self, "matrices", tuple(matrices))
        object.__setattr__(self, "labels",
                           tuple("H[%s]" % p.text() for p in patterns))
        # a table whose bases fill the whole block space leaves no room for
        # a "none" outcome: membership in the union is guaranteed upfront
        total = sum(m.shape[0] for m in matrices)
        object.__setattr__(self, "is_complete", total == (1 << code.n))
        object.__setattr__(self, "_unions", {})

    def __setattr__(self, name, value):
        raise AttributeError("SyndromeTable is immutable")

    def __len__(self):
        return len(self.patterns)

    def union_matrix(self, lo, hi):
        """Stacked basis rows of subspaces lo..hi-1 (memoized)."""
        key = (lo, hi)
        got = self._unions.get(key)
        if got is None:
            got = np.vstack(self.matrices[lo:hi])
            self._unions[key] = got
        return got


_FILTER_CHECKERS = {
    "all": check_general_condition,
    "phase-only": check_phase_condition,
    "amplitude-only": check_amplitude_condition,
}


def _filter_patterns(n, t, pattern_filter):
    if pattern_filter == "all":
        return enumerate_patterns(n, t)
    zeros = BitString.zeros(n)
    parts = enumerate_bitstrings_by_weight(n, t)
    if pattern_filter == "phase-only":
        return [ErrorPattern(zeros, b) for b in parts]
    return [ErrorPattern(a, zeros) for a in parts]


def build_syndrome_table(code, t, pattern_filter="all"):
    """Build the ordered subspace table, verifying correctability first.

    The matching condition (general for "all", phase for "phase-only",
    amplitude for "amplitude-only") must pass at t; otherwise the failing
    ConditionReport is raised inside a ConditionError. The assembled table's
    full Gram matrix is additionally verified against the identity within
    1e-8.
    """
    if pattern_filter not in PATTERN_FILTERS:
        raise ValueError("unknown pattern filter %r (choose from %s)"
                         % (pattern_filter, ", ".join(PATTERN_FILTERS)))
    report = _FILTER_CHECKERS[pattern_filter](code, t)
    if not report.passed:
        raise ConditionError(report)
    patterns = _filter_patterns(code.n, t, pattern_filter)
    C = code.matrix()  # (2^l, 2^n)
    matrices = []
    for p in patterns:
        a = p.alpha.to_index()
        b = p.beta.to_index()
        rows = C
        if b:
            signs = 1.0 - 2.0 * (np.bitwise_count(
                np.arange(1 << code.n) & b) & 1)
            rows = rows * signs
        if a:
            rows = rows[:, np.arange(1 << code.n) ^ a]
        matrices.append(np.ascontiguousarray(rows))
    table = SyndromeTable(code, t, pattern_filter, patterns, matrices)
    B = table.union_matrix(0, len(table))
    dev = np.max(np.abs(B.conj() @ B.T - np.eye(len(B))))
    if dev > TABLE_TOL:  # pragma: no cover - excluded by the checker above
        raise AssertionError("syndrome table Gram deviates by %.3e" % dev)
    return table


# -- projective measurement ----------------------------------------------------

def _project_rows(state, W):
    """Probability and collapse data for the projector with orthonormal rows
    W (system-only), extended by identity over environment factors.

    Returns (prob, component, residual, residual_mass): the renormalized
    in-subspace state and the renormalized complement state, either being
    None when its probability falls below the zero threshold.
    """
    M = state.matrix()
    coeff = W.conj() @ M
    prob = float(np.sum(np.abs(coeff) ** 2))
    shape = state.layout.shape
    comp = None
    if prob >= TOL_ZERO:
        comp = PureState._trusted(
            state.layout, (W.T @ coeff / np.sqrt(prob)).reshape(shape))
    resid_mat = M - W.T @ coeff
    rmass = float(np.sum(np.abs(resid_mat) ** 2))
    resid = None
    if rmass >= TOL_ZERO:
        resid = PureState._trusted(
            state.layout, (resid_mat / np.sqrt(rmass)).reshape(shape))
    return prob, comp, resid, rmass


def _binary_measure(state, W, randomness):
    """One ideal binary measurement: a single uniform deviate, thresholded
    at the computed probability. Probabilities below the zero threshold
    count as exact 0/1 (the corresponding branch has no collapsed state)."""
    prob, comp, resid, _ = _project_rows(state, W)
    outcome = bool(randomness.random() < prob)
    if outcome and comp is None:
        outcome = False
    if not outcome and resid is None:
        outcome = True
    return outcome, (comp if outcome else resid), prob


def measure_exhaustive(state, table, randomness):
    """Walk the subspaces in canonical order with one binary measurement
    each; collapse and stop at the first outcome 1. All-zero outcomes leave
    the state in the orthogonal complement and report no syndrome.

    Returns (collapsed_state, syndrome_pattern_or_None, outcome_trace).
    """
    _check_compatible(state, table)
    current = state
    trace = []
    for i, label in enumerate(table.labels):
        outcome, current, _ = _binary_measure(current, table.matrices[i],
                                              randomness)
        trace.append((label, int(outcome)))
        if outcome:
            return current, table.patterns[i], trace
    return current, None, trace


def measure_hierarchical(state, table, randomness):
    """Binary search over dyadic blocks of the canonical subspace order.

    Measures the projector onto the union of the block's first half (size =
    the largest power of two below the block size) and recurses into the
    half the outcome selects. Once membership in the current block is
    established -- by an earlier outcome, or upfront when the table's bases
    fill the whole block space -- a block of size 1 is conclusive without
    further measurement. Outcome statistics are identical to
    measure_exhaustive (the subspaces are orthogonal, so union projector
    probabilities telescope).

    Returns (collapsed_state, syndrome_pattern_or_None, outcome_trace).
    """
    _check_compatible(state, table)
    current = state
    trace = []
    lo, hi = 0, len(table)
    inside = table.is_complete  # is membership in [lo, hi) already proven?
    while True:
        size = hi - lo
        if size == 1 and inside:
            return current, table.patterns[lo], trace
        if size == 1:
            outcome, current, _ = _binary_measure(
                current, table.matrices[lo], randomness)
            trace.append((table.labels[lo], int(outcome)))
            if outcome:
                return current, table.patterns[lo], trace
            return current, None, trace
        half = 1 << ((size - 1).bit_length() - 1)
        mid = lo + half
        W = table.union_matrix(lo, mid)
        label = table.labels[lo] if half == 1 else "U[%d..%d]" % (lo, mid - 1)
        outcome, current, _ = _binary_measure(current, W, randomness)
        trace.append((label, int(outcome)))
        if outcome:
            hi = mid
            inside = True
        else:
            lo = mid


def _check_compatible(state, table):
    if state.qubit_count != table.code.n:
        raise ValueError("state has %d qubits but the table's code has %d"
                         % (state.qubit_count, table.code.n))


_MEASURERS = {"exhaustive": measure_exhaustive,
              "hierarchical": measure_hierarchical}


# -- exact outcome distributions ------------------------------------------------

def syndrome_distribution(state, table, strategy="exhaustive"):
    """Exact outcome probabilities of a full measurement walk (no sampling).

    Returns (labels, probs): labels are the canonical pattern texts plus a
    final "none" entry; probs[i] is the probability that the walk ends in
    subspace i (or, for the last entry, in the complement). Computed by
    propagating collapsed states through the strategy's actual measurement
    tree, so it reflects the strategy's floating-point path; the two
    strategies agree to well below 1e-12.
    """
    _check_compatible(state, table)
    if strategy not in _MEASURERS:
        raise ValueError("unknown strategy %r" % strategy)
    N = len(table)
    probs = np.zeros(N + 1)
    if strategy == "exhaustive":
        current, cum = state, 1.0
        for i in range(N):
            prob, comp, resid, rmass = _project_rows(current,
                                                     table.matrices[i])
            probs[i] = cum * prob
            if resid is None:
                cum = 0.0
                break
            cum *= rmass
            current = resid
        probs[N] = cum
    else:
        def walk(current, lo, hi, inside, cum):
            size = hi - lo
            if size == 1 and inside:
                probs[lo] += cum
                return
            if size == 1:
                prob, comp, resid, rmass = _project_rows(
                    current, table.matrices[lo])
                probs[lo] += cum * prob
                probs[N] += cum * rmass
                return
            half = 1 << ((size - 1).bit_length() - 1)
            mid = lo + half
            W = table.union_matrix(lo, mid)
            prob, comp, resid, rmass = _project_rows(current, W)
            if comp is not None:
                walk(comp, lo, mid, True, cum * prob)
            if resid is not None:
                walk(resid, mid, hi, inside, cum * rmass)

        walk(state, 0, N, table.is_complete, 1.0)
    labels = [p.text() for p in table.patterns] + ["none"]
    return labels, probs


# -- recovery and the end-to-end decode ------------------------------------------

def recover(collapsed, syndrome):
    """Undo an identified pattern: apply A_a then P_b (the inverse of
    A_a P_b up to a physically irrelevant global sign)."""
    if syndrome is None:
        raise ValueError("recovery needs an identified syndrome")
    return apply_phase(syndrome.beta, apply_amplitude(syndrome.alpha,
                                                      collapsed))


class DecodeReport:
    """Everything one decode run produced.

    corrected is true exactly when a syndrome was identified; fidelity is
    measured against the caller's reference state after recovery, and
    disentangled reports whether the block ended in a tensor product with
    all environment factors (maximal Schmidt coefficient within 1e-9 of 1).
    """

    def __init__(self, syndrome, outcome_trace, recovered_state, fidelity,
                 disentangled, corrected):
        self.syndrome = syndrome
        self.outcome_trace = outcome_trace
        self.recovered_state = recovered_state
        self.fidelity = fidelity
        self.disentangled = disentangled
        self.corrected = corrected

    def to_dict(self, include_state=True):
        out = {
            "syndrome": self.syndrome.text() if self.syndrome else None,
            "outcome_trace": [[label, outcome]
                              for label, outcome in self.outcome_trace],
            "fidelity": self.fidelity,
            "disentangled": self.disentangled,
            "corrected": self.corrected,
        }
        if include_state:
            out["recovered_state"] = state_to_dict(self.recovered_state)
        return out

    def __repr__(self):
        return ("DecodeReport(syndrome=%s, fidelity=%.9f, disentangled=%s, "
                "corrected=%s)" % (self.syndrome.text() if self.syndrome
                                   else "none", self.fidelity,
                                   self.disentangled, self.corrected))


def correct(state, code, t, strategy, randomness, reference,
            pattern_filter="all", table=None):
    """Measure, recover, verify: the full decode pass.

    strategy is "exhaustive" or "hierarchical"; randomness supplies one
    uniform deviate per binary measurement; reference is the system-only
    state the fidelity is measured against (normally the uncorrupted encoded
    block). A prebuilt SyndromeTable for (code, t, pattern_filter) can be
    passed to skip rebuilding in tight loops.
    """
    if table is None:
        table = build_syndrome_table(code, t, pattern_filter)
    elif (table.code is not code and table.code.name != code.name):
        raise ValueError("table was built for code %r" % table.code.name)
    try:
        measurer = _MEASURERS[strategy]
    except KeyError:
        raise ValueError("unknown strategy %r (choose from %s)"
                         % (strategy, ", ".join(sorted(_MEASURERS))))
    collapsed, syndrome, trace = measurer(state, table, randomness)
    recovered = recover(collapsed, syndrome) if syndrome else collapsed
    fidelity = fidelity_against(recovered, reference)
    max_schmidt, _ = schmidt_diagnostics(recovered)
    return DecodeReport(
        syndrome=syndrome,
        outcome_trace=trace,
        recovered_state=recovered,
        fidelity=fidelity,
        disentangled=bool(max_schmidt >= 1.0 - 1e-9),
        corrected=syndrome is not None,
    )
