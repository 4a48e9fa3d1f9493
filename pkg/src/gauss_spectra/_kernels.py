"""Compiled counting loops for the exhaustive sweeps.

These mirror :func:`smoothing.oracle_count` and the double cover of
:mod:`diagram` on plain int arrays. The public functions stay the reference;
the sweep cross-checks these kernels against them.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def boundary_cycles(word, twisted):
    """Boundary circle count for an erased-free word (labels 1..n) and per-label twist flags."""
    size = word.shape[0]
    if size == 0:
        return 1
    first = np.full(size // 2 + 1, -1, np.int64)
    partner = np.empty(size, np.int64)
    for pos in range(size):
        lab = word[pos]
        if first[lab] < 0:
            first[lab] = pos
        else:
            partner[pos] = first[lab]
            partner[first[lab]] = pos
    nxt = np.empty(2 * size, np.int64)
    for pos in range(size):
        q = partner[pos]
        fwd = 2 * ((q + 1) % size)
        back = 2 * ((q - 1 + size) % size) + 1
        if twisted[word[pos]]:
            nxt[2 * pos] = back
            nxt[2 * pos + 1] = fwd
        else:
            nxt[2 * pos] = fwd
            nxt[2 * pos + 1] = back
    visited = np.zeros(2 * size, np.bool_)
    cycles = 0
    for start in range(2 * size):
        if visited[start]:
            continue
        cycles += 1
        st = start
        while not visited[st]:
            visited[st] = True
            st = nxt[st]
    return cycles // 2


@njit(cache=True)
def cover_cycles(word, twisted, j, second):
    """Boundary circle count of the all-oriented double cover at chord ``j``.

    A cover letter is ``2 * pos + barred`` with ``pos`` its position in ``word``.
    """
    size = word.shape[0]
    first = np.full(size // 2 + 1, -1, np.int64)
    partner = np.empty(size, np.int64)
    for pos in range(size):
        lab = word[pos]
        if first[lab] < 0:
            first[lab] = pos
        else:
            partner[pos] = first[lab]
            partner[first[lab]] = pos
    pa = first[j]
    pb = partner[pa]
    total = 2 * size - 2
    seq = np.empty(total, np.int64)
    k = 0
    # first:  W1 bar(W2) abar_j bar(W1) bar(W3) W2 b_j W3
    # second: W1 a_j W2 bar(W1) bar(W3) bbar_j bar(W2) W3
    for p in range(pa):
        seq[k] = 2 * p
        k += 1
    if second:
        seq[k] = 2 * pa
        k += 1
        for p in range(pa + 1, pb):
            seq[k] = 2 * p
            k += 1
    else:
        for p in range(pb - 1, pa, -1):
            seq[k] = 2 * p + 1
            k += 1
        seq[k] = 2 * pa + 1
        k += 1
    for p in range(pa - 1, -1, -1):
        seq[k] = 2 * p + 1
        k += 1
    for p in range(size - 1, pb, -1):
        seq[k] = 2 * p + 1
        k += 1
    if second:
        seq[k] = 2 * pb + 1
        k += 1
        for p in range(pb - 1, pa, -1):
            seq[k] = 2 * p + 1
            k += 1
    else:
        for p in range(pa + 1, pb):
            seq[k] = 2 * p
            k += 1
        seq[k] = 2 * pb
        k += 1
    for p in range(pb + 1, size):
        seq[k] = 2 * p
        k += 1
    where = np.full(2 * size, -1, np.int64)
    for idx in range(total):
        where[seq[idx]] = idx
    mate = np.empty(total, np.int64)
    for idx in range(total):
        letter = seq[idx]
        pos = letter // 2
        bar = letter % 2
        if word[pos] == j:
            other = 2 * pb + (1 if second else 0) if pos == pa else 2 * pa + (0 if second else 1)
        elif twisted[word[pos]]:
            other = 2 * partner[pos] + 1 - bar
        else:
            other = 2 * partner[pos] + bar
        mate[idx] = where[other]
    # all bands untwisted: circles are the cycles of p -> mate(p) + 1
    visited = np.zeros(total, np.bool_)
    cycles = 0
    for start in range(total):
        if visited[start]:
            continue
        cycles += 1
        st = start
        while not visited[st]:
            visited[st] = True
            st = (mate[st] + 1) % total
    return cycles
