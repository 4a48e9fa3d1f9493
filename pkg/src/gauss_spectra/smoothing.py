"""Counting state curves.

Three independent routes to the number of curves left after a partial
smoothing:

* :func:`boundary_count_oracle` walks the boundary of the disk-with-bands
  surface directly;
* :func:`loop_count_rlcp` uses the multiplicity of zero in the skew
  characteristic polynomial, passing through a double cover when some chord
  is smoothed unoriented;
* :func:`loop_count_zlcp` uses the GF(2) nullity of ``A + Delta``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator

from .diagram import ChordDiagram, PartialState, canonical_relabel, double_cover, restrict
from .errors import HasErasedChords, HasUnoriented, OddCoverCount, OutOfRange
from .graph import adjacency, interlacement_graph, skew_adjacency
from .poly import graph_poly, m0, nullity_z2

# A boundary step: (chord label, band side, sign). The side names the two
# corners it joins, e.g. "a'b''". sign is +1 for a'b'', -1 for a''b', and 0 on
# the sides of a half-twisted band, which carry no sign.
Side = tuple[int, str, int]


@dataclass(frozen=True)
class BoundaryTrace:
    component_count: int
    components: tuple[tuple[Side, ...], ...]


def _surface(d: ChordDiagram, s: PartialState):
    """Positions of the smoothed endpoints: labels, a/b flags, partners, twist flags."""
    labels = [lab for lab in d.word if lab not in s.erased]
    seen = set()
    is_a = []
    first_pos: dict[int, int] = {}
    partner = [0] * len(labels)
    for pos, lab in enumerate(labels):
        if lab in seen:
            partner[pos] = first_pos[lab]
            partner[first_pos[lab]] = pos
            is_a.append(False)
        else:
            seen.add(lab)
            first_pos[lab] = pos
            is_a.append(True)
    twisted = [lab in s.unoriented for lab in labels]
    return labels, is_a, partner, twisted


def _step(state: int, partner, twisted, size: int) -> int:
    # state = 2*pos + dir; dir 0: arriving at pos travelling CCW (at its ' corner),
    # dir 1: arriving travelling CW (at its '' corner).
    pos, cw = divmod(state, 2)
    q = partner[pos]
    if cw == twisted[pos]:
        return 2 * ((q + 1) % size)
    return 2 * ((q - 1) % size) + 1


def _side(pos: int, cw: int, is_a, twisted) -> tuple[str, int]:
    here = "''" if cw else "'"
    if twisted[pos]:
        there = here
    else:
        there = "'" if cw else "''"
    if is_a[pos]:
        name = f"a{here}b{there}"
    else:
        name = f"a{there}b{here}"
    sign = {"a'b''": 1, "a''b'": -1}.get(name, 0)
    return name, sign


def boundary_count_oracle(d: ChordDiagram, s: PartialState) -> BoundaryTrace:
    """Count boundary circles of the disk with one band per smoothed chord.

    Erased chords are dropped. The circle is cut at the smoothed endpoints;
    a boundary walker arriving at an endpoint crosses that chord's band and
    resumes on the circle at the partner endpoint. An untwisted band keeps
    the travel direction, a half-twisted one reverses it. Every boundary
    circle is walked once in each direction, so the count is half the number
    of cycles of the walk.
    """
    s.check(d.n)
    labels, is_a, partner, twisted = _surface(d, s)
    size = len(labels)
    if size == 0:
        return BoundaryTrace(1, ((),))
    orientable = not any(twisted)
    taken_arcs: set[int] = set()
    visited = bytearray(2 * size)
    components = []
    for start in range(0, 2 * size, 2 if orientable else 1):
        if visited[start]:
            continue
        cycle = []
        st = start
        while not visited[st]:
            visited[st] = 1
            cycle.append(st)
            st = _step(st, partner, twisted, size)
        arcs = set()
        for st in cycle:
            nxt = _step(st, partner, twisted, size)
            pos, cw = divmod(nxt, 2)
            arcs.add((pos - 1) % size if not cw else pos)
        if arcs & taken_arcs:
            continue  # reverse of a component already recorded
        taken_arcs |= arcs
        sides = []
        for st in cycle:
            pos, cw = divmod(st, 2)
            name, sign = _side(pos, cw, is_a, twisted)
            sides.append((labels[pos], name, sign))
        components.append(tuple(sides))
    return BoundaryTrace(len(components), tuple(components))


def oracle_count(d: ChordDiagram, s: PartialState) -> int:
    """Component count only; the hot path of the census."""
    labels, _, partner, twisted = _surface(d, s)
    size = len(labels)
    if size == 0:
        return 1
    nxt = [0] * (2 * size)
    for pos in range(size):
        q = partner[pos]
        fwd = 2 * ((q + 1) % size)
        back = 2 * ((q - 1) % size) + 1
        if twisted[pos]:
            nxt[2 * pos], nxt[2 * pos + 1] = back, fwd
        else:
            nxt[2 * pos], nxt[2 * pos + 1] = fwd, back
    visited = bytearray(2 * size)
    cycles = 0
    for start in range(2 * size):
        if visited[start]:
            continue
        cycles += 1
        st = start
        while not visited[st]:
            visited[st] = 1
            st = nxt[st]
    return cycles // 2


@lru_cache(maxsize=1 << 16)
def _oriented_count(word: tuple[int, ...]) -> int:
    g = interlacement_graph(canonical_relabel(ChordDiagram(word)))
    return m0(graph_poly(g)) + 1


def oriented_count(d: ChordDiagram) -> int:
    """All-oriented count from the zero multiplicity of the skew characteristic polynomial."""
    return _oriented_count(d.word)


def loop_count_rlcp(d: ChordDiagram, s: PartialState, cross_check: bool = False) -> int:
    """Curve count through zero multiplicities.

    With no unoriented chord the count is m0 + 1 for the erased diagram;
    otherwise the double cover at the least unoriented chord is counted and
    halved. ``cross_check`` recounts every cover (each unoriented chord, both
    flavors) and raises if they disagree.
    """
    s.check(d.n)
    if not s.unoriented:
        sub, _ = restrict(d, s)
        return oriented_count(sub)
    j = min(s.unoriented)
    cover, cover_state = double_cover(d, s, j, "first")
    assert not cover_state.unoriented  # covers recurse exactly once
    twice = oriented_count(cover)
    if twice % 2:
        raise OddCoverCount(f"cover of {d.word} at chord {j} has odd count {twice}")
    if cross_check:
        for k in sorted(s.unoriented):
            for flavor in ("first", "second"):
                other = oriented_count(double_cover(d, s, k, flavor)[0])
                if other != twice:
                    raise OddCoverCount(f"covers disagree: chord {k} {flavor} gives {other}, expected {twice}")
    return twice // 2


def loop_count_zlcp(d: ChordDiagram, s: PartialState) -> int:
    """nullity over GF(2) of A + Delta, plus one; needs every chord smoothed."""
    s.check(d.n)
    if s.erased:
        raise HasErasedChords("this count smooths every chord")
    a = [list(row) for row in adjacency(interlacement_graph(d))]
    for i in s.unoriented:
        a[i - 1][i - 1] = 1
    return nullity_z2(a) + 1


def kernel_basis_theta(d: ChordDiagram, s: PartialState) -> list[tuple[int, ...]]:
    """One signed band-side vector per boundary circle.

    Vectors are indexed by the canonical labels of the erased diagram; each is
    annihilated by its skew-adjacency matrix and together they span the kernel.
    """
    s.check(d.n)
    if s.unoriented:
        raise HasUnoriented("band-side vectors need an orientable surface")
    sub, st = restrict(d, s)
    trace = boundary_count_oracle(sub, st)
    out = []
    for comp in trace.components:
        v = [0] * sub.n
        for lab, _, sign in comp:
            v[lab - 1] += sign
        out.append(tuple(v))
    return out


def theta_basis(d: ChordDiagram, s: PartialState) -> list[tuple[int, ...]]:
    """Drop one band-side vector whose removal keeps the span; no canonical choice is claimed."""
    from .poly import rank_q

    vecs = kernel_basis_theta(d, s)
    full = rank_q(vecs) if vecs and vecs[0] else 0
    for k in range(len(vecs)):
        rest = vecs[:k] + vecs[k + 1:]
        if (rank_q(rest) if rest and rest[0] else 0) == full:
            return rest
    return vecs


def enumerate_states(n: int, m: int | None = None, j: int | None = None) -> Iterator[PartialState]:
    """States of an n-chord diagram.

    With ``m`` and ``j``: ``m`` smoothed chords of which ``j`` unoriented, the
    rest erased, C(n,m) C(m,j) states. With neither: all 2^n full states.
    """
    universe = range(1, n + 1)
    if m is None and j is None:
        for k in range(n + 1):
            for unor in itertools.combinations(universe, k):
                u = frozenset(unor)
                yield PartialState(frozenset(universe) - u, u)
        return
    if m is None or j is None or not (0 <= j <= m <= n):
        raise OutOfRange(f"need 0 <= j <= m <= n, got j={j}, m={m}, n={n}")
    for chosen in itertools.combinations(universe, m):
        erased = frozenset(universe) - frozenset(chosen)
        for unor in itertools.combinations(chosen, j):
            u = frozenset(unor)
            yield PartialState(frozenset(chosen) - u, u, erased)


def state_count(n: int, m: int, j: int) -> int:
    return comb(n, m) * comb(m, j)


def all_partial_states(n: int) -> Iterator[PartialState]:
    """All 3^n partial states."""
    for codes in itertools.product("oux", repeat=n):
        yield PartialState.from_string("".join(codes))
