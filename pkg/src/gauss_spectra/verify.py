"""Exhaustive small-instance sweeps, shared by ``gauss-spectra verify`` and the test-suite.

Each sweep returns a dict ``family -> FamilyResult``. The diagram sweep visits
every canonical diagram and every partial state; the counts for a state only
depend on the diagram with its erased chords removed, so results are
memoised per erased diagram (see :func:`diagram_sweep`).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from multiprocessing import Pool

import numpy as np

from . import graph as gr
from . import poly as pl
from ._kernels import boundary_cycles, cover_cycles
from .diagram import (
    ChordDiagram,
    PartialState,
    all_diagrams,
    canonical_relabel,
    double_cover,
    mirror,
    mirror_with_permutation,
    parse_gauss_code,
    restrict,
    serialize,
)
from .smoothing import (
    all_partial_states,
    boundary_count_oracle,
    enumerate_states,
    kernel_basis_theta,
    loop_count_rlcp,
    loop_count_zlcp,
    oracle_count,
)

MAX_EXAMPLES = 5


@dataclass
class FamilyResult:
    name: str
    checked: int = 0
    failed: int = 0
    examples: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.checked > 0

    def record(self, good: bool, what: str = "", weight: int = 1) -> None:
        self.checked += weight
        if not good:
            self.failed += weight
            if len(self.examples) < MAX_EXAMPLES:
                self.examples.append(what)

    def merge(self, other: "FamilyResult", weight: int = 1) -> None:
        self.checked += other.checked * weight
        self.failed += other.failed * weight
        room = MAX_EXAMPLES - len(self.examples)
        self.examples.extend(other.examples[:room])

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status}  {self.name}: {self.checked - self.failed}/{self.checked}"
        if self.examples:
            text += "  e.g. " + "; ".join(self.examples)
        return text


def _results(*names: str) -> dict[str, FamilyResult]:
    return {n: FamilyResult(n) for n in names}


DIAGRAM_FAMILIES = (
    "roundtrip",
    "mirror_invariance",
    "rlcp_equals_oracle",
    "zlcp_equals_oracle",
    "double_cover_lemma",
    "m0_equals_nullity",
    "theta_kernel",
)


def _m0_vs_nullity(word: tuple[int, ...]) -> tuple[int, int]:
    m = gr.skew_adjacency(gr.interlacement_graph(canonical_relabel(ChordDiagram(word))))
    return pl.m0(pl.char_poly(m)), pl.nullity_q(m)


def full_state_checks(word: tuple[int, ...]) -> dict[str, FamilyResult]:
    """Every check that only needs the full states of one (erased-free) diagram.

    The oracle counts here come from the compiled kernels; the spot checks in
    :func:`diagram_sweep` compare those kernels with the reference code.
    """
    d = ChordDiagram(word)
    res = _results(*DIAGRAM_FAMILIES[2:])
    code = serialize(d)
    arr = np.array(word, np.int64)
    for s in enumerate_states(d.n):
        tag = f"[{code}] {s}"
        twisted = np.zeros(d.n + 1, np.bool_)
        for i in s.unoriented:
            twisted[i] = True
        truth = boundary_cycles(arr, twisted)
        rlcp = loop_count_rlcp(d, s)
        res["rlcp_equals_oracle"].record(rlcp == truth, f"{tag}: rlcp {rlcp} oracle {truth}")
        z = loop_count_zlcp(d, s)
        res["zlcp_equals_oracle"].record(z == truth, f"{tag}: zlcp {z} oracle {truth}")
        if s.unoriented:
            for j in sorted(s.unoriented):
                for second in (False, True):
                    c = cover_cycles(arr, twisted, j, second)
                    res["double_cover_lemma"].record(c == 2 * truth, f"{tag} j={j} second={second}: {c} != 2*{truth}")
            # the matrix RLCP read its count from
            cover = double_cover(d, s, min(s.unoriented), "first")[0].word
            mz, nul = _m0_vs_nullity(cover)
        else:
            mz, nul = _m0_vs_nullity(word)
            m = gr.skew_adjacency(gr.interlacement_graph(d))
            thetas = kernel_basis_theta(d, s)
            in_kernel = all(not any(sum(r * x for r, x in zip(row, v)) for row in m) for v in thetas)
            rank = pl.rank_q(thetas) if d.n else 0
            res["theta_kernel"].record(
                in_kernel and rank == nul and len(thetas) == nul + 1,
                f"{tag}: {len(thetas)} vectors, rank {rank}, nullity {nul}",
            )
        res["m0_equals_nullity"].record(mz == nul, f"{tag}: m0 {mz} nullity {nul}")
    return res


def kernel_agrees(d: ChordDiagram, s: PartialState) -> bool:
    """Compiled counts vs :func:`oracle_count` and :func:`double_cover` on one state."""
    sub, st = restrict(d, s)
    arr = np.array(sub.word, np.int64)
    twisted = np.zeros(sub.n + 1, np.bool_)
    for i in st.unoriented:
        twisted[i] = True
    if boundary_cycles(arr, twisted) != oracle_count(d, s):
        return False
    for j in st.unoriented:
        for flavor in ("first", "second"):
            cover, cs = double_cover(sub, st, j, flavor)
            if cover_cycles(arr, twisted, j, flavor == "second") != oracle_count(cover, cs):
                return False
    return True


def _sweep_one_diagram(word: tuple[int, ...], memo: dict) -> dict[str, FamilyResult]:
    d = ChordDiagram(word)
    res = _results(*DIAGRAM_FAMILIES)
    code = serialize(d)
    again = parse_gauss_code(code)
    res["roundtrip"].record(
        again == d and canonical_relabel(d) == d and mirror(mirror(d)) == d,
        f"[{code}]",
    )
    md, tau = mirror_with_permutation(d)
    g = gr.interlacement_graph(d)
    same_poly = pl.graph_poly(g) == pl.graph_poly(gr.interlacement_graph(md))
    same_graph = gr.relabel(g, tau) == gr.interlacement_graph(md)
    res["mirror_invariance"].record(same_poly and same_graph, f"[{code}]")
    # every partial state = (erased set E, full state of d minus E)
    for k in range(d.n + 1):
        for erased in itertools.combinations(range(1, d.n + 1), k):
            gone = set(erased)
            sub = canonical_relabel(ChordDiagram(_first_occ(lab for lab in word if lab not in gone))).word
            if sub not in memo:
                memo[sub] = full_state_checks(sub)
            for name, r in memo[sub].items():
                if name == "zlcp_equals_oracle" and erased:
                    continue  # only defined for full states
                res[name].merge(r)
    return res


def _first_occ(labels) -> tuple[int, ...]:
    names: dict[int, int] = {}
    return tuple(names.setdefault(lab, len(names) + 1) for lab in labels)


def _sweep_chunk(words: list[tuple[int, ...]]) -> dict[str, FamilyResult]:
    memo: dict = {}
    total = _results(*DIAGRAM_FAMILIES)
    for w in words:
        for name, r in _sweep_one_diagram(w, memo).items():
            total[name].merge(r)
    return total


def diagram_sweep(max_chords: int, threads: int = 1, spot_checks: int = 2000, seed: int = 0) -> dict[str, FamilyResult]:
    """Check every canonical diagram with at most ``max_chords`` chords and all 3^n partial states.

    Counts for a partial state are taken from the memoised full-state checks
    of its erased diagram. ``spot_checks`` random (diagram, state) pairs are
    recomputed directly on the unerased diagram as a guard on that shortcut.
    """
    words = [d.word for n in range(max_chords + 1) for d in all_diagrams(n)]
    total = _results(*DIAGRAM_FAMILIES, "direct_spot_checks")
    if threads > 1:
        # interleave so every worker gets a mix of sizes
        chunks = [words[i::threads * 4] for i in range(threads * 4)]
        with Pool(threads) as pool:
            parts = pool.map(_sweep_chunk, chunks)
    else:
        parts = [_sweep_chunk(words)]
    for part in parts:
        for name, r in part.items():
            total[name].merge(r)
    rng = random.Random(seed)
    spot = total["direct_spot_checks"]
    for _ in range(spot_checks if words else 0):
        d = ChordDiagram(rng.choice(words))
        s = PartialState.from_string("".join(rng.choice("oux") for _ in range(d.n)))
        truth = boundary_count_oracle(d, s).component_count
        good = truth == oracle_count(d, s) == loop_count_rlcp(d, s, cross_check=True)
        if not s.erased:
            good = good and loop_count_zlcp(d, s) == truth
        good = good and kernel_agrees(d, s)
        spot.record(good, f"[{serialize(d)}] {s}")
    return total


def direct_sweep(max_chords: int) -> dict[str, FamilyResult]:
    """Unmemoised version of the counting checks: every diagram, every partial state."""
    res = _results("rlcp_equals_oracle", "zlcp_equals_oracle", "double_cover_lemma")
    for n in range(max_chords + 1):
        for d in all_diagrams(n):
            for s in all_partial_states(n):
                truth = boundary_count_oracle(d, s).component_count
                tag = f"[{serialize(d)}] {s}"
                res["rlcp_equals_oracle"].record(loop_count_rlcp(d, s) == truth, tag)
                if not s.erased:
                    res["zlcp_equals_oracle"].record(loop_count_zlcp(d, s) == truth, tag)
                for j in sorted(s.unoriented):
                    for flavor in ("first", "second"):
                        cover, cs = double_cover(d, s, j, flavor)
                        res["double_cover_lemma"].record(oracle_count(cover, cs) == 2 * truth, f"{tag} j={j} {flavor}")
    return res


# -- spectral calculus ------------------------------------------------------

def all_graphs(n: int):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield gr.LinearlyOrderedGraph(n, frozenset(p for k, p in enumerate(pairs) if mask >> k & 1))


def random_graph(rng: random.Random, n: int, density: float | None = None) -> gr.LinearlyOrderedGraph:
    p = rng.random() if density is None else density
    return gr.LinearlyOrderedGraph(
        n, frozenset(e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p)
    )


SPECTRAL_FAMILIES = ("add_edge", "add_edge_corollary", "union", "join", "coalescence", "derivative", "mirror")


def _same_neighbourhood(g, u, v) -> bool:
    return g.neighbors(u) - {v} == g.neighbors(v) - {u}


def _check_add_edges(g, res) -> None:
    for u in range(1, g.n):
        v = u + 1
        if g.adjacent(u, v):
            continue
        direct = pl.graph_poly(gr.add_edge(g, u, v))
        res["add_edge"].record(pl.poly_add_edge_formula(g, u, v) == direct, f"{g.n}:{sorted(g.edges)} +{u}{v}")
        if _same_neighbourhood(g, u, v):
            minus = gr.delete_vertex(gr.delete_vertex(g, v), u)
            res["add_edge_corollary"].record(
                pl.graph_poly(minus) + pl.graph_poly(g) == direct, f"{g.n}:{sorted(g.edges)} +{u}{v}"
            )


def _check_pair(g1, g2, res, coalesce_all: bool = True, rng=None) -> None:
    tag = f"{g1.n}:{sorted(g1.edges)} | {g2.n}:{sorted(g2.edges)}"
    res["union"].record(pl.poly_union_formula(g1, g2) == pl.graph_poly(gr.disjoint_union(g1, g2)), tag)
    res["join"].record(pl.poly_join_formula(g1, g2) == pl.graph_poly(gr.join(g1, g2)), tag)
    if coalesce_all:
        choices = [(u, v) for u in range(1, g1.n + 1) for v in range(1, g2.n + 1)]
    else:
        choices = [(rng.randint(1, g1.n), rng.randint(1, g2.n))]
    for u, v in choices:
        direct = pl.graph_poly(gr.coalesce(g1, u, g2, v))
        res["coalescence"].record(pl.poly_coalescence_formula(g1, u, g2, v) == direct, f"{tag} at {u},{v}")


def _check_derivative(g, res) -> None:
    res["derivative"].record(
        pl.derivative(pl.graph_poly(g)) == pl.vertex_deleted_sum(g), f"{g.n}:{sorted(g.edges)}"
    )


def spectral_sweep(max_vertices: int = 5, random_cases: int = 1000, random_max: int = 8, seed: int = 1) -> dict[str, FamilyResult]:
    """Structural formulas vs direct characteristic polynomials.

    Exhaustive part: every graph on at most ``max_vertices`` vertices for the
    unary identities, and every pair whose combined graph has at most that
    many vertices for union, join and coalescence (all anchor choices).
    Random part: ``random_cases`` instances of each identity with at most
    ``random_max`` vertices in the result.
    """
    res = _results(*SPECTRAL_FAMILIES)
    graphs = {n: list(all_graphs(n)) for n in range(1, max_vertices + 1)}
    for n in graphs:
        for g in graphs[n]:
            _check_add_edges(g, res)
            _check_derivative(g, res)
    for n1 in graphs:
        for n2 in graphs:
            if n1 + n2 - 1 > max_vertices:
                continue
            for g1 in graphs[n1]:
                for g2 in graphs[n2]:
                    if n1 + n2 <= max_vertices:
                        _check_pair(g1, g2, res)
                    else:
                        for u in range(1, n1 + 1):
                            for v in range(1, n2 + 1):
                                direct = pl.graph_poly(gr.coalesce(g1, u, g2, v))
                                res["coalescence"].record(pl.poly_coalescence_formula(g1, u, g2, v) == direct, "")
    for n in range(max_vertices + 1):
        for d in all_diagrams(n):
            res["mirror"].record(
                pl.graph_poly(gr.interlacement_graph(d)) == pl.graph_poly(gr.interlacement_graph(mirror(d))),
                serialize(d),
            )
    rng = random.Random(seed)
    for _ in range(random_cases):
        g = random_graph(rng, rng.randint(2, random_max))
        _check_add_edges(g, res)
        _check_derivative(g, res)
        n1 = rng.randint(1, random_max - 1)
        n2 = rng.randint(1, random_max - n1)
        _check_pair(random_graph(rng, n1), random_graph(rng, n2), res, coalesce_all=False, rng=rng)
        d = random_diagram(rng, rng.randint(1, random_max))
        res["mirror"].record(
            pl.graph_poly(gr.interlacement_graph(d)) == pl.graph_poly(gr.interlacement_graph(mirror(d))),
            serialize(d),
        )
    return res


def random_diagram(rng: random.Random, n: int) -> ChordDiagram:
    word = [k for k in range(1, n + 1) for _ in range(2)]
    rng.shuffle(word)
    return canonical_relabel(ChordDiagram(tuple(word)))


def run_verify(max_chords: int = 5, threads: int = 1) -> dict[str, FamilyResult]:
    """Everything ``gauss-spectra verify`` reports."""
    out = diagram_sweep(max_chords, threads=threads, spot_checks=500)
    out.update(spectral_sweep(max_vertices=min(max_chords, 5), random_cases=200))
    return out
