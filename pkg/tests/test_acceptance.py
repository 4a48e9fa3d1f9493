"""Acceptance criteria, one test and one printed PASS/FAIL line each (exact equality throughout).

Run under pytest (lines are repeated in the terminal summary) or directly:
``python tests/test_acceptance.py``.

Two criteria do not hold for the closed forms as printed, and their lines
say FAIL. Their tests pin the exact mismatch sets, so any change in
behaviour still breaks the suite:

* criterion 7: the fourth family's P'(0) expression is not even an integer
  at (1, 1); the direct values are frozen below;
* criterion 8: the one-even N1 formula undercounts at odd m when the even
  parameter exceeds 2; a P(P-1) prefactor removes every mismatch.
"""

from __future__ import annotations

import itertools
import random
import subprocess
import sys
import time
from functools import lru_cache

import pytest

from gauss_spectra import graph as gr
from gauss_spectra import poly as pl
from gauss_spectra.diagram import parse_gauss_code
from gauss_spectra.pretzel import (
    LEMMAS,
    PretzelParams,
    default_threads,
    direct_lemma_values,
    discrepancies,
    lemma_values,
    n1_closed,
    sweep,
)
from gauss_spectra.verify import diagram_sweep, spectral_sweep

LINES: dict[int, str] = {}


def report(k: int, ok: bool, what: str) -> None:
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {what}"
    LINES[k] = line
    print(line)


# -- 1 -----------------------------------------------------------------------

FIGURE_MATRIX = ((0, 1, 1, 0), (-1, 0, 0, 1), (-1, 0, 0, 1), (0, -1, -1, 0))


def criterion_1():
    best = float("inf")
    for _ in range(20):
        t0 = time.perf_counter()
        g = gr.interlacement_graph(parse_gauss_code("1 2 3 1 4 3 2 4"))
        m = gr.skew_adjacency(g)
        best = min(best, time.perf_counter() - t0)
    same = sorted(g.edges) == [(1, 2), (1, 3), (2, 4), (3, 4)] and m == FIGURE_MATRIX
    ok = same and best < 1e-3
    report(1, ok, f"four-chord example graph and skew matrix exact={same}, {best * 1e6:.0f} us")
    return ok


def test_criterion_1_figure_matrices():
    assert criterion_1()


# -- 2, 3, 4 ---------------------------------------------------------------

@lru_cache(maxsize=1)
def six_chord_sweep():
    t0 = time.perf_counter()
    res = diagram_sweep(6, threads=default_threads(), spot_checks=2000)
    return res, time.perf_counter() - t0


def criterion_2():
    res, secs = six_chord_sweep()
    fams = ("rlcp_equals_oracle", "zlcp_equals_oracle", "direct_spot_checks", "roundtrip")
    ok = all(res[f].ok for f in fams)
    detail = ", ".join(f"{f} {res[f].checked - res[f].failed}/{res[f].checked}" for f in fams)
    report(2, ok, f"n<=6 all partial states: {detail} ({secs:.0f} s)")
    if not ok:
        print("\n".join(res[f].line() for f in fams))
    return ok


def criterion_3():
    res, _ = six_chord_sweep()
    r = res["double_cover_lemma"]
    report(3, r.ok, f"covers at every unoriented chord, both flavors: {r.checked - r.failed}/{r.checked}")
    return r.ok


def random_skew(rng, n):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                m[i][j], m[j][i] = 1, -1
    return m


def criterion_4():
    res, _ = six_chord_sweep()
    r = res["m0_equals_nullity"]
    rng = random.Random(2024)
    bad = 0
    for _ in range(10_000):
        m = random_skew(rng, rng.randint(1, 10))
        bad += pl.m0(pl.char_poly(m)) != pl.nullity_q(m)
    theta = res["theta_kernel"]
    ok = r.ok and bad == 0 and theta.ok
    report(4, ok, f"sweep matrices {r.checked - r.failed}/{r.checked}, random skew {10_000 - bad}/10000, "
                  f"band-side kernel vectors {theta.checked - theta.failed}/{theta.checked}")
    return ok


def test_criterion_2_three_counts_agree():
    assert criterion_2()


def test_criterion_3_double_cover_doubles():
    assert criterion_3()


def test_criterion_4_zero_multiplicity_is_nullity():
    assert criterion_4()


# -- 5 -----------------------------------------------------------------------

def criterion_5():
    res = spectral_sweep(max_vertices=5, random_cases=1000, random_max=8)
    ok = all(r.ok for r in res.values())
    report(5, ok, ", ".join(f"{k} {r.checked - r.failed}/{r.checked}" for k, r in res.items()))
    return ok


def test_criterion_5_spectral_calculus():
    assert criterion_5()


# -- 6 -----------------------------------------------------------------------

def criterion_6():
    rows = []
    for n in range(1, 13):
        rows.append(pl.path_poly(n) == pl.graph_poly(gr.path_graph(n)))
        rows.append(pl.complete_poly(n) == pl.graph_poly(gr.complete_graph(n)))
    for n in range(0, 13):
        rows.append(pl.det(gr.skew_adjacency(gr.complete_graph(n))) == (1 if n % 2 == 0 else 0))
    rows.append(pl.path_poly(1) == pl.X)
    rows.append(pl.path_poly(2) == pl.X * pl.X + 1)
    ok = all(rows)
    report(6, ok, f"path, complete, determinant and initial checks {sum(rows)}/{len(rows)}")
    return ok


def test_criterion_6_closed_forms():
    assert criterion_6()


# -- 7 -----------------------------------------------------------------------

# P'(0) of the fourth family computed on the constructed graphs, (alpha, beta) -> value
FOURTH_FAMILY_DERIVATIVE = {
    (1, 1): 3, (1, 2): 6, (1, 3): 7, (1, 4): 10, (1, 5): 11,
    (2, 1): 4, (2, 2): 9, (2, 3): 8, (2, 4): 13, (2, 5): 12,
    (3, 1): 7, (3, 2): 10, (3, 3): 11, (3, 4): 14, (3, 5): 15,
    (4, 1): 8, (4, 2): 13, (4, 3): 12, (4, 4): 17, (4, 5): 16,
    (5, 1): 11, (5, 2): 14, (5, 3): 15, (5, 4): 18, (5, 5): 19,
}


def lemma_mismatches():
    out = []
    for which in LEMMAS:
        for a, b in itertools.product(range(1, 6), repeat=2):
            closed, direct = lemma_values(which, a, b), direct_lemma_values(which, a, b)
            if closed != direct:
                out.append((which, a, b, closed, direct))
    return out


def criterion_7():
    bad = lemma_mismatches()
    total = 4 * 25
    ok = not bad
    detail = f"{total - len(bad)}/{total} (family, alpha, beta) values agree"
    if bad:
        fams = sorted({b[0] for b in bad})
        detail += f"; mismatches only in family {', '.join(fams)} P'(0), e.g. {bad[0][1:3]}: closed {bad[0][3][1]} vs direct {bad[0][4][1]}"
    report(7, ok, detail)
    return ok


def test_criterion_7_family_values():
    criterion_7()
    bad = lemma_mismatches()
    # documented outcome: the first three families agree everywhere; in the
    # fourth only the derivative disagrees, at every (alpha, beta)
    assert {b[0] for b in bad} == {"4.4"}
    assert len(bad) == 25
    for which, a, b, closed, direct in bad:
        assert closed[0] == direct[0] == 0
        assert direct[1] == FOURTH_FAMILY_DERIVATIVE[(a, b)]
        # parity-corrected expression fitted to the direct values
        sa, sb = (-1) ** a, (-1) ** b
        assert 4 * direct[1] == -2 + 4 * sb + 2 * sa * sb + 8 * a + 8 * b


# -- 8 -----------------------------------------------------------------------

ODD_TRIPLES = list(itertools.product((1, 3, 5), repeat=3))
ONE_EVEN_TRIPLES = [t for t in itertools.product(range(1, 5), repeat=3) if sum(v % 2 == 0 for v in t) == 1]

# (P, Q, R, m, printed N1, census) for every one-even disagreement, all with j = 1
ONE_EVEN_N1_MISMATCHES = [
    (1, 1, 4, 3, 16, 32), (1, 3, 4, 3, 82, 114), (1, 3, 4, 5, 32, 64), (1, 4, 1, 3, 16, 32),
    (1, 4, 3, 3, 82, 114), (1, 4, 3, 5, 32, 64), (3, 1, 4, 3, 82, 114), (3, 1, 4, 5, 32, 64),
    (3, 3, 4, 3, 192, 240), (3, 3, 4, 5, 374, 534), (3, 3, 4, 7, 48, 96), (3, 4, 1, 3, 82, 114),
    (3, 4, 1, 5, 32, 64), (3, 4, 3, 3, 192, 240), (3, 4, 3, 5, 374, 534), (3, 4, 3, 7, 48, 96),
    (4, 1, 1, 3, 16, 32), (4, 1, 3, 3, 82, 114), (4, 1, 3, 5, 32, 64), (4, 3, 1, 3, 82, 114),
    (4, 3, 1, 5, 32, 64), (4, 3, 3, 3, 192, 240), (4, 3, 3, 5, 374, 534), (4, 3, 3, 7, 48, 96),
]


@lru_cache(maxsize=1)
def pretzel_rows():
    threads = default_threads()
    rows = []
    for t in ODD_TRIPLES + ONE_EVEN_TRIPLES:
        for j in (0, 1):
            rows += sweep(PretzelParams(*t), j, threads)
    return rows


def criterion_8():
    rows = pretzel_rows()
    dis = discrepancies(rows)
    odd_bad = [d for d in dis if d.params.all_odd]
    even_bad = [d for d in dis if not d.params.all_odd]
    amended_ok = all(d.amended_form == d.brute_force for d in even_bad)
    ok = not dis
    detail = (f"{len(rows) - len(dis)}/{len(rows)} rows agree; all-odd mismatches {len(odd_bad)} "
              f"(pair term read as PQ+QR+RP); one-even N1 mismatches {len(even_bad)}")
    if even_bad:
        detail += f", all removed by the P(P-1) prefactor: {amended_ok}"
    report(8, ok, detail)
    for d in dis:
        print(f"  discrepancy {d.to_dict()}")
    return ok


def test_criterion_8_pretzel_census():
    criterion_8()
    rows = pretzel_rows()
    dis = discrepancies(rows)
    # all-odd formulas agree everywhere, with the pair term read as RP
    assert not [d for d in dis if d.params.all_odd]
    assert all(r.agrees for r in rows if r.params.all_odd)
    # one-even: N0 always agrees; N1 disagrees exactly on the frozen set
    assert all(d.j == 1 for d in dis)
    got = sorted((d.params.p, d.params.q, d.params.r, d.m, d.closed_form, d.brute_force) for d in dis)
    assert got == sorted(ONE_EVEN_N1_MISMATCHES)
    # and the amended reading matches the census on every row
    for r in rows:
        if r.j == 1:
            assert n1_closed(r.params, r.m, amended=True) == r.brute_force


# -- 9 -----------------------------------------------------------------------

CLI_GOLDEN = [
    (["count", "1 2 3 1 2 3", "ooo", "--method", "all"], "2"),
    (["charpoly", "1 2 3 1 2 3"], "0 3 0 1"),
    (["parse", "5 7 5 7"], "1 2 1 2"),
    (["graph", "1 2 3 1 4 3 2 4"], "4\n1 2\n1 3\n2 4\n3 4"),
    (["cover", "1 2 1 2", "uo", "--chord", "1"], "1 2 1 3 2 3"),
    (["pretzel", "1", "1", "1", "--m", "2", "--j", "0"],
     '{"params": {"p": 1, "q": 1, "r": 1, "P": 1, "Q": 1, "R": 1}, "m": 2, "j": 0, '
     '"closed_form": 3, "brute_force": 3, "agrees": true}'),
]


def cli(*argv):
    return subprocess.run([sys.executable, "-m", "gauss_spectra", *argv], capture_output=True, text=True)


def criterion_9():
    results = []
    for argv, expected in CLI_GOLDEN:
        done = cli(*argv)
        results.append(done.returncode == 0 and done.stdout.strip() == expected)
    done = cli("verify", "--max-chords", "5")
    results.append(done.returncode == 0)
    ok = all(results)
    report(9, ok, f"golden outputs {sum(results[:-1])}/{len(CLI_GOLDEN)}, verify --max-chords 5 exit {done.returncode}")
    return ok


def test_criterion_9_cli():
    assert criterion_9()


if __name__ == "__main__":
    outcomes = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(),
                criterion_6(), criterion_7(), criterion_8(), criterion_9()]
    print(f"{sum(outcomes)}/9 criteria pass")
