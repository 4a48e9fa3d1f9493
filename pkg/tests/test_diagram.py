import itertools

import pytest
from hypothesis import given, strategies as st

from gauss_spectra.diagram import (
    ChordDiagram,
    PartialState,
    all_diagrams,
    canonical_map,
    canonical_relabel,
    cover_word,
    double_cover,
    mirror,
    mirror_with_permutation,
    parse_gauss_code,
    pretzel_code,
    pretzel_families,
    restrict,
    serialize,
)
from gauss_spectra.errors import (
    InvalidPretzel,
    MalformedCode,
    MalformedState,
    NotUnoriented,
    PartitionMismatch,
    ZeroParameter,
)
from gauss_spectra.graph import interlacement_graph


@st.composite
def diagrams(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    word = draw(st.permutations([k for k in range(1, n + 1) for _ in range(2)]))
    return ChordDiagram(tuple(word))


class TestParse:
    def test_trefoil(self):
        assert parse_gauss_code("1 2 3 1 2 3").word == (1, 2, 3, 1, 2, 3)

    def test_renames_by_first_occurrence(self):
        assert parse_gauss_code("5 7 5 7").word == (1, 2, 1, 2)
        assert parse_gauss_code("3 1 3 1").word == (1, 2, 1, 2)

    def test_annotations_survive(self):
        d = parse_gauss_code("1+o 2-u 1+u 2-o")
        assert d.word == (1, 2, 1, 2)
        assert serialize(d) == "1+o 2-u 1+u 2-o"
        assert d.annotation(1) == ("ou", "+")
        assert d.annotation(2) == ("uo", "-")

    def test_unannotated_has_no_annotation(self):
        assert parse_gauss_code("1 1").annotation(1) == (None, None)

    def test_empty_code(self):
        assert parse_gauss_code("").n == 0

    @pytest.mark.parametrize("text", ["1 2 1", "1 1 1 1", "0 0", "a b a b", "1x 1x", "-1 -1"])
    def test_malformed(self, text):
        with pytest.raises(MalformedCode):
            parse_gauss_code(text)

    def test_bad_word_direct(self):
        with pytest.raises(MalformedCode):
            ChordDiagram((1, 2, 2))

    @given(diagrams())
    def test_roundtrip(self, d):
        c = canonical_relabel(d)
        assert parse_gauss_code(serialize(c)) == c


class TestCanonical:
    def test_relabel_example(self):
        assert canonical_relabel(ChordDiagram((2, 1, 2, 1))).word == (1, 2, 1, 2)
        assert canonical_map(ChordDiagram((3, 1, 2, 3, 1, 2))) == {3: 1, 1: 2, 2: 3}

    @given(diagrams())
    def test_idempotent(self, d):
        c = canonical_relabel(d)
        assert canonical_relabel(c) == c
        assert c.is_canonical()

    def test_all_diagrams_counts(self):
        # (2n-1)!! words, all distinct and canonical
        for n, count in [(0, 1), (1, 1), (2, 3), (3, 15), (4, 105), (5, 945)]:
            words = [d.word for d in all_diagrams(n)]
            assert len(words) == count == len(set(words))
            assert all(ChordDiagram(w).is_canonical() for w in words)


class TestMirror:
    def test_example(self):
        md, tau = mirror_with_permutation(ChordDiagram((1, 2, 1, 3, 2, 3)))
        assert md.word == (1, 2, 1, 3, 2, 3)
        assert tau == {3: 1, 2: 2, 1: 3}

    @given(diagrams())
    def test_involution(self, d):
        c = canonical_relabel(d)
        assert mirror(mirror(c)) == c

    @given(diagrams())
    def test_tau_maps_graph(self, d):
        from gauss_spectra.graph import relabel

        md, tau = mirror_with_permutation(d)
        assert relabel(interlacement_graph(d), tau) == interlacement_graph(md)


class TestPartialState:
    def test_from_string(self):
        s = PartialState.from_string("oux")
        assert s.oriented == {1} and s.unoriented == {2} and s.erased == {3}
        assert s.to_string() == "oux" and str(s) == "oux"
        assert s.smoothed == {1, 2}

    def test_bad_char(self):
        with pytest.raises(MalformedState):
            PartialState.from_string("oq")

    def test_check(self):
        PartialState.from_string("ox").check(2)
        with pytest.raises(PartitionMismatch):
            PartialState.from_string("ox").check(3)
        with pytest.raises(PartitionMismatch):
            PartialState(frozenset({1}), frozenset({1})).check(1)

    def test_all_oriented(self):
        assert PartialState.all_oriented(3).to_string() == "ooo"


def test_restrict_relabels():
    sub, st_ = restrict(parse_gauss_code("1 2 3 1 2 3"), PartialState.from_string("xuo"))
    assert sub.word == (1, 2, 1, 2)
    assert st_.unoriented == {1} and st_.oriented == {2} and not st_.erased


class TestPretzel:
    @pytest.mark.parametrize(
        "pqr,code",
        [
            ((1, 1, 1), "1 2 3 1 2 3"),
            ((2, 1, 1), "1 2 3 4 2 1 4 3"),
            ((3, 3, 1), "1 2 3 4 5 6 7 3 2 1 6 5 4 7"),
        ],
    )
    def test_frozen_codes(self, pqr, code):
        assert serialize(pretzel_code(*pqr)) == code

    def test_families_of_even_example(self):
        _, fam = pretzel_families(2, 1, 1)
        assert fam == (frozenset({1, 2}), frozenset({4}), frozenset({3}))

    def test_signs_do_not_change_the_diagram(self):
        assert pretzel_code(-3, 1, -5) == pretzel_code(3, 1, 5)

    def test_errors(self):
        with pytest.raises(ZeroParameter):
            pretzel_code(0, 1, 1)
        with pytest.raises(InvalidPretzel):
            pretzel_code(2, 2, 1)
        assert pretzel_code(1, 1, 2).n == 4

    @pytest.mark.parametrize("pqr", [t for t in itertools.product((1, 3, 5), repeat=3)])
    def test_odd_structure_is_complete_tripartite(self, pqr):
        d, fam = pretzel_families(*pqr)
        g = interlacement_graph(d)
        assert [len(f) for f in fam] == list(pqr)
        for a, b in itertools.combinations(range(1, d.n + 1), 2):
            same = any(a in f and b in f for f in fam)
            assert g.adjacent(a, b) != same

    @pytest.mark.parametrize("pqr", [(2, 1, 3), (4, 3, 3), (1, 4, 3), (3, 1, 2), (4, 1, 1)])
    def test_one_even_structure(self, pqr):
        d, fam = pretzel_families(*pqr)
        g = interlacement_graph(d)
        k = next(i for i, v in enumerate(pqr) if v % 2 == 0)
        for i, f in enumerate(fam):
            assert len(f) == pqr[i]
            for a, b in itertools.combinations(sorted(f), 2):
                assert g.adjacent(a, b) == (i != k)


class TestCover:
    def test_word_first(self):
        d = parse_gauss_code("1 2 1 2")
        w = cover_word(d, PartialState.from_string("uo"), 1, "first")
        assert w == [(2, "a", True), (1, "a", True), (2, "b", True), (2, "a", False), (1, "b", False), (2, "b", False)]

    def test_codes(self):
        d = parse_gauss_code("1 2 1 2")
        s = PartialState.from_string("uo")
        assert serialize(double_cover(d, s, 1, "first")[0]) == "1 2 1 3 2 3"
        assert serialize(double_cover(d, s, 1, "second")[0]) == "1 2 3 1 3 2"

    def test_requires_unoriented(self):
        with pytest.raises(NotUnoriented):
            double_cover(parse_gauss_code("1 2 1 2"), PartialState.from_string("uo"), 2)

    def test_bad_flavor(self):
        with pytest.raises(ValueError):
            cover_word(parse_gauss_code("1 1"), PartialState.from_string("u"), 1, "third")

    @given(diagrams(max_n=6), st.data())
    def test_size(self, d, data):
        codes = data.draw(st.text(alphabet="oux", min_size=d.n, max_size=d.n))
        s = PartialState.from_string(codes)
        if not s.unoriented:
            return
        j = data.draw(st.sampled_from(sorted(s.unoriented)))
        for flavor in ("first", "second"):
            cover, cs = double_cover(d, s, j, flavor)
            assert cover.n == 2 * len(s.smoothed) - 1
            assert cs.oriented == frozenset(range(1, cover.n + 1))
