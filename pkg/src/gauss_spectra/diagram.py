"""Based chord diagrams: parsing, canonical labels, mirrors, pretzels, double covers.

A diagram is stored as its double-occurrence word, read counter-clockwise from
the basepoint. Labels are always ``1..n``; the word need not be canonical
(see :func:`canonical_relabel`), which lets mirrors and covers be expressed
before relabelling.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import MalformedCode, MalformedState, NotUnoriented, PartitionMismatch
from .errors import InvalidPretzel, ZeroParameter

_TOKEN = re.compile(r"^(\d+)([+-]?[ou]?)$")


@dataclass(frozen=True)
class ChordDiagram:
    """Double-occurrence word over the labels ``1..n``.

    ``marks`` holds one opaque suffix per word position (``"+o"``, ``"-"``,
    ``""``...). They survive relabelling and serialization but no count
    ever reads them.
    """

    word: tuple[int, ...]
    marks: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        object.__setattr__(self, "word", word)
        if self.marks and len(self.marks) != len(word):
            raise MalformedCode("annotation count does not match word length")
        n = len(word) // 2
        if len(word) % 2 or sorted(word) != [k // 2 + 1 for k in range(2 * n)]:
            raise MalformedCode(f"not a double-occurrence word over 1..{n}: {word}")

    @property
    def n(self) -> int:
        return len(self.word) // 2

    def endpoints(self) -> dict[int, tuple[int, int]]:
        """Map label -> (position of a_i, position of b_i)."""
        first: dict[int, int] = {}
        ends = {}
        for pos, lab in enumerate(self.word):
            if lab in first:
                ends[lab] = (first[lab], pos)
            else:
                first[lab] = pos
        return ends

    def annotation(self, label: int) -> tuple[str | None, str | None]:
        """(direction, sign) of a chord, or Nones when not annotated.

        direction is ``"ou"`` when the first passage is the over-strand,
        ``"uo"`` otherwise.
        """
        if not self.marks:
            return None, None
        a, b = self.endpoints()[label]
        ma, mb = self.marks[a], self.marks[b]
        roles = (ma[-1:] if ma[-1:] in ("o", "u") else "") + (mb[-1:] if mb[-1:] in ("o", "u") else "")
        signs = {m[0] for m in (ma, mb) if m[:1] in ("+", "-")}
        direction = roles if len(roles) == 2 else None
        sign = signs.pop() if len(signs) == 1 else None
        return direction, sign

    def is_canonical(self) -> bool:
        return self.word == canonical_relabel(self).word

    def __str__(self) -> str:
        return serialize(self)


@dataclass(frozen=True)
class PartialState:
    """Partition of chord labels into oriented, unoriented and erased chords."""

    oriented: frozenset[int] = frozenset()
    unoriented: frozenset[int] = frozenset()
    erased: frozenset[int] = frozenset()

    def __post_init__(self):
        for name in ("oriented", "unoriented", "erased"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

    @classmethod
    def all_oriented(cls, n: int) -> "PartialState":
        return cls(oriented=frozenset(range(1, n + 1)))

    @classmethod
    def from_string(cls, text: str) -> "PartialState":
        """Parse ``"oux"``: character k is the smoothing of chord k."""
        buckets: dict[str, set[int]] = {"o": set(), "u": set(), "x": set()}
        for k, ch in enumerate(text.strip(), start=1):
            if ch not in buckets:
                raise MalformedState(f"state character {ch!r} not in o/u/x")
            buckets[ch].add(k)
        return cls(frozenset(buckets["o"]), frozenset(buckets["u"]), frozenset(buckets["x"]))

    @property
    def smoothed(self) -> frozenset[int]:
        return self.oriented | self.unoriented

    def size(self) -> int:
        return len(self.oriented) + len(self.unoriented) + len(self.erased)

    def code(self, label: int) -> str:
        if label in self.oriented:
            return "o"
        if label in self.unoriented:
            return "u"
        return "x"

    def to_string(self) -> str:
        return "".join(self.code(k) for k in range(1, self.size() + 1))

    def check(self, n: int) -> None:
        """Raise PartitionMismatch unless the three sets partition 1..n."""
        parts = (self.oriented, self.unoriented, self.erased)
        total = sum(len(p) for p in parts)
        union = frozenset().union(*parts)
        if total != n or union != frozenset(range(1, n + 1)):
            raise PartitionMismatch(f"state {self.to_string()!r} does not partition chords 1..{n}")

    def __str__(self) -> str:
        return self.to_string()


def parse_gauss_code(text: str) -> ChordDiagram:
    """Parse whitespace-separated labels, optionally suffixed ``+``/``-`` and ``o``/``u``.

    Labels may be any positive integers; they are renamed ``1..n`` in order of
    first occurrence.
    """
    labels = []
    marks = []
    for token in text.split():
        m = _TOKEN.match(token)
        if m is None:
            raise MalformedCode(f"bad token {token!r}")
        lab = int(m.group(1))
        if lab <= 0:
            raise MalformedCode(f"labels must be positive, got {lab}")
        labels.append(lab)
        marks.append(m.group(2))
    counts = Counter(labels)
    bad = sorted(lab for lab, c in counts.items() if c != 2)
    if bad:
        raise MalformedCode(f"labels {bad} do not occur exactly twice")
    word = _first_occurrence_word(labels)
    return ChordDiagram(word, tuple(marks) if any(marks) else ())


def serialize(d: ChordDiagram) -> str:
    if d.marks:
        return " ".join(f"{lab}{m}" for lab, m in zip(d.word, d.marks))
    return " ".join(str(lab) for lab in d.word)


def _first_occurrence_word(labels: Iterable) -> tuple[int, ...]:
    names: dict = {}
    out = []
    for lab in labels:
        if lab not in names:
            names[lab] = len(names) + 1
        out.append(names[lab])
    return tuple(out)


def canonical_relabel(d: ChordDiagram) -> ChordDiagram:
    """Label chords 1, 2, ... by repeatedly taking the first endpoint and deleting its chord.

    Deleting the chord of the first endpoint leaves the remaining endpoints in
    place, so the iteration amounts to ordering chords by first occurrence.
    """
    return ChordDiagram(_first_occurrence_word(d.word), d.marks)


def canonical_map(d: ChordDiagram) -> dict[int, int]:
    """old label -> canonical label."""
    names: dict[int, int] = {}
    for lab in d.word:
        if lab not in names:
            names[lab] = len(names) + 1
    return names


def mirror_with_permutation(d: ChordDiagram) -> tuple[ChordDiagram, dict[int, int]]:
    """Reflect the circle through the basepoint and relabel canonically.

    Returns the mirror diagram and tau: chord label in ``d`` -> label of its
    image in the mirror.
    """
    rev = ChordDiagram(tuple(reversed(d.word)), tuple(reversed(d.marks)))
    tau = canonical_map(rev)
    return canonical_relabel(rev), tau


def mirror(d: ChordDiagram) -> ChordDiagram:
    return mirror_with_permutation(d)[0]


def restrict(d: ChordDiagram, s: PartialState) -> tuple[ChordDiagram, PartialState]:
    """Erase the chords of ``s.erased``; return the canonical remainder and the induced full state."""
    s.check(d.n)
    kept = [lab for lab in d.word if lab not in s.erased]
    names: dict[int, int] = {}
    for lab in kept:
        if lab not in names:
            names[lab] = len(names) + 1
    sub = ChordDiagram(tuple(names[lab] for lab in kept))
    state = PartialState(
        oriented=frozenset(names[i] for i in s.oriented),
        unoriented=frozenset(names[i] for i in s.unoriented),
    )
    return sub, state


# -- pretzel traversal ------------------------------------------------------

def _twist_visits(counts: Sequence[int]) -> list[tuple[int, int]]:
    """Walk the standard three-region pretzel diagram once; return visited (region, crossing).

    Region t is a vertical two-strand twist with ``counts[t]`` crossings,
    numbered 1 (top) to c (bottom). Its corners are NW/NE/SW/SE; NE of region t
    joins NW of region t+1 and SE of region t joins SW of region t+1
    (indices mod 3). A strand entering at the top leaves at the bottom on the
    other side iff the crossing count is odd.
    """
    visits = []
    # state: (region, side, at_top) describing the corner we are entering
    region, side, at_top = 0, "W", True
    start = (region, side, at_top)
    while True:
        c = counts[region]
        order = range(1, c + 1) if at_top else range(c, 0, -1)
        visits.extend((region, k) for k in order)
        out_side = side if c % 2 == 0 else ("E" if side == "W" else "W")
        out_top = not at_top
        if out_side == "E":
            region, side = (region + 1) % 3, "W"
        else:
            region, side = (region - 1) % 3, "E"
        at_top = out_top
        if (region, side, at_top) == start:
            break
        if len(visits) > 2 * sum(counts):
            raise InvalidPretzel(f"pretzel {tuple(counts)} is not a knot")
    return visits


def _check_pretzel(p: int, q: int, r: int) -> tuple[int, int, int]:
    if 0 in (p, q, r):
        raise ZeroParameter(f"pretzel parameters must be nonzero: {(p, q, r)}")
    if sum(1 for x in (p, q, r) if x % 2 == 0) > 1:
        raise InvalidPretzel(f"L{(p, q, r)} has two even twist regions and is a link")
    return abs(p), abs(q), abs(r)


def pretzel_families(p: int, q: int, r: int) -> tuple[ChordDiagram, tuple[frozenset[int], ...]]:
    """Pretzel Gauss code plus the canonical labels of each twist region's chords.

    Crossing signs are dropped, so ``p`` and ``-p`` give the same diagram.
    """
    counts = _check_pretzel(p, q, r)
    visits = _twist_visits(counts)
    if len(visits) != 2 * sum(counts):
        raise InvalidPretzel(f"traversal of L{(p, q, r)} missed crossings")
    names: dict[tuple[int, int], int] = {}
    for v in visits:
        if v not in names:
            names[v] = len(names) + 1
    word = tuple(names[v] for v in visits)
    families = tuple(frozenset(lab for (t, _), lab in names.items() if t == region) for region in range(3))
    return ChordDiagram(word), families


def pretzel_code(p: int, q: int, r: int) -> ChordDiagram:
    return pretzel_families(p, q, r)[0]


# -- double covers ----------------------------------------------------------

# A letter is (label, endpoint, barred) with endpoint "a" (first) or "b" (second).
Letter = tuple[int, str, bool]


def _bar(word: Sequence[Letter]) -> list[Letter]:
    return [(lab, e, not barred) for lab, e, barred in reversed(word)]


def cover_word(d: ChordDiagram, s: PartialState, j: int, flavor: str = "first") -> list[Letter]:
    """The lettered word W^f_j(S) or W^s_j(S) of the erased diagram."""
    s.check(d.n)
    if j not in s.unoriented:
        raise NotUnoriented(f"chord {j} is not in the unoriented set")
    if flavor not in ("first", "second"):
        raise ValueError(f"flavor must be 'first' or 'second', got {flavor!r}")
    seen: set[int] = set()
    letters: list[Letter] = []
    for lab in d.word:
        if lab in s.erased:
            continue
        letters.append((lab, "b" if lab in seen else "a", False))
        seen.add(lab)
    pa = letters.index((j, "a", False))
    pb = letters.index((j, "b", False))
    w1, w2, w3 = letters[:pa], letters[pa + 1:pb], letters[pb + 1:]
    if flavor == "first":
        return w1 + _bar(w2) + [(j, "a", True)] + _bar(w1) + _bar(w3) + w2 + [(j, "b", False)] + w3
    return w1 + [(j, "a", False)] + w2 + _bar(w1) + _bar(w3) + [(j, "b", True)] + _bar(w2) + w3


def double_cover(d: ChordDiagram, s: PartialState, j: int, flavor: str = "first") -> tuple[ChordDiagram, PartialState]:
    """Chord diagram of the orientation double cover, with its all-oriented state.

    Chords: for oriented i, a_i-b_i and its barred copy; for unoriented i != j,
    abar_i-b_i and a_i-bbar_i; plus abar_j-b_j (first) or a_j-bbar_j (second).
    """
    letters = cover_word(d, s, j, flavor)
    pairs: list[tuple[Letter, Letter]] = []
    for i in sorted(s.smoothed):
        if i == j:
            continue
        if i in s.oriented:
            pairs += [((i, "a", False), (i, "b", False)), ((i, "a", True), (i, "b", True))]
        else:
            pairs += [((i, "a", True), (i, "b", False)), ((i, "a", False), (i, "b", True))]
    if flavor == "first":
        pairs.append(((j, "a", True), (j, "b", False)))
    else:
        pairs.append(((j, "a", False), (j, "b", True)))
    chord_of: dict[Letter, int] = {}
    for k, (x, y) in enumerate(pairs):
        chord_of[x] = chord_of[y] = k
    cover = ChordDiagram(_first_occurrence_word(chord_of[x] for x in letters))
    return cover, PartialState.all_oriented(cover.n)


def all_diagrams(n: int) -> Iterable[ChordDiagram]:
    """Every canonical diagram with ``n`` chords, (2n-1)!! of them."""

    def extend(word: list[int | None], next_label: int):
        try:
            first_free = word.index(None)
        except ValueError:
            yield ChordDiagram(tuple(word))  # type: ignore[arg-type]
            return
        word[first_free] = next_label
        for pos in range(first_free + 1, len(word)):
            if word[pos] is None:
                word[pos] = next_label
                yield from extend(word, next_label + 1)
                word[pos] = None
        word[first_free] = None

    yield from extend([None] * (2 * n), 1)
