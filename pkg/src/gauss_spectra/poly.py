"""Exact integer polynomials, characteristic polynomials and nullities.

Results are exact at any size. Small matrices with entries in {-1, 0, 1}
go through compiled int64 kernels whose intermediates provably fit; all
other input runs on Python ints.
"""

from __future__ import annotations

from math import comb

import numba
import numpy as np
from typing import Sequence

from . import graph as gr
from .errors import HypothesisViolated, OutOfRange, ZeroPolynomial
from .graph import LinearlyOrderedGraph


class IntPolynomial:
    """Dense polynomial with integer coefficients, constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, a: int) -> "IntPolynomial":
        return cls((a,))

    @classmethod
    def from_text(cls, text: str) -> "IntPolynomial":
        return cls(int(t) for t in text.split())

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "IntPolynomial":
        b = _coerce(other).coeffs
        a = self.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other) -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "IntPolynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "IntPolynomial":
        b = _coerce(other).coeffs
        a = self.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x0: int) -> int:
        return eval_at(self, x0)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and k) else str(mag)
            if k:
                body += "x" if k == 1 else f"x^{k}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        head = ("-" if first_sign == "-" else "") + first
        return " ".join([head] + [f"{s} {b}" for s, b in terms[1:]])


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    return IntPolynomial((p,))


X = IntPolynomial.x()
ONE = IntPolynomial.const(1)


def derivative(p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial([k * c for k, c in enumerate(p.coeffs)][1:])


def eval_at(p: IntPolynomial, x0: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x0 + c
    return acc


def m0(p: IntPolynomial) -> int:
    """Multiplicity of zero as a root."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no finite root multiplicity")
    k = 0
    while p.coeffs[k] == 0:
        k += 1
    return k


# -- characteristic polynomials ---------------------------------------------

def _berkowitz(a, zero, one) -> list:
    """Coefficients of det(xI - a), highest degree first, without division.

    ``a`` is a square matrix over any commutative ring whose elements support
    ``+``, ``-`` and ``*``.
    """
    n = len(a)
    vect = [one]
    for k in range(n):
        # leading (k+1)x(k+1) block = [[M, C], [R, a_kk]]
        row = a[k][:k]
        col = [a[i][k] for i in range(k)]
        items = [one, zero - a[k][k]]
        v = col
        for _ in range(k):
            s = zero
            for r, x in zip(row, v):
                s = s + r * x
            items.append(zero - s)
            v = [_dot(a[i][:k], v, zero) for i in range(k)]
        new = []
        for i in range(k + 2):
            s = zero
            for j in range(max(0, i - len(items) + 1), min(i, k) + 1):
                s = s + items[i - j] * vect[j]
            new.append(s)
        vect = new
    return vect


def _dot(row, v, zero):
    s = zero
    for r, x in zip(row, v):
        if r:
            s = s + r * x
    return s


def char_poly_bigint(m: Sequence[Sequence[int]]) -> IntPolynomial:
    """det(xI - m) by Berkowitz on Python ints; exact for any entries and size."""
    coeffs = _berkowitz([list(row) for row in m], 0, 1)
    return IntPolynomial(reversed(coeffs))


# For {-1,0,1} matrices up to this size every Berkowitz intermediate fits in
# int64: Krylov entries are at most 11**11, block coefficients at most
# C(11,10) * 10**5, so each convolution sum stays below 2**62. Bareiss pivots
# are minors bounded by 12**6.
INT64_SAFE_DIM = 12


@numba.njit(cache=True)
def _berkowitz_int64(a):  # pragma: no cover - compiled
    n = a.shape[0]
    vect = np.zeros(n + 1, dtype=np.int64)
    vect[0] = 1
    items = np.zeros(n + 1, dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    w = np.zeros(n, dtype=np.int64)
    new = np.zeros(n + 1, dtype=np.int64)
    for k in range(n):
        items[0] = 1
        items[1] = -a[k, k]
        for i in range(k):
            v[i] = a[i, k]
        for t in range(k):
            acc = 0
            for i in range(k):
                acc += a[k, i] * v[i]
            items[t + 2] = -acc
            for i in range(k):
                acc = 0
                for j in range(k):
                    acc += a[i, j] * v[j]
                w[i] = acc
            for i in range(k):
                v[i] = w[i]
        for i in range(k + 2):
            acc = 0
            for j in range(min(i, k) + 1):
                acc += items[i - j] * vect[j]
            new[i] = acc
        for i in range(k + 2):
            vect[i] = new[i]
    return vect


@numba.njit(cache=True)
def _bareiss_rank_int64(a):  # pragma: no cover - compiled
    rows, cols = a.shape
    rank = 0
    prev = 1
    for c in range(cols):
        piv = -1
        for r in range(rank, rows):
            if a[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        for k in range(cols):
            tmp = a[rank, k]
            a[rank, k] = a[piv, k]
            a[piv, k] = tmp
        p = a[rank, c]
        for r in range(rank + 1, rows):
            f = a[r, c]
            for k in range(c + 1, cols):
                a[r, k] = (p * a[r, k] - f * a[rank, k]) // prev
            a[r, c] = 0
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def _small_unit_matrix(m) -> np.ndarray | None:
    n = len(m)
    if n == 0 or n > INT64_SAFE_DIM or any(len(row) > INT64_SAFE_DIM for row in m):
        return None
    if any(x not in (-1, 0, 1) for row in m for x in row):
        return None
    a = np.array(m, dtype=np.int64)
    return a if a.ndim == 2 else None


def char_poly(m: Sequence[Sequence[int]]) -> IntPolynomial:
    """det(xI - m) for a square integer matrix, division-free.

    Small {-1,0,1} matrices take the compiled int64 route (exact, see
    INT64_SAFE_DIM); everything else runs on Python ints.
    """
    a = _small_unit_matrix(m)
    if a is None or a.shape[0] != a.shape[1]:
        return char_poly_bigint(m)
    return IntPolynomial(int(c) for c in _berkowitz_int64(a)[::-1])


def graph_poly(g: LinearlyOrderedGraph) -> IntPolynomial:
    """Characteristic polynomial of the skew-adjacency matrix of ``g``."""
    return char_poly(gr.skew_adjacency(g))


def det(m) -> object:
    """Determinant over any commutative ring (ints or IntPolynomial entries)."""
    n = len(m)
    if n == 0:
        return 1
    zero = m[0][0] - m[0][0]
    one = zero + 1
    coeffs = _berkowitz([list(row) for row in m], zero, one)
    # char poly constant term is det(-m) = (-1)^n det(m)
    return coeffs[n] if n % 2 == 0 else zero - coeffs[n]


def adjugate_entry(a: Sequence[Sequence[int]], u: int, v: int) -> IntPolynomial:
    """(u, v) entry of adj(xI - a), i.e. the (v, u) cofactor; 1-based indices."""
    n = len(a)
    if not (1 <= u <= n and 1 <= v <= n):
        raise OutOfRange(f"({u}, {v}) outside a {n}x{n} matrix")
    shifted = [[(X if i == j else IntPolynomial()) - a[i][j] for j in range(n)] for i in range(n)]
    minor = [[shifted[i][j] for j in range(n) if j != u - 1] for i in range(n) if i != v - 1]
    d = _coerce(det(minor)) if minor else ONE
    return d if (u + v) % 2 == 0 else -d


# -- nullities --------------------------------------------------------------

def rank_q(m: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    fast = _small_unit_matrix(m)
    if fast is not None:
        return int(_bareiss_rank_int64(fast))
    return _bareiss_rank(m)


def _bareiss_rank(m: Sequence[Sequence[int]]) -> int:
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    prev = 1
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for r in range(rank + 1, rows):
            f = a[r][c]
            ar, ak = a[r], a[rank]
            for k in range(c + 1, cols):
                ar[k] = (p * ar[k] - f * ak[k]) // prev
            ar[c] = 0
        prev = p
        rank += 1
        if rank == rows:
            break
    return rank


def nullity_q(m: Sequence[Sequence[int]]) -> int:
    return len(m) - rank_q(m) if m else 0


def nullity_z2(m: Sequence[Sequence[int]]) -> int:
    """Corank over the two-element field; rows are packed into int bitsets."""
    rows = []
    for row in m:
        bits = 0
        for j, x in enumerate(row):
            if x & 1:
                bits |= 1 << j
        rows.append(bits)
    rank = 0
    n_cols = len(m[0]) if m else 0
    for col in range(n_cols):
        bit = 1 << col
        piv = next((i for i in range(rank, len(rows)) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] & bit:
                rows[i] ^= pr
        rank += 1
    return n_cols - rank


# -- closed forms -----------------------------------------------------------

def path_poly(n: int) -> IntPolynomial:
    """Ordered path: P_n = x P_{n-1} + P_{n-2}, P_1 = x, P_2 = x^2 + 1 (P_0 = 1)."""
    if n < 0:
        raise OutOfRange("path length must be non-negative")
    prev, cur = ONE, X
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, X * cur + prev
    return cur


def complete_poly(n: int) -> IntPolynomial:
    """Ordered complete graph: ((x-1)^n + (x+1)^n)/2 = sum_j C(n, n-2j) x^(n-2j)."""
    if n < 0:
        raise OutOfRange("vertex count must be non-negative")
    coeffs = [0] * (n + 1)
    for k in range(n % 2, n + 1, 2):
        coeffs[k] = comb(n, k)
    return IntPolynomial(coeffs)


def poly_add_edge_formula(g: LinearlyOrderedGraph, u: int, v: int) -> IntPolynomial:
    """P(G+uv) = P(G-u-v) + P(G) + theta_uv - theta_vu, for l(v) = l(u)+1 and u, v non-adjacent."""
    if not (1 <= u <= g.n and 1 <= v <= g.n):
        raise OutOfRange(f"({u}, {v}) not vertices of a {g.n}-vertex graph")
    if v != u + 1 or g.adjacent(u, v):
        raise HypothesisViolated("needs l(v) = l(u) + 1 and u, v non-adjacent")
    a = gr.skew_adjacency(g)
    minus_uv = gr.delete_vertex(gr.delete_vertex(g, v), u)
    return graph_poly(minus_uv) + graph_poly(g) + adjugate_entry(a, u, v) - adjugate_entry(a, v, u)


def poly_union_formula(g1: LinearlyOrderedGraph, g2: LinearlyOrderedGraph) -> IntPolynomial:
    return graph_poly(g1) * graph_poly(g2)


def _cone_excess(g: LinearlyOrderedGraph) -> IntPolynomial:
    # P(K1 join G) - x P(G)
    return graph_poly(gr.join(gr.complete_graph(1), g)) - X * graph_poly(g)


def poly_join_formula(g1: LinearlyOrderedGraph, g2: LinearlyOrderedGraph) -> IntPolynomial:
    return graph_poly(g1) * graph_poly(g2) + _cone_excess(g1) * _cone_excess(g2)


def poly_coalescence_formula(g1: LinearlyOrderedGraph, u: int, g2: LinearlyOrderedGraph, v: int) -> IntPolynomial:
    """P(G.H) = P(G) P(H-v) + P(G-u) P(H<->v) - x P(G-u) P(H-v)."""
    g_u = graph_poly(gr.delete_vertex(g1, u))
    h_v = graph_poly(gr.delete_vertex(g2, v))
    return graph_poly(g1) * h_v + g_u * graph_poly(gr.promote(g2, v)) - X * g_u * h_v


def vertex_deleted_sum(g: LinearlyOrderedGraph) -> IntPolynomial:
    """sum_j P(G - j); equals the derivative of P(G)."""
    total = IntPolynomial()
    for v in range(1, g.n + 1):
        total = total + graph_poly(gr.delete_vertex(g, v))
    return total
