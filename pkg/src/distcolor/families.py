"""Generators for complete bipartite graphs, truncated H graphs and Cantor graphs."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidChain, InvalidIndex, SizeOverflow
from .graph import BicliqueWitness, Graph, from_edges

MAX_CANTOR_DEPTH = 20


def complete_bipartite(m: int, n: int) -> Graph:
    """K(m, n): left part ``0..m-1``, right part ``m..m+n-1``."""
    if m < 0 or n < 0:
        raise ValueError("part sizes must be nonnegative")
    return from_edges(m + n, ((a, m + b) for a in range(m) for b in range(n)))


@dataclass(frozen=True)
class HTruncationSpec:
    levels: int
    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if self.levels < 1:
            raise ValueError("levels must be >= 1")
        if len(self.sizes) != self.levels or any(s < 1 for s in self.sizes):
            raise ValueError("sizes must hold one positive entry per level")

    def block(self, i: int) -> range:
        """Vertex ids of block B_i."""
        start = self.levels + sum(self.sizes[:i])
        return range(start, start + self.sizes[i])


def h_truncation(spec: HTruncationSpec | Sequence[int]) -> Graph:
    """Finite H graph: a in A = 0..k-1 is joined to every b in B_i with i >= a."""
    if not isinstance(spec, HTruncationSpec):
        spec = HTruncationSpec(len(spec), tuple(spec))
    k = spec.levels
    pairs = [(a, b) for i in range(k) for b in spec.block(i) for a in range(i + 1)]
    return from_edges(k + sum(spec.sizes), pairs)


# -- Cantor intervals ----------------------------------------------------------

@dataclass(frozen=True)
class CantorInterval:
    lo: Fraction
    hi: Fraction
    depth: int
    index: int

    @property
    def word(self) -> str:
        """Left(0)/right(1) choices leading to this interval from [0, 1]."""
        t = self.index - 2**self.depth - 1
        return format(t, f"0{self.depth}b") if self.depth else ""

    def contains(self, other: CantorInterval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self) -> str:
        return f"[{_frac(self.lo)}, {_frac(self.hi)}]"


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _numden(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def interval_depth(j: int) -> int:
    """Unique i with 2**i < j <= 2**(i+1)."""
    if j < 2:
        raise InvalidIndex(f"interval indices start at 2, got {j}")
    return (j - 1).bit_length() - 1


def interval_of_word(word: str) -> tuple[Fraction, Fraction]:
    lo, width = Fraction(0), Fraction(1)
    for ch in word:
        width /= 3
        if ch == "1":
            lo += 2 * width
    return lo, lo + width


def cantor_interval(j: int) -> CantorInterval:
    """The j-th closed interval of the middle-thirds construction.

    Depth-i intervals take indices ``2**i + 1 .. 2**(i+1)`` from left to
    right: the binary digits of ``j - 2**i - 1`` pick the left or right third
    at each step, so I_2 = [0, 1], I_3 = [0, 1/3], I_4 = [2/3, 1], ...
    """
    if not isinstance(j, int) or j < 2:
        raise InvalidIndex(f"interval indices start at 2, got {j!r}")
    depth = interval_depth(j)
    t = j - 2**depth - 1
    word = format(t, f"0{depth}b") if depth else ""
    lo, hi = interval_of_word(word)
    return CantorInterval(lo, hi, depth, j)


def interval_index(word: str) -> int:
    """Inverse of ``CantorInterval.word``."""
    return 2 ** len(word) + 1 + (int(word, 2) if word else 0)


@dataclass(frozen=True)
class CantorGraph:
    """C_d together with the meaning of each vertex.

    Vertices ``0 .. 2**(d+1) - 2`` are the intervals I_2 .. I_{2**(d+1)}
    (vertex ``j - 2`` is I_j); the remaining ``2**d`` vertices are branches,
    i.e. depth-d intervals standing for the Cantor points they contain,
    ordered by the binary value of their word.
    """

    depth: int
    graph: Graph

    @property
    def n_intervals(self) -> int:
        return 2 ** (self.depth + 1) - 1

    def interval_vertex(self, j: int) -> int:
        if not 2 <= j <= 2 ** (self.depth + 1):
            raise InvalidIndex(f"I_{j} is not in C_{self.depth}")
        return j - 2

    def branch_vertex(self, word: str) -> int:
        if len(word) != self.depth:
            raise ValueError(f"branch words have length {self.depth}")
        return self.n_intervals + (int(word, 2) if word else 0)

    def interval_vertices(self) -> range:
        return range(self.n_intervals)

    def branch_vertices(self) -> range:
        return range(self.n_intervals, self.n_intervals + 2**self.depth)

    def interval_at(self, v: int) -> CantorInterval:
        return cantor_interval(v + 2)

    def branch_word(self, v: int) -> str:
        t = v - self.n_intervals
        return format(t, f"0{self.depth}b") if self.depth else ""

    def sidecar(self) -> dict:
        intervals = []
        for v in self.interval_vertices():
            iv = self.interval_at(v)
            intervals.append({
                "vertex": v, "index": iv.index, "depth": iv.depth,
                "lo": _numden(iv.lo), "hi": _numden(iv.hi),
            })
        branches = []
        for v in self.branch_vertices():
            w = self.branch_word(v)
            lo, hi = interval_of_word(w)
            branches.append({"vertex": v, "word": w, "lo": _numden(lo), "hi": _numden(hi)})
        return {"depth": self.depth, "intervals": intervals, "branches": branches}


def cantor_graph(d: int, max_depth: int = MAX_CANTOR_DEPTH) -> CantorGraph:
    """Depth-d truncation of the Cantor graph.

    Interval I_j is joined to a branch exactly when the branch's depth-d
    interval lies inside I_j, i.e. when I_j's word is a prefix of the branch
    word.
    """
    if d < 0:
        raise ValueError("depth must be >= 0")
    if d > max_depth:
        raise SizeOverflow(f"depth {d} exceeds the limit {max_depth}")
    n_int = 2 ** (d + 1) - 1
    pairs = []
    for b in range(2**d):
        word = format(b, f"0{d}b") if d else ""
        for p in range(d + 1):
            pairs.append((interval_index(word[:p]) - 2, n_int + b))
    labels = [f"I{j}" for j in range(2, 2 ** (d + 1) + 1)]
    labels += ["P" + (format(b, f"0{d}b") if d else "") for b in range(2**d)]
    return CantorGraph(d, from_edges(n_int + 2**d, pairs, labels))


def cantor_chain_biclique(d: int, m: int) -> BicliqueWitness:
    """K(m, 2**(d-m+1)) inside C_d from the leftmost chain.

    Left part: I_2 and the leftmost intervals of depths 1..m-1.  Right part:
    every branch through the deepest of these.
    """
    if not 1 <= m <= d + 1:
        raise InvalidChain(f"chain length {m} must lie in 1..{d + 1}")
    cg = cantor_graph(d)
    left = [cg.interval_vertex(interval_index("0" * p)) for p in range(m)]
    prefix = "0" * (m - 1)
    tail = d - (m - 1)
    right = [
        cg.branch_vertex(prefix + (format(b, f"0{tail}b") if tail else ""))
        for b in range(2**tail)
    ]
    w = BicliqueWitness(frozenset(left), frozenset(right))
    assert w.check(cg.graph)
    return w


def hypercube(d: int) -> Graph:
    """Q_d on words 0..2**d-1, adjacent iff they differ in one bit."""
    if d < 0:
        raise ValueError("dimension must be >= 0")
    return from_edges(
        2**d, ((w, w ^ (1 << i)) for w in range(2**d) for i in range(d) if not w >> i & 1)
    )
