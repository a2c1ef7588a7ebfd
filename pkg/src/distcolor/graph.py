"""Finite graphs, neighbourhood algebra, biclique search and embedding checks.

Vertices are the integers ``0..n-1``.  Edges are stored once, as sorted
pairs ``(u, v)`` with ``u < v``, so symmetry holds by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, TextIO

from .errors import (
    EmptyQuery,
    InvalidEdge,
    InvalidVertex,
    ParseError,
    SearchBudgetExceeded,
)

DEFAULT_BUDGET = 10**7


class Budget:
    """Counts node expansions of an exhaustive search."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, limit: int | None = DEFAULT_BUDGET, what: str = "search"):
        if limit is not None and limit <= 0:
            raise ValueError("budget must be positive")
        self.limit = limit
        self.used = 0
        self.what = what

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise SearchBudgetExceeded(
                f"{self.what}: budget of {self.limit} expansions exceeded",
                {"expansions": self.used},
            )


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    _adj: tuple[frozenset[int], ...] = field(
        default=(), init=False, repr=False, compare=False
    )

    def __post_init__(self):
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            if not (0 <= u < v < self.vertex_count):
                raise InvalidEdge(f"edge {(u, v)} is not a normalised pair")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))
        if self.labels is not None and len(self.labels) != self.vertex_count:
            raise ValueError("labels must have one entry per vertex")

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.vertex_count)

    def neighbors(self, v: int) -> frozenset[int]:
        _check_vertex(self, v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={len(self.edges)})"


@dataclass(frozen=True)
class BicliqueWitness:
    left: frozenset[int]
    right: frozenset[int]

    def __post_init__(self):
        if self.left & self.right:
            raise ValueError("biclique parts must be disjoint")

    def check(self, g: Graph) -> bool:
        return all(g.has_edge(a, b) for a in self.left for b in self.right)


def _check_vertex(g: Graph, v: int) -> None:
    if not (isinstance(v, int) and 0 <= v < g.vertex_count):
        raise InvalidVertex(f"vertex {v!r} not in range 0..{g.vertex_count - 1}")


def from_edges(
    n: int, pairs: Iterable[tuple[int, int]], labels: Sequence[str] | None = None
) -> Graph:
    """Build a graph, symmetrising and deduplicating ``pairs``."""
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    edges = set()
    for u, v in pairs:
        for w in (u, v):
            if not (isinstance(w, int) and 0 <= w < n):
                raise InvalidVertex(f"endpoint {w!r} out of range for n={n}")
        if u == v:
            raise InvalidEdge(f"loop at vertex {u}")
        edges.add((u, v) if u < v else (v, u))
    return Graph(n, frozenset(edges), tuple(labels) if labels is not None else None)


def empty_graph(n: int) -> Graph:
    return Graph(n, frozenset())


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    """Subgraph induced by ``vs``, relabelled ``0..|vs|-1`` in increasing order."""
    keep = sorted(set(vs))
    for v in keep:
        _check_vertex(g, v)
    pos = {v: i for i, v in enumerate(keep)}
    edges = frozenset(
        (pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos
    )
    labels = tuple(g.labels[v] for v in keep) if g.labels is not None else None
    return Graph(len(keep), edges, labels)


def common_neighbors(g: Graph, xs: Iterable[int]) -> frozenset[int]:
    xs = list(xs)
    if not xs:
        raise EmptyQuery("common neighbourhood of the empty set is not defined here")
    out = g.neighbors(xs[0])
    for x in xs[1:]:
        out = out & g.neighbors(x)
    return out


def find_biclique(
    g: Graph, m: int, t: int, budget: int | None = DEFAULT_BUDGET
) -> BicliqueWitness | None:
    """Search for a K(m, t) subgraph of ``g``.

    The left part is grown by backtracking over vertices in descending-degree
    order (ties to the lower index); a branch is cut as soon as the common
    neighbourhood of the partial left part drops below ``t``.  The search is
    exhaustive, so ``None`` means no K(m, t) exists.  Raises
    SearchBudgetExceeded once more than ``budget`` nodes have been expanded.
    """
    if m < 1 or t < 1:
        raise ValueError("biclique part sizes must be >= 1")
    counter = Budget(budget, "find_biclique")
    order = sorted(
        (v for v in g.vertices() if g.degree(v) >= t),
        key=lambda v: (-g.degree(v), v),
    )

    def extend(start: int, left: list[int], common: frozenset[int] | None):
        if len(left) == m:
            right = sorted(common)[:t]
            return BicliqueWitness(frozenset(left), frozenset(right))
        # not enough candidates left to reach size m
        for i in range(start, len(order) - (m - len(left)) + 1):
            v = order[i]
            counter.tick()
            nb = g.neighbors(v) if common is None else common & g.neighbors(v)
            if len(nb) < t:
                continue
            left.append(v)
            found = extend(i + 1, left, nb)
            left.pop()
            if found is not None:
                return found
        return None

    return extend(0, [], None)


def verify_embedding(
    host: Graph, guest: Graph, mapping: Mapping[int, int] | Sequence[int],
    induced: bool = False,
) -> tuple[bool, list[str]]:
    """Check that ``mapping`` embeds ``guest`` into ``host``.

    Returns ``(ok, violations)``.  In induced mode, guest non-edges must map
    to host non-edges as well.
    """
    if not isinstance(mapping, Mapping):
        mapping = dict(enumerate(mapping))
    violations: list[str] = []
    for v in guest.vertices():
        if v not in mapping:
            violations.append(f"guest vertex {v} is unmapped")
        elif not (0 <= mapping[v] < host.vertex_count):
            violations.append(f"guest vertex {v} maps outside host ({mapping[v]})")
    if violations:
        return False, violations
    seen: dict[int, int] = {}
    for v in guest.vertices():
        w = mapping[v]
        if w in seen:
            violations.append(f"not injective: {seen[w]} and {v} both map to {w}")
        seen[w] = v
    for u, v in guest.sorted_edges():
        if not host.has_edge(mapping[u], mapping[v]):
            violations.append(f"missing edge ({u},{v}) -> ({mapping[u]},{mapping[v]})")
    if induced:
        n = guest.vertex_count
        for u in range(n):
            for v in range(u + 1, n):
                if not guest.has_edge(u, v) and mapping[u] != mapping[v] \
                        and host.has_edge(mapping[u], mapping[v]):
                    violations.append(
                        f"extra edge ({u},{v}) -> ({mapping[u]},{mapping[v]})"
                    )
    return not violations, violations


# -- text format -------------------------------------------------------------

def write_graph(g: Graph, fh: TextIO, comments: Iterable[str] = ()) -> None:
    for c in comments:
        fh.write(f"c {c}\n")
    fh.write(f"p {g.vertex_count} {g.m}\n")
    for u, v in g.sorted_edges():
        fh.write(f"e {u} {v}\n")


def format_graph(g: Graph, comments: Iterable[str] = ()) -> str:
    import io

    buf = io.StringIO()
    write_graph(g, buf, comments)
    return buf.getvalue()


def read_graph(fh: TextIO | Iterable[str]) -> Graph:
    n = m = None
    pairs = []
    for lineno, line in enumerate(fh, 1):
        tok = line.split()
        if not tok or tok[0] == "c":
            continue
        try:
            if tok[0] == "p":
                if n is not None or len(tok) != 3:
                    raise ParseError(f"line {lineno}: bad or repeated header")
                n, m = int(tok[1]), int(tok[2])
            elif tok[0] == "e":
                if n is None or len(tok) != 3:
                    raise ParseError(f"line {lineno}: edge before header or malformed")
                pairs.append((int(tok[1]), int(tok[2])))
            else:
                raise ParseError(f"line {lineno}: unknown line type {tok[0]!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ParseError("missing 'p <n> <m>' header")
    if len(pairs) != m:
        raise ParseError(f"header announces {m} edges, found {len(pairs)}")
    return from_edges(n, pairs)


def parse_graph(text: str) -> Graph:
    return read_graph(text.splitlines())
