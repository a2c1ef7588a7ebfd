"""Exact chromatic number, list colouring, defeating listings and the colouring number.

All searches are exhaustive and deterministic: ties are always broken towards
the lowest vertex index and the lowest colour id.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Mapping

from .errors import ListingMismatch, SearchBudgetExceeded, SizeOverflow
from .graph import DEFAULT_BUDGET, Budget, Graph, induced_subgraph

Coloring = dict[int, int]


@dataclass(frozen=True)
class Listing:
    """Per-vertex colour lists.  Colours are opaque nonnegative integers."""

    lists: Mapping[int, frozenset[int]]

    def __post_init__(self):
        norm = {}
        for v, cs in self.lists.items():
            cs = frozenset(cs)
            if not cs:
                raise ValueError(f"vertex {v} has an empty list")
            if any(not isinstance(c, int) or c < 0 for c in cs):
                raise ValueError(f"vertex {v}: colours must be nonnegative integers")
            norm[int(v)] = cs
        object.__setattr__(self, "lists", dict(sorted(norm.items())))

    @classmethod
    def uniform(cls, vertices: Iterable[int], colors: Iterable[int]) -> Listing:
        cs = frozenset(colors)
        return cls({v: cs for v in vertices})

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def __len__(self) -> int:
        return len(self.lists)

    def is_k_listing(self, k: int) -> bool:
        return all(len(cs) == k for cs in self.lists.values())

    def colors(self) -> frozenset[int]:
        return frozenset().union(*self.lists.values()) if self.lists else frozenset()

    def to_json(self) -> dict:
        return {"lists": {str(v): sorted(cs) for v, cs in self.lists.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> Listing:
        try:
            raw = data["lists"]
            return cls({int(v): frozenset(int(c) for c in cs) for v, cs in raw.items()})
        except (KeyError, TypeError, AttributeError) as exc:
            raise ValueError(f"malformed listing JSON: {exc}") from None


@dataclass(frozen=True)
class OrderingWitness:
    order: tuple[int, ...]
    back_degrees: tuple[int, ...]  # indexed by vertex

    @property
    def bound(self) -> int:
        return max(self.back_degrees, default=-1)

    def consistent_with(self, g: Graph) -> bool:
        return tuple(back_degrees(g, self.order)) == self.back_degrees


@dataclass(frozen=True)
class DefeatCertificate:
    listing: Listing
    exhaustive: bool = True
    stats: dict = field(default_factory=dict, compare=False)

    def recheck(self, g: Graph, budget: int | None = DEFAULT_BUDGET) -> bool:
        """True iff the solver again finds no proper colouring of the listing."""
        return list_colorable(g, self.listing, budget) is None

    def to_json(self) -> dict:
        return {
            "listing": self.listing.to_json(),
            "exhaustive": self.exhaustive,
            "stats": dict(self.stats),
        }


@dataclass(frozen=True)
class ListChromaticReport:
    """Outcome of :func:`list_chromatic_exact`.

    ``value`` is None when every k up to ``k_max`` was defeated; then the
    only conclusion is ``value > lower_bound - 1``, i.e. chi_l >= lower_bound.
    """

    value: int | None
    lower_bound: int
    upper_via: str | None
    certificates: dict[int, DefeatCertificate]


def is_proper(g: Graph, coloring: Mapping[int, int]) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges)


# -- chromatic number ----------------------------------------------------------

def _greedy_clique(g: Graph) -> list[int]:
    best: list[int] = []
    for start in g.vertices():
        clique = [start]
        cand = set(g.neighbors(start))
        while cand:
            v = max(cand, key=lambda w: (len(g.neighbors(w) & cand), -w))
            clique.append(v)
            cand &= g.neighbors(v)
        if len(clique) > len(best):
            best = clique
    return best


def _k_coloring(g: Graph, k: int, seed: list[int], counter: Budget) -> Coloring | None:
    n = g.vertex_count
    color = [-1] * n
    for i, v in enumerate(seed):
        color[v] = i

    def pick() -> int:
        # DSATUR: most distinct neighbour colours, then degree, then index
        best, key = -1, None
        for v in range(n):
            if color[v] >= 0:
                continue
            sat = len({color[u] for u in g.neighbors(v) if color[u] >= 0})
            kv = (-sat, -g.degree(v), v)
            if key is None or kv < key:
                best, key = v, kv
        return best

    def solve(colored: int, used: int) -> bool:
        if colored == n:
            return True
        v = pick()
        taken = {color[u] for u in g.neighbors(v)}
        for c in range(min(k, used + 1)):
            if c in taken:
                continue
            counter.tick()
            color[v] = c
            if solve(colored + 1, max(used, c + 1)):
                return True
        color[v] = -1
        return False

    if solve(len(seed), len(seed)):
        return dict(enumerate(color))
    return None


def chromatic_number(g: Graph, budget: int | None = DEFAULT_BUDGET) -> tuple[int, Coloring]:
    """Least k admitting a proper k-colouring, with a witness colouring.

    Exact: tries k upwards from a clique lower bound, each k decided by DSATUR
    backtracking with the clique precoloured.
    """
    if g.vertex_count == 0:
        return 0, {}
    counter = Budget(budget, "chromatic_number")
    clique = _greedy_clique(g)
    for k in range(len(clique), g.vertex_count + 1):
        col = _k_coloring(g, k, clique, counter)
        if col is not None:
            return k, col
    raise AssertionError("unreachable: n colours always suffice")


# -- list colouring --------------------------------------------------------------

def _check_listing(g: Graph, listing: Listing) -> None:
    missing = [v for v in g.vertices() if v not in listing.lists]
    if missing:
        raise ListingMismatch(f"no list for vertices {missing[:10]}")
    extra = [v for v in listing.lists if not 0 <= v < g.vertex_count]
    if extra:
        raise ListingMismatch(f"lists given for non-vertices {extra[:10]}")


def list_colorable(
    g: Graph, listing: Listing, budget: int | None = DEFAULT_BUDGET
) -> Coloring | None:
    """Return a proper colouring with ``phi(v) in listing[v]``, or None if none exists.

    Backtracking over vertices in ascending list size (then index), colours in
    ascending order, with forward checking on uncoloured neighbours.
    """
    _check_listing(g, listing)
    counter = Budget(budget, "list_colorable")
    order = sorted(g.vertices(), key=lambda v: (len(listing[v]), v))
    lists = {v: sorted(listing[v]) for v in order}
    # blocked[v][c]: number of coloured neighbours of v holding colour c
    blocked: list[dict[int, int]] = [dict() for _ in g.vertices()]
    live = {v: len(lists[v]) for v in order}
    color: Coloring = {}

    def assign(v: int, c: int) -> bool:
        ok = True
        for w in g.neighbors(v):
            if w in color or c not in listing[w]:
                continue
            b = blocked[w]
            b[c] = b.get(c, 0) + 1
            if b[c] == 1:
                live[w] -= 1
                if live[w] == 0:
                    ok = False
        color[v] = c
        return ok

    def unassign(v: int, c: int) -> None:
        del color[v]
        for w in g.neighbors(v):
            if w in color or c not in listing[w]:
                continue
            b = blocked[w]
            b[c] -= 1
            if b[c] == 0:
                del b[c]
                live[w] += 1

    def solve(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in lists[v]:
            if c in blocked[v]:
                continue
            counter.tick()
            if assign(v, c) and solve(i + 1):
                return True
            unassign(v, c)
        return False

    if solve(0):
        return dict(sorted(color.items()))
    return None


# -- K(m, C(m^2, m)) adversary -------------------------------------------------------

def kmn_adversary_listing(m: int, max_right: int = 10**6) -> tuple[Graph, Listing]:
    """K(m, C(m^2, m)) with an m-listing that admits no proper colouring.

    Colours ``0..m^2-1`` are cut into m blocks of m consecutive colours; left
    vertex i gets block i.  Right vertices (numbered from m) get every
    m-subset of the colours, in lexicographic order.  Any colouring of the
    left side picks one colour per block, and that transversal is the whole
    list of some right vertex.
    """
    from .families import complete_bipartite

    if m < 1:
        raise ValueError("m must be >= 1")
    lam = comb(m * m, m)
    if lam > max_right:
        raise SizeOverflow(f"C({m * m},{m}) = {lam} right vertices exceeds {max_right}")
    g = complete_bipartite(m, lam)
    lists: dict[int, frozenset[int]] = {
        i: frozenset(range(i * m, (i + 1) * m)) for i in range(m)
    }
    for j, subset in enumerate(combinations(range(m * m), m)):
        lists[m + j] = frozenset(subset)
    return g, Listing(lists)


# -- defeating listings ------------------------------------------------------------

def k_core(g: Graph, k: int) -> list[int]:
    """Vertices surviving repeated deletion of vertices of degree < k."""
    alive = set(g.vertices())
    deg = {v: g.degree(v) for v in alive}
    stack = [v for v in alive if deg[v] < k]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
                if deg[w] < k:
                    stack.append(w)
    return sorted(alive)


def components(g: Graph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for s in g.vertices():
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _frontier_order(g: Graph) -> list[int]:
    """Vertex order keeping the set of placed vertices with unplaced
    neighbours small (ties: more placed neighbours, then lower index)."""
    placed: list[int] = []
    rest = set(g.vertices())
    while rest:
        def cost(v):
            new = set(placed) | {v}
            frontier = sum(1 for u in new if g.neighbors(u) - new)
            return (frontier, -len(g.neighbors(v) & new), v)
        v = min(rest, key=cost)
        placed.append(v)
        rest.remove(v)
    return placed


def _swap_classes(states: frozenset, live: int) -> list[list[int]]:
    """Partition live colours into classes of mutually interchangeable ones.

    Colours a, b are interchangeable when swapping them maps the state onto
    itself; transpositions compose, so this is an equivalence relation.
    """
    classes: list[list[int]] = []
    for c in range(live):
        for cls in classes:
            a = cls[0]
            swap = {a: c, c: a}
            if all(tuple(swap.get(x, x) for x in s) in states for s in states):
                cls.append(c)
                break
        else:
            classes.append([c])
    return classes


def _canonical(states: set) -> tuple[frozenset, list[int]]:
    """Relabel the colours of a state to 0..r-1 by an isomorphism-invariant
    signature (ties by old label).  Returns the key and the old labels in
    new-label order."""
    sig: dict[int, list[int]] = {}
    width = len(next(iter(states)))
    for s in states:
        for j, c in enumerate(s):
            sig.setdefault(c, [0] * width)[j] += 1
    used = sorted(sig, key=lambda c: (sig[c], c))
    relabel = {c: r for r, c in enumerate(used)}
    return frozenset(tuple(relabel[c] for c in s) for s in states), used


def _class_choices(classes: list[list[int]], n: int):
    """All ways to take n colours, as counts per class (lowest labels first)."""
    if not classes:
        if n == 0:
            yield ()
        return
    head, rest = classes[0], classes[1:]
    for take in range(min(n, len(head)), -1, -1):
        for tail in _class_choices(rest, n - take):
            yield tuple(head[:take]) + tail


def _search_connected(h: Graph, k: int, counter: Budget, stats: dict) -> Listing | None:
    """Search all k-listings of ``h`` for one with no proper colouring.

    Lists are fixed vertex by vertex.  After each step the state is the set
    of proper colourings of the placed vertices, projected onto the frontier
    (placed vertices with unplaced neighbours); the rest of the search
    depends on nothing else, and the listing is defeated exactly when this
    set becomes empty.  Colours are identified up to relabelling: colours no
    frontier colouring uses are interchangeable with unused ones, so each
    step draws from the live colours plus the next fresh ids (the universe
    stays below k*|V|), and live colours that the state cannot tell apart
    are chosen by count only.  States already shown to lead nowhere are
    memoised.  A vertex with no unplaced neighbours only takes colours its
    neighbours can still hold: any other colour would always be free for it,
    so a list drawn from those colours kills at least as many colourings.
    """
    order = _frontier_order(h)
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    frontiers: list[tuple[int, ...]] = []
    for i in range(n):
        frontiers.append(tuple(
            u for u in order[: i + 1] if any(pos[w] > i for w in h.neighbors(u))
        ))
    # per step: positions (in the previous frontier) of earlier neighbours,
    # and how to build the next frontier tuple from the old one (+ v)
    steps = []
    prev: tuple[int, ...] = ()
    for i, v in enumerate(order):
        at = {u: j for j, u in enumerate(prev)}
        back = tuple(at[u] for u in h.neighbors(v) if pos[u] < i)
        keep = tuple(-1 if u == v else at[u] for u in frontiers[i])
        steps.append((back, keep, any(pos[w] > i for w in h.neighbors(v))))
        prev = frontiers[i]
    # per step: for each unplaced vertex, frontier positions of its placed
    # neighbours and its unplaced neighbours
    rest_info = []
    for i in range(n):
        at = {u: j for j, u in enumerate(frontiers[i])}
        later = order[i + 1:]
        rest_info.append([
            (w, tuple(at[u] for u in h.neighbors(w) if u in at),
             frozenset(x for x in h.neighbors(w) if pos[x] > i))
            for w in later
        ])

    def escapes(i: int, states) -> bool:
        """True if some colouring in ``states`` extends whatever the
        remaining lists are: peel unplaced vertices whose unplaced degree is
        below the number of list colours the colouring cannot block."""
        info = rest_info[i]
        for s in states:
            slack = {w: k - len({s[j] for j in nb}) for w, nb, _ in info}
            alive = {w: set(rn) for w, _, rn in info}
            stack = [w for w in alive if len(alive[w]) < slack[w]]
            while stack:
                w = stack.pop()
                if w not in alive:
                    continue
                for x in alive.pop(w):
                    if x in alive:
                        alive[x].discard(w)
                        if len(alive[x]) < slack[x]:
                            stack.append(x)
            if not alive:
                return True
        return False

    failed: list[set] = [set() for _ in range(n)]
    lists: dict[int, frozenset[int]] = {}
    next_global = [0]

    def candidates(i: int, states: frozenset, live: int):
        back, _, has_later = steps[i]
        if not has_later:
            touching = sorted({s[j] for s in states for j in back})
            if i == n - 1:
                # last vertex: defeat iff k colours are blocked in every colouring
                common = set(touching)
                for s in states:
                    common &= {s[j] for j in back}
                if len(common) >= k:
                    yield tuple(sorted(common)[:k]), 0
                return
            if len(touching) < k:
                # v is never blocked; any list will do
                yield tuple(touching), k - len(touching)
                return
            for lam in combinations(touching, k):
                yield lam, 0
            return
        classes = _swap_classes(states, live)
        for fresh in range(0, k + 1):
            for old in _class_choices(classes, k - fresh):
                yield old, fresh

    def rec(i: int, states: frozenset, live: int, glob: list[int]) -> bool:
        v = order[i]
        back, keep, has_later = steps[i]
        # v is the newest frontier vertex, so it sits last in the next tuple
        keep = keep[:-1] if has_later else keep
        split: dict[tuple, set[frozenset]] = {}
        for s in states:
            split.setdefault(tuple(s[j] for j in keep), set()).add(
                frozenset(s[j] for j in back))
        for old, fresh in candidates(i, states, live):
            counter.tick()
            lam = old + tuple(range(live, live + fresh))
            new = set()
            if has_later:
                for proj, blocks in split.items():
                    for blocked in blocks:
                        for c in lam:
                            if c not in blocked:
                                new.add(proj + (c,))
            else:
                lam_set = frozenset(lam)
                for proj, blocks in split.items():
                    if any(not lam_set <= b for b in blocks):
                        new.add(proj)
            ext = glob + list(range(next_global[0], next_global[0] + fresh))
            if not new:
                lists[v] = frozenset(ext[c] for c in lam)
                next_global[0] += fresh
                return True
            if i == n - 1:
                continue
            key, used = _canonical(new)
            if key in failed[i]:
                continue
            if escapes(i, key):
                failed[i].add(key)
                continue
            save = next_global[0]
            next_global[0] += fresh
            lists[v] = frozenset(ext[c] for c in lam)
            if rec(i + 1, key, len(used), [ext[c] for c in used]):
                return True
            next_global[0] = save
            failed[i].add(key)
        lists.pop(v, None)
        return False

    if not rec(0, frozenset({()}), 0, []):
        stats["states"] = stats.get("states", 0) + sum(len(f) for f in failed)
        return None
    for v in order:
        if v not in lists:
            lists[v] = frozenset(range(next_global[0], next_global[0] + k))
            next_global[0] += k
    listing = Listing(lists)
    assert list_colorable(h, listing, budget=None) is None
    return listing


def find_defeating_listing(
    g: Graph, k: int, budget: int | None = DEFAULT_BUDGET
) -> DefeatCertificate | None:
    """Find a k-listing of ``g`` with no proper colouring, or prove none exists.

    ``None`` proves chi_l(g) <= k.  Vertices of degree < k are peeled off
    first (they can always be coloured last), each component of the k-core
    is searched separately, and a defeat found there is lifted to ``g`` with
    fresh private colours on all other vertices.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    counter = Budget(budget, "find_defeating_listing")
    stats: dict = {"k": k}
    core = k_core(g, k)
    stats["core_size"] = len(core)
    if not core:
        return None
    core_graph = induced_subgraph(g, core)
    try:
        for comp in components(core_graph):
            h = induced_subgraph(core_graph, comp)
            found = _search_connected(h, k, counter, stats)
            if found is not None:
                sub = {core[comp[i]]: cs for i, cs in found.lists.items()}
                listing = extend_listing_fresh(g, sub.keys(), Listing(sub), k)
                stats["expansions"] = counter.used
                return DefeatCertificate(listing, True, stats)
    except SearchBudgetExceeded as exc:
        exc.partial.update(stats)
        raise
    return None


def list_chromatic_exact(
    g: Graph, k_max: int, budget: int | None = DEFAULT_BUDGET, ohba: bool = True
) -> ListChromaticReport:
    """Exact list-chromatic number of a tiny graph, or a lower bound.

    Each k below chi(g) is defeated by the constant listing {0..k-1}; each k
    from chi(g) up is settled by :func:`find_defeating_listing`, except that
    k >= col(g) is certified directly by the colouring number.  With
    ``ohba`` set, a graph with at most 2*chi + 1 vertices is certified
    chromatic-choosable at k = chi by the Noel-Reed-Wu theorem (formerly
    Ohba's conjecture) instead of an exhaustive search, which is out of
    reach once k >= 4 on dense graphs.
    """
    if g.vertex_count == 0:
        return ListChromaticReport(0, 0, "empty", {})
    try:
        chi, _ = chromatic_number(g, budget)
    except SearchBudgetExceeded as exc:
        exc.partial["lower_bound"] = 1
        raise
    col, _ = coloring_number_witness(g)
    certs: dict[int, DefeatCertificate] = {}
    for k in range(1, k_max + 1):
        if k < chi:
            certs[k] = DefeatCertificate(
                Listing.uniform(g.vertices(), range(k)), True, {"via": "chromatic"}
            )
            continue
        if k >= col:
            return ListChromaticReport(k, k, "coloring_number", certs)
        if ohba and k == chi and g.vertex_count <= 2 * chi + 1:
            return ListChromaticReport(k, k, "ohba", certs)
        try:
            cert = find_defeating_listing(g, k, budget)
        except SearchBudgetExceeded as exc:
            exc.partial["lower_bound"] = k
            raise
        if cert is None:
            return ListChromaticReport(k, k, "exhaustive", certs)
        certs[k] = cert
    return ListChromaticReport(None, k_max + 1, None, certs)


# -- colouring number ------------------------------------------------------------

def back_degrees(g: Graph, order: Iterable[int]) -> list[int]:
    order = list(order)
    pos = {v: i for i, v in enumerate(order)}
    out = [0] * g.vertex_count
    for v in order:
        out[v] = sum(1 for w in g.neighbors(v) if pos[w] < pos[v])
    return out


def coloring_number_witness(g: Graph) -> tuple[int, OrderingWitness]:
    """col(g) via a smallest-last ordering.

    Repeatedly deletes a vertex of minimum remaining degree (lowest index on
    ties); the reversed deletion sequence is the ordering.  Its largest
    back-degree equals the degeneracy, which is optimal, so
    col = degeneracy + 1.
    """
    alive = set(g.vertices())
    deg = {v: g.degree(v) for v in alive}
    removed: list[int] = []
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        removed.append(v)
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    order = tuple(reversed(removed))
    back = tuple(back_degrees(g, order))
    witness = OrderingWitness(order, back)
    return (witness.bound + 1 if g.vertex_count else 0), witness


def extend_listing_fresh(
    host: Graph, sub: Iterable[int], lists_sub: Listing, k: int
) -> Listing:
    """Extend a listing on ``sub`` to all of ``host`` with private colours.

    Each vertex outside ``sub`` gets k colours used nowhere else, so the
    extension is colourable iff the restriction to ``sub`` is.
    """
    sub = set(sub)
    lists = {v: lists_sub[v] for v in sub}
    nxt = max(lists_sub.colors(), default=-1) + 1
    for v in host.vertices():
        if v not in sub:
            lists[v] = frozenset(range(nxt, nxt + k))
            nxt += k
    return Listing(lists)
