"""Exact distance graphs X_n(D) and explicit biclique witnesses.

Everything is carried as squared distances over the rationals.  A point
coordinate is either a :class:`~fractions.Fraction` or a :class:`Root`, the
formal nonnegative square root of a rational that is not a rational square.
Two points may be compared whenever every axis holding a root on one side
holds zero on the other ("support discipline"); their squared distance is
then rational.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

from .errors import (
    DegeneratePair,
    DimensionError,
    GenericityFailure,
    IncompatibleCoordinates,
    InvalidSampleCount,
    NotBoundedAwayFromZero,
    ParseError,
    RadiusTooLarge,
)
from .families import hypercube
from .graph import Graph, from_edges, verify_embedding

DEFAULT_SEED = 20240601


def fmt_q(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_q(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of ``q`` if it is a rational square, else None."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


@dataclass(frozen=True)
class Root:
    """Formal square root of a positive rational that is not a square."""

    radicand: Fraction

    def __str__(self) -> str:
        return f"sqrt({self.radicand})"


Coord = Union[Fraction, Root]


def sqrt_q(q: Fraction | int) -> Coord:
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    r = rational_sqrt(q)
    return r if r is not None else Root(q)


@dataclass(frozen=True)
class ExactPoint:
    coords: tuple[Coord, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(
            c if isinstance(c, Root) else Fraction(c) for c in self.coords
        ))

    @classmethod
    def rational(cls, *coords) -> ExactPoint:
        return cls(tuple(Fraction(c) for c in coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def is_rational(self) -> bool:
        return not any(isinstance(c, Root) for c in self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _square_of(c: Coord) -> Fraction:
    return c.radicand if isinstance(c, Root) else c * c


def squared_distance(p: ExactPoint, q: ExactPoint, strict: bool = True) -> Fraction | None:
    """Exact ||p - q||**2.

    With ``strict`` (default) any axis violating the support discipline raises
    IncompatibleCoordinates.  Otherwise mixed axes are expanded exactly and
    the result is None when the squared distance is irrational: cross terms
    are grouped by square class (sqrt(x) and sqrt(y) are rationally
    dependent iff x*y is a rational square), and distinct classes are
    linearly independent over Q.
    """
    if p.dim != q.dim:
        raise DimensionError(f"dimensions differ: {p.dim} vs {q.dim}")
    total = Fraction(0)
    irr: list[tuple[Fraction, Fraction]] = []  # coefficient, radicand
    for axis, (a, b) in enumerate(zip(p.coords, q.coords)):
        ra, rb = isinstance(a, Root), isinstance(b, Root)
        if not ra and not rb:
            total += (a - b) ** 2
            continue
        if (ra and not rb and b == 0) or (rb and not ra and a == 0):
            total += _square_of(a) + _square_of(b)
            continue
        if ra and rb and a == b:
            continue
        if strict:
            raise IncompatibleCoordinates(f"axis {axis}: {a} vs {b} breaks the support discipline")
        total += _square_of(a) + _square_of(b)
        if ra and rb:
            prod = a.radicand * b.radicand
            s = rational_sqrt(prod)
            if s is not None:
                total -= 2 * s
            else:
                irr.append((Fraction(-2), prod))
        else:
            root, other = (a, b) if ra else (b, a)
            irr.append((-2 * other, root.radicand))
    if not irr:
        return total
    classes: list[list[Fraction]] = []  # [representative radicand, coefficient]
    for coef, x in irr:
        for cls in classes:
            s = rational_sqrt(x * cls[0])
            if s is not None:
                cls[1] += coef * s / cls[0]
                break
        else:
            classes.append([x, coef])
    if any(c != 0 for _, c in classes):
        return None
    return total


# -- distance sets ---------------------------------------------------------------

@dataclass(frozen=True)
class DSpec:
    """A set of squared distances: finitely many values plus an optional
    geometric tail ``{c_sq * q_sq**k : k >= 0}``."""

    finite_sq: frozenset[Fraction] = frozenset()
    tail: tuple[Fraction, Fraction] | None = None

    def __post_init__(self):
        fs = frozenset(Fraction(x) for x in self.finite_sq)
        if any(x <= 0 for x in fs):
            raise ValueError("squared distances must be positive")
        object.__setattr__(self, "finite_sq", fs)
        if self.tail is not None:
            c, q = (Fraction(x) for x in self.tail)
            if c <= 0 or q <= 0:
                raise ValueError("tail parameters must be positive")
            if q == 1:
                raise ValueError("tail ratio must differ from 1")
            object.__setattr__(self, "tail", (c, q))
        if not fs and self.tail is None:
            raise ValueError("distance set must be nonempty")

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    def tail_value(self, i: int) -> Fraction:
        c, q = self.tail
        return c * q**i

    def contains(self, x: Fraction | None) -> bool:
        if x is None:
            return False
        x = Fraction(x)
        if x in self.finite_sq:
            return True
        if self.tail is None or x <= 0:
            return False
        c, q = self.tail
        r = x / c
        # divide out q until r would pass 1; membership iff we land on 1
        if q > 1:
            while r > 1:
                r /= q
        else:
            while r < 1:
                r /= q
        return r == 1

    __contains__ = contains

    @classmethod
    def parse(cls, text: str) -> DSpec:
        """Parse ``sq:1,2;tail:1,4`` (parts separated by ``;`` or spaces)."""
        finite: set[Fraction] = set()
        tail = None
        parts = [p for chunk in text.split(";") for p in chunk.split()]
        if not parts:
            raise ParseError("empty distance-set string")
        for part in parts:
            key, sep, body = part.partition(":")
            if not sep or not body:
                raise ParseError(f"expected 'sq:...' or 'tail:...', got {part!r}")
            vals = [parse_q(v) for v in body.split(",")]
            if key == "sq":
                finite.update(vals)
            elif key == "tail":
                if tail is not None or len(vals) != 2:
                    raise ParseError("tail takes exactly two values and may appear once")
                tail = (vals[0], vals[1])
            else:
                raise ParseError(f"unknown distance-set part {key!r}")
        try:
            return cls(frozenset(finite), tail)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    def __str__(self) -> str:
        parts = []
        if self.finite_sq:
            parts.append("sq:" + ",".join(fmt_q(x) for x in sorted(self.finite_sq)))
        if self.tail:
            parts.append("tail:" + ",".join(fmt_q(x) for x in self.tail))
        return ";".join(parts)

    def to_json(self) -> dict:
        return {
            "finite_sq": [fmt_q(x) for x in sorted(self.finite_sq)],
            "tail": None if self.tail is None else [fmt_q(x) for x in self.tail],
        }


def distance_graph_points(
    n: int, pts: Sequence[ExactPoint], D: DSpec, strict: bool = True
) -> Graph:
    """Finite induced subgraph of X_n(D) on ``pts``: edge iff d**2 lies in D**2."""
    for p in pts:
        if p.dim != n:
            raise DimensionError(f"point {p} is not in dimension {n}")
    pairs = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if D.contains(squared_distance(pts[i], pts[j], strict)):
                pairs.append((i, j))
    return from_edges(len(pts), pairs)


@dataclass(frozen=True)
class ClassifyReport:
    verdict: str  # "countable" | "uncountable"
    case: str
    witness_plan: str | None  # "x3" | "x4" | None

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "case": self.case, "witness_plan": self.witness_plan}


def classify_distance_graph(n: int, D: DSpec) -> ClassifyReport:
    """Decide whether X_n(D) has countable list-chromatic (and colouring) number.

    Countable iff n <= 2, or n == 3 and every infinite subset of D has
    infimum 0.  For a DSpec the only infinite subsets live in the tail, which
    accumulates at 0 exactly when its ratio is below 1.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if n <= 2:
        return ClassifyReport("countable", "n<=2", None)
    if n == 3:
        if D.tail is None:
            return ClassifyReport("countable", "n=3, finite D", None)
        if D.tail[1] < 1:
            return ClassifyReport("countable", "n=3, tail decreasing to 0", None)
        return ClassifyReport("uncountable", "n=3, infinite D bounded away from 0", "x3")
    return ClassifyReport("uncountable", "n>=4", "x4")


# -- witnesses ---------------------------------------------------------------------

def default_parameters(k: int) -> list[Fraction]:
    """First k rationals of [0, 1]: 0, 1, then p/q by denominator, numerator."""
    out = [Fraction(0), Fraction(1)]
    q = 2
    while len(out) < k:
        for p in range(1, q):
            f = Fraction(p, q)
            if f.denominator == q:
                out.append(f)
        q += 1
    return out[:k]


def circle_point(r_sq: Fraction, t: Fraction) -> tuple[Coord, Coord]:
    """Point of x**2 + y**2 = r_sq at tangent parameter t."""
    a = (1 - t * t) / (1 + t * t)
    b = 2 * t / (1 + t * t)
    r = rational_sqrt(r_sq)
    if r is not None:
        return r * a, r * b
    if a < 0 or b < 0:
        raise ValueError("a formal-root radius needs parameters in [0, 1]")
    return sqrt_q(r_sq * a * a), sqrt_q(r_sq * b * b)


def _params(k: int, params: Sequence | None) -> list[Fraction]:
    if k <= 0:
        raise InvalidSampleCount(f"sample count must be positive, got {k}")
    if params is None:
        return default_parameters(k)
    ps = list(dict.fromkeys(Fraction(t) for t in params))
    if len(ps) < k:
        raise InvalidSampleCount(f"{k} samples need {k} distinct parameters, got {len(ps)}")
    return ps[:k]


@dataclass(frozen=True)
class BipartiteWitness:
    """Point sets A and B with every cross squared distance checked exactly."""

    left: tuple[ExactPoint, ...]
    right: tuple[ExactPoint, ...]
    targets: tuple[Fraction, ...]  # target squared distance per left point
    verification: dict = field(compare=False)

    @property
    def ok(self) -> bool:
        return self.verification["all_exact"]

    def points(self) -> list[ExactPoint]:
        return list(self.left) + list(self.right)

    def to_json(self) -> dict:
        return {
            "left": [point_to_json(p) for p in self.left],
            "right": [point_to_json(p) for p in self.right],
            "targets_sq": [fmt_q(t) for t in self.targets],
            "verification": dict(self.verification),
        }


def _verify_cross(left, right, targets, D: DSpec | None = None) -> dict:
    bad = []
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            sq = squared_distance(a, b)
            if sq != targets[i] or (D is not None and not D.contains(sq)):
                bad.append([i, j, fmt_q(sq)])
    return {
        "pairs": len(left) * len(right),
        "exact_matches": len(left) * len(right) - len(bad),
        "target_sq": [fmt_q(t) for t in sorted(set(targets))],
        "all_exact": not bad,
        "mismatches": bad[:20],
    }


def witness_x4(d_sq, k: int, params: Sequence | None = None) -> BipartiteWitness:
    """K(k, k) in X_4({d}): two orthogonal circles of radius**2 = d_sq / 2.

    A lies on the circle in the (x, y)-plane, B on the one in the
    (z, w)-plane; every cross pair is at squared distance r**2 + r**2.
    """
    d_sq = Fraction(d_sq)
    if d_sq <= 0:
        raise ValueError("d_sq must be positive")
    ts = _params(k, params)
    r_sq = d_sq / 2
    zero = Fraction(0)
    A, B = [], []
    for t in ts:
        x, y = circle_point(r_sq, t)
        A.append(ExactPoint((x, y, zero, zero)))
        B.append(ExactPoint((zero, zero, x, y)))
    targets = (d_sq,) * k
    return BipartiteWitness(tuple(A), tuple(B), targets, _verify_cross(A, B, targets))


def witness_x3(
    D: DSpec, rho_sq, k_centers: int, k_points: int, params: Sequence | None = None
) -> BipartiteWitness:
    """K(k_centers, k_points) in X_3(D) for a tail increasing away from 0.

    Centre i sits at (sqrt(d_i**2 - rho_sq), 0, 0) with d_i**2 the i-th tail
    value; the points lie on the circle y**2 + z**2 = rho_sq in the plane x = 0,
    so centre i is at distance d_i from all of them.
    """
    rho_sq = Fraction(rho_sq)
    if D.tail is None:
        raise NotBoundedAwayFromZero("D is finite; no infinite subset to use")
    c_sq, q_sq = D.tail
    if q_sq < 1:
        raise NotBoundedAwayFromZero("tail decreases to 0")
    if rho_sq <= 0:
        raise ValueError("rho_sq must be positive")
    if rho_sq >= c_sq:
        raise RadiusTooLarge(f"rho_sq={rho_sq} must be below the smallest tail value {c_sq}")
    if k_centers <= 0:
        raise InvalidSampleCount("need at least one centre")
    ts = _params(k_points, params)
    zero = Fraction(0)
    targets = tuple(D.tail_value(i) for i in range(k_centers))
    centers = tuple(ExactPoint((sqrt_q(t - rho_sq), zero, zero)) for t in targets)
    pts = []
    for t in ts:
        y, z = circle_point(rho_sq, t)
        pts.append(ExactPoint((zero, y, z)))
    ver = _verify_cross(centers, pts, targets, D)
    return BipartiteWitness(centers, tuple(pts), targets, ver)


# -- the plane ---------------------------------------------------------------------

def plane_common_neighbors(x: ExactPoint, y: ExactPoint, D: DSpec) -> set[tuple]:
    """Common neighbours of x and y in X_2(D), exactly.

    Each point is encoded as ``(s, sign, h_sq)``, meaning
    ``x + s*(y - x) + sign*sqrt(h_sq)*perp(y - x)``, which is injective.
    """
    if x.dim != 2 or y.dim != 2:
        raise DimensionError("plane points must have dimension 2")
    if not (x.is_rational() and y.is_rational()):
        raise ValueError("plane points must have rational coordinates")
    if not D.is_finite:
        raise ValueError("plane common-neighbour counting needs a finite D")
    dx = y.coords[0] - x.coords[0]
    dy = y.coords[1] - x.coords[1]
    L_sq = dx * dx + dy * dy
    if L_sq == 0:
        raise DegeneratePair("x and y coincide")
    found: set[tuple] = set()
    for a in D.finite_sq:
        for b in D.finite_sq:
            # |p-x|^2 = a, |p-y|^2 = b
            s = (a - b + L_sq) / (2 * L_sq)
            h_sq = (a - s * s * L_sq) / L_sq
            if h_sq == 0:
                found.add((s, 0, Fraction(0)))
            elif h_sq > 0:
                found.add((s, 1, h_sq))
                found.add((s, -1, h_sq))
    return found


def plane_common_neighbor_count(x: ExactPoint, y: ExactPoint, D: DSpec) -> int:
    return len(plane_common_neighbors(x, y, D))


# -- the cube inside the unit-distance graph ------------------------------------------

@dataclass(frozen=True)
class CubeEmbedding:
    d: int
    params: tuple[Fraction, ...]
    points: tuple[ExactPoint, ...]  # points[w] is the image of word w
    graph: Graph  # unit-distance graph on the points
    attempts: int

    def mapping(self) -> list[int]:
        return list(range(len(self.points)))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "params": [fmt_q(t) for t in self.params],
            "points": [point_to_json(p) for p in self.points],
            "attempts": self.attempts,
        }


def _unit_vectors(params: Sequence[Fraction]) -> list[tuple[Fraction, Fraction]]:
    return [circle_point(Fraction(1), t) for t in params]


def cube_points(params: Sequence[Fraction]) -> list[ExactPoint]:
    us = _unit_vectors(params)
    pts = []
    for w in range(2 ** len(us)):
        x = sum((u[0] for i, u in enumerate(us) if w >> i & 1), Fraction(0))
        y = sum((u[1] for i, u in enumerate(us) if w >> i & 1), Fraction(0))
        pts.append(ExactPoint((x, y)))
    return pts


def hypercube_embedding(
    d: int, seed: int = DEFAULT_SEED, max_retries: int = 10,
    params: Sequence | None = None,
) -> CubeEmbedding:
    """Q_d as an induced subgraph of the rational unit-distance graph.

    Word w goes to the sum of the unit vectors selected by its bits.  The
    vectors come from tangent parameters drawn from a seeded generator;
    a draw is kept once the 2**d points are distinct and their exact
    unit-distance graph is exactly Q_d.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    rng = random.Random(seed)
    cube = hypercube(d)
    unit = DSpec(frozenset({Fraction(1)}))
    tried = []
    for attempt in range(1, max_retries + 1):
        if params is not None and attempt == 1:
            ts = [Fraction(t) for t in params]
        else:
            ts = []
            while len(ts) < d:
                t = Fraction(rng.randint(1, 12), rng.randint(1, 12))
                if t not in ts:
                    ts.append(t)
        tried.append(ts)
        pts = cube_points(ts)
        if len(set(pts)) != len(pts):
            continue
        g = distance_graph_points(2, pts, unit)
        ok, _ = verify_embedding(g, cube, range(len(pts)), induced=True)
        if ok and g == cube:
            return CubeEmbedding(d, tuple(ts), tuple(pts), g, attempt)
    raise GenericityFailure(
        f"no generic parameters for d={d} in {max_retries} tries; last: "
        + ", ".join(fmt_q(t) for t in tried[-1])
    )


# -- JSON --------------------------------------------------------------------------------

def coord_to_json(c: Coord) -> dict:
    if isinstance(c, Root):
        return {"sqrt": fmt_q(c.radicand)}
    return {"rat": fmt_q(c)}


def coord_from_json(obj: dict) -> Coord:
    if set(obj) == {"rat"}:
        return parse_q(obj["rat"])
    if set(obj) == {"sqrt"}:
        return sqrt_q(parse_q(obj["sqrt"]))
    raise ParseError(f"bad coordinate {obj!r}")


def point_to_json(p: ExactPoint) -> list[dict]:
    return [coord_to_json(c) for c in p.coords]


def point_from_json(obj: Iterable[dict]) -> ExactPoint:
    return ExactPoint(tuple(coord_from_json(c) for c in obj))
