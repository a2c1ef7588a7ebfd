"""Quantifier-free semialgebraic predicates over Q and sampled sigma-graphs.

A predicate is a boolean tree of sign conditions ``p(x) < 0``, ``= 0`` or
``> 0`` on polynomials with rational coefficients.  An edge relation on
points of Q^n is a finite family of such predicates in 2n variables, read
as their union.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import DimensionError, DuplicateVertex, NotAGraphRelation, ParseError
from .graph import Graph, from_edges

Number = Union[int, Fraction]
RELATIONS = ("<", "=", ">")


class Polynomial:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms: Mapping[tuple[int, ...], Number] = ()):
        self.n_vars = n_vars
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in dict(terms).items():
            exps = tuple(exps)
            if len(exps) != n_vars or any(not isinstance(e, int) or e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {n_vars} variables")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def const(cls, c: Number, n_vars: int) -> Polynomial:
        return cls(n_vars, {(0,) * n_vars: c})

    @classmethod
    def var(cls, i: int, n_vars: int) -> Polynomial:
        if not 0 <= i < n_vars:
            raise ValueError(f"variable {i} out of range")
        return cls(n_vars, {tuple(int(j == i) for j in range(n_vars)): 1})

    @classmethod
    def variables(cls, n_vars: int) -> list[Polynomial]:
        return [cls.var(i, n_vars) for i in range(n_vars)]

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.n_vars != self.n_vars:
                raise DimensionError("polynomials over different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other, self.n_vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.n_vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.n_vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = Polynomial.const(1, self.n_vars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.n_vars == other.n_vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    def __call__(self, point: Sequence[Number]) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        if len(point) != self.n_vars:
            raise DimensionError(f"point has {len(point)} coordinates, need {self.n_vars}")
        xs = [Fraction(x) for x in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(xs, exps):
                if e:
                    term *= x**e
            total += term
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


# -- formulas --------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    poly: Polynomial
    rel: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}, got {self.rel!r}")

    def holds(self, point) -> bool:
        v = self.poly.evaluate(point)
        return v < 0 if self.rel == "<" else v > 0 if self.rel == ">" else v == 0

    def atoms(self):
        yield self


@dataclass(frozen=True)
class And:
    args: tuple

    def holds(self, point) -> bool:
        return all(a.holds(point) for a in self.args)

    def atoms(self):
        for a in self.args:
            yield from a.atoms()


@dataclass(frozen=True)
class Or:
    args: tuple

    def holds(self, point) -> bool:
        return any(a.holds(point) for a in self.args)

    def atoms(self):
        for a in self.args:
            yield from a.atoms()


@dataclass(frozen=True)
class Not:
    arg: object

    def holds(self, point) -> bool:
        return not self.arg.holds(point)

    def atoms(self):
        yield from self.arg.atoms()


Formula = Union[Atom, And, Or, Not]


@dataclass(frozen=True)
class SemialgSet:
    dim: int
    formula: Formula

    def __post_init__(self):
        for atom in self.formula.atoms():
            if atom.poly.n_vars != self.dim:
                raise DimensionError(
                    f"atom over {atom.poly.n_vars} variables in a set of dimension {self.dim}"
                )

    def __contains__(self, point) -> bool:
        return eval_semialg(self, point)


def eval_semialg(S: SemialgSet, p: Sequence[Number]) -> bool:
    if len(p) != S.dim:
        raise DimensionError(f"point of dimension {len(p)} tested against a set of dimension {S.dim}")
    return S.formula.holds(p)


@dataclass(frozen=True)
class SigmaFamily:
    """Edge predicates E_0, E_1, ... on pairs of points of Q^n (so in 2n variables)."""

    n: int
    members: tuple[SemialgSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        for s in self.members:
            if s.dim != 2 * self.n:
                raise DimensionError(f"member of dimension {s.dim}; edge sets need {2 * self.n}")

    def accepting(self, p, q) -> list[int]:
        pq = tuple(p) + tuple(q)
        return [i for i, s in enumerate(self.members) if s.formula.holds(pq)]

    def accepts(self, p, q) -> bool:
        pq = tuple(p) + tuple(q)
        return any(s.formula.holds(pq) for s in self.members)


def _as_point(p) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in p)


def sample_sigma_graph(
    F: SigmaFamily, pts: Sequence[Sequence[Number]], mode: str = "symmetrize"
) -> Graph:
    """Graph on the sample ``pts``: p ~ q iff some member accepts (p, q) or (q, p).

    In ``strict`` mode the relation must already be symmetric and irreflexive
    on the sample, otherwise NotAGraphRelation; ``symmetrize`` drops loops
    and closes under symmetry.
    """
    if mode not in ("symmetrize", "strict"):
        raise ValueError("mode must be 'symmetrize' or 'strict'")
    pts = [_as_point(p) for p in pts]
    for p in pts:
        if len(p) != F.n:
            raise DimensionError(f"sample point {p} not in dimension {F.n}")
    seen: dict[tuple, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise DuplicateVertex(f"points {seen[p]} and {i} coincide")
        seen[p] = i
    if mode == "strict":
        for i, p in enumerate(pts):
            if F.accepts(p, p):
                raise NotAGraphRelation(f"relation is reflexive at point {i}")
    pairs = []
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            fwd = F.accepts(pts[i], pts[j])
            bwd = F.accepts(pts[j], pts[i])
            if mode == "strict" and fwd != bwd:
                raise NotAGraphRelation(f"relation is not symmetric on points {i}, {j}")
            if fwd or bwd:
                pairs.append((i, j))
    return from_edges(len(pts), pairs)


def edge_attribution(
    F: SigmaFamily, pts: Sequence[Sequence[Number]], disjoint: bool = False
) -> dict[tuple[int, int], tuple[int, ...]]:
    """Which members produce each edge of ``sample_sigma_graph(F, pts)``.

    With ``disjoint`` each edge is credited only to the first accepting
    member, as if E_i had been replaced by E_i minus the earlier members.
    The edge set itself is unaffected.
    """
    pts = [_as_point(p) for p in pts]
    out = {}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            who = sorted(set(F.accepting(pts[i], pts[j])) | set(F.accepting(pts[j], pts[i])))
            if who:
                out[(i, j)] = tuple(who[:1]) if disjoint else tuple(who)
    return out


# -- stock predicates ------------------------------------------------------------------

def squared_distance_poly(n: int) -> Polynomial:
    """sum_i (x_i - y_i)**2 in the 2n variables (x, y)."""
    v = Polynomial.variables(2 * n)
    out = Polynomial.const(0, 2 * n)
    for i in range(n):
        out = out + (v[i] - v[n + i]) ** 2
    return out


def distance_predicate(n: int, d_sq: Number) -> SemialgSet:
    return SemialgSet(2 * n, Atom(squared_distance_poly(n) - Fraction(d_sq), "="))


def distance_family(n: int, D, tail_terms: int = 0) -> SigmaFamily:
    """One distance predicate per finite squared distance of ``D`` plus the
    first ``tail_terms`` tail values (a finite truncation of the union)."""
    values = sorted(D.finite_sq)
    if D.tail is not None:
        values += [D.tail_value(i) for i in range(tail_terms)]
    return SigmaFamily(n, tuple(distance_predicate(n, d) for d in values))


# -- JSON predicate files -----------------------------------------------------------------

def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def formula_to_json(f: Formula) -> dict:
    if isinstance(f, Atom):
        poly = {",".join(map(str, e)): _fmt(c) for e, c in sorted(f.poly.terms.items())}
        return {"poly": poly, "rel": f.rel}
    if isinstance(f, And):
        return {"and": [formula_to_json(a) for a in f.args]}
    if isinstance(f, Or):
        return {"or": [formula_to_json(a) for a in f.args]}
    return {"not": formula_to_json(f.arg)}


def formula_from_json(obj, dim: int) -> Formula:
    """Parse a formula tree; atoms must be polynomial sign conditions."""
    if not isinstance(obj, dict) or len(obj) == 0:
        raise ParseError(f"formula node must be a nonempty object, got {obj!r}")
    keys = set(obj)
    if keys == {"poly", "rel"}:
        if obj["rel"] not in RELATIONS:
            raise ParseError(f"unknown relation {obj['rel']!r}")
        if not isinstance(obj["poly"], dict):
            raise ParseError("'poly' must map exponent vectors to coefficients")
        terms = {}
        for key, coef in obj["poly"].items():
            try:
                exps = tuple(int(e) for e in str(key).split(","))
            except ValueError:
                raise ParseError(f"non-polynomial exponent vector {key!r}") from None
            if len(exps) != dim or any(e < 0 for e in exps):
                raise ParseError(f"exponent vector {key!r} is not a monomial in {dim} variables")
            if isinstance(coef, float) or isinstance(coef, bool):
                raise ParseError(f"coefficient {coef!r} must be an integer or 'num/den' string")
            try:
                terms[exps] = Fraction(coef)
            except (ValueError, TypeError, ZeroDivisionError):
                raise ParseError(f"bad coefficient {coef!r}") from None
        return Atom(Polynomial(dim, terms), obj["rel"])
    if keys == {"and"} or keys == {"or"}:
        (k,) = keys
        if not isinstance(obj[k], list) or not obj[k]:
            raise ParseError(f"'{k}' needs a nonempty list")
        args = tuple(formula_from_json(a, dim) for a in obj[k])
        return And(args) if k == "and" else Or(args)
    if keys == {"not"}:
        return Not(formula_from_json(obj["not"], dim))
    raise ParseError(f"unrecognised formula node with keys {sorted(keys)}")


def semialg_to_json(S: SemialgSet) -> dict:
    return {"dim": S.dim, "formula": formula_to_json(S.formula)}


def semialg_from_json(obj) -> SemialgSet:
    try:
        dim = obj["dim"]
        formula = obj["formula"]
    except (KeyError, TypeError):
        raise ParseError("a predicate needs 'dim' and 'formula'") from None
    if not isinstance(dim, int) or dim < 0:
        raise ParseError(f"bad dimension {dim!r}")
    return SemialgSet(dim, formula_from_json(formula, dim))


def family_to_json(F: SigmaFamily) -> dict:
    return {"n": F.n, "members": [semialg_to_json(s) for s in F.members]}


def family_from_json(obj) -> SigmaFamily:
    try:
        n, members = obj["n"], obj["members"]
    except (KeyError, TypeError):
        raise ParseError("a family needs 'n' and 'members'") from None
    try:
        return SigmaFamily(n, tuple(semialg_from_json(m) for m in members))
    except DimensionError as exc:
        raise ParseError(str(exc)) from None


def formula_and(*args: Formula) -> And:
    return And(tuple(args))


def formula_or(*args: Formula) -> Or:
    return Or(tuple(args))

