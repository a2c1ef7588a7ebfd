"""Command-line front end: ``distcolor <command> [options]``.

Exit status is 0 on success, 2 when a search ran out of budget (a partial
report is still printed) and 1 on any error, including usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import coloring, euclid, families
from .errors import DistColorError, SearchBudgetExceeded
from .graph import DEFAULT_BUDGET, Graph, find_biclique, format_graph, parse_graph

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which would read as "inconclusive"
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    seed: int = euclid.DEFAULT_SEED
    budget: int = DEFAULT_BUDGET
    output: str | None = None
    format: str = "text"


@dataclass
class Outcome:
    """What a command produced: a JSON-able result plus its text rendering."""

    inputs: dict
    result: object
    text: str
    stats: dict = field(default_factory=dict)
    status: int = EXIT_OK
    files: dict[str, str] = field(default_factory=dict)  # extra path -> content


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {v}")
    return v


def _rational(text: str) -> Fraction:
    try:
        return euclid.parse_q(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _dspec(text: str) -> euclid.DSpec:
    try:
        return euclid.DSpec.parse(text)
    except (ValueError, DistColorError) as exc:
        raise argparse.ArgumentTypeError(f"bad DSpec {text!r}: {exc}") from None


def _sizes(text: str) -> list[int]:
    try:
        return [_positive(s) for s in text.split(",")]
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"bad sizes {text!r}: {exc}") from None


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_graph(path: str) -> Graph:
    return parse_graph(_read_text(path))


# -- commands --------------------------------------------------------------------------

def _graph_outcome(g: Graph, inputs: dict, comment: str) -> Outcome:
    text = format_graph(g, [comment])
    return Outcome(inputs, {"n": g.n, "m": g.m, "graph": text}, text.rstrip("\n"))


def cmd_gen(cfg: RunConfig) -> Outcome:
    a = cfg.args
    if a.family == "kmn":
        g = families.complete_bipartite(a.m, a.n)
        return _graph_outcome(g, {"family": "kmn", "m": a.m, "n": a.n}, f"K({a.m},{a.n})")
    if a.family == "h":
        g = families.h_truncation(a.sizes)
        return _graph_outcome(g, {"family": "h", "sizes": a.sizes}, f"H sizes={a.sizes}")
    if a.family == "cantor":
        cg = families.cantor_graph(a.d)
        out = _graph_outcome(cg.graph, {"family": "cantor", "d": a.d}, f"Cantor graph depth {a.d}")
        sidecar = cg.sidecar()
        out.result["sidecar"] = sidecar
        target = a.sidecar or (f"{cfg.output}.json" if cfg.output else None)
        if target:
            out.files[target] = json.dumps(sidecar, indent=2) + "\n"
        return out
    # cube
    g = families.hypercube(a.d)
    out = _graph_outcome(g, {"family": "cube", "d": a.d, "seed": cfg.seed}, f"Q_{a.d}")
    if a.embed:
        emb = euclid.hypercube_embedding(a.d, seed=cfg.seed)
        out.result["embedding"] = emb.to_json()
        out.stats["attempts"] = emb.attempts
        out.text += "\nc unit-distance embedding parameters: " + ", ".join(
            euclid.fmt_q(t) for t in emb.params)
    return out


def cmd_chi(cfg: RunConfig) -> Outcome:
    g = _load_graph(cfg.args.graph)
    k, col = coloring.chromatic_number(g, cfg.budget)
    coloring_out = {str(v): c for v, c in sorted(col.items())}
    return Outcome({"graph": cfg.args.graph}, {"chi": k, "coloring": coloring_out},
                   f"chi = {k}\ncoloring: {' '.join(f'{v}:{c}' for v, c in sorted(col.items()))}")


def cmd_col(cfg: RunConfig) -> Outcome:
    g = _load_graph(cfg.args.graph)
    value, w = coloring.coloring_number_witness(g)
    result = {"col": value, "order": list(w.order), "back_degrees": list(w.back_degrees)}
    return Outcome({"graph": cfg.args.graph}, result,
                   f"col = {value}\norder: {' '.join(map(str, w.order))}")


def cmd_chil(cfg: RunConfig) -> Outcome:
    a = cfg.args
    g = _load_graph(a.graph)
    inputs = {"graph": a.graph, "kmax": a.kmax, "ohba": not a.no_ohba}
    try:
        rep = coloring.list_chromatic_exact(g, a.kmax, cfg.budget, ohba=not a.no_ohba)
    except SearchBudgetExceeded as exc:
        lb = exc.partial.get("lower_bound")
        return Outcome(inputs, {"value": None, "lower_bound": lb, "upper_via": None,
                                "inconclusive": True},
                       f"inconclusive: budget exhausted; chi_l >= {lb}",
                       dict(exc.partial), EXIT_INCONCLUSIVE)
    result = {
        "value": rep.value, "lower_bound": rep.lower_bound, "upper_via": rep.upper_via,
        "inconclusive": False,
        "defeated": {str(k): c.listing.to_json()["lists"] for k, c in rep.certificates.items()},
    }
    if rep.value is None:
        text = f"chi_l > {a.kmax}"
    else:
        text = f"chi_l = {rep.value} (upper bound via {rep.upper_via})"
    return Outcome(inputs, result, text)


def cmd_defeat(cfg: RunConfig) -> Outcome:
    a = cfg.args
    g = _load_graph(a.graph)
    inputs = {"graph": a.graph, "k": a.k}
    try:
        cert = coloring.find_defeating_listing(g, a.k, cfg.budget)
    except SearchBudgetExceeded as exc:
        return Outcome(inputs, {"defeated": None, "inconclusive": True},
                       "inconclusive: budget exhausted", dict(exc.partial), EXIT_INCONCLUSIVE)
    if cert is None:
        return Outcome(inputs, {"defeated": False, "inconclusive": False},
                       f"every {a.k}-listing is colourable: chi_l <= {a.k}")
    lists = cert.listing.to_json()["lists"]
    text = f"defeating {a.k}-listing:\n" + "\n".join(
        f"{v}: {' '.join(map(str, cs))}" for v, cs in lists.items())
    return Outcome(inputs, {"defeated": True, "inconclusive": False, "lists": lists},
                   text, dict(cert.stats))


def cmd_biclique(cfg: RunConfig) -> Outcome:
    a = cfg.args
    g = _load_graph(a.graph)
    inputs = {"graph": a.graph, "m": a.m, "t": a.t}
    try:
        w = find_biclique(g, a.m, a.t, cfg.budget)
    except SearchBudgetExceeded as exc:
        return Outcome(inputs, {"found": None, "inconclusive": True},
                       "inconclusive: budget exhausted", dict(exc.partial), EXIT_INCONCLUSIVE)
    if w is None:
        return Outcome(inputs, {"found": False, "inconclusive": False},
                       f"no K({a.m},{a.t})")
    left, right = sorted(w.left), sorted(w.right)
    return Outcome(inputs, {"found": True, "inconclusive": False, "left": left, "right": right},
                   f"K({a.m},{a.t}): left {left} right {right}")


def cmd_adversary(cfg: RunConfig) -> Outcome:
    m = cfg.args.m
    g, listing = coloring.kmn_adversary_listing(m)
    payload = {"graph": format_graph(g), "lists": listing.to_json()["lists"]}
    return Outcome({"m": m}, payload, json.dumps(payload, indent=2))


def cmd_defeat_check(cfg: RunConfig) -> Outcome:
    src = cfg.args.input
    try:
        data = json.loads(_read_text(src))
    except json.JSONDecodeError as exc:
        raise UsageError(f"defeat-check: input is not JSON: {exc}") from None
    if isinstance(data, dict) and "result" in data and "command" in data:
        data = data["result"]  # accept wrapped --format json output
    try:
        g = parse_graph(data["graph"])
        listing = coloring.Listing.from_json(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"defeat-check: expected keys 'graph' and 'lists' ({exc})") from None
    phi = coloring.list_colorable(g, listing, cfg.budget)
    if phi is None:
        return Outcome({"input": src}, {"colorable": False}, "no proper coloring exists")
    out = {str(v): c for v, c in sorted(phi.items())}
    return Outcome({"input": src}, {"colorable": True, "coloring": out},
                   "proper coloring: " + " ".join(f"{v}:{c}" for v, c in sorted(phi.items())))


def cmd_witness(cfg: RunConfig) -> Outcome:
    a = cfg.args
    if a.kind == "x4":
        inputs = {"kind": "x4", "d_sq": euclid.fmt_q(a.d_sq), "k": a.k}
        w = euclid.witness_x4(a.d_sq, a.k)
    else:
        inputs = {"kind": "x3", "dspec": str(a.dspec), "rho_sq": euclid.fmt_q(a.rho_sq),
                  "centers": a.centers, "points": a.points}
        w = euclid.witness_x3(a.dspec, a.rho_sq, a.centers, a.points)
    v = w.verification
    text = (f"{a.kind} witness: K({len(w.left)},{len(w.right)}), "
            f"{v['exact_matches']}/{v['pairs']} cross pairs exact, "
            f"targets d^2 in {{{', '.join(v['target_sq'])}}}")
    return Outcome(inputs, w.to_json(), text, status=EXIT_OK if w.ok else EXIT_ERROR)


def cmd_classify(cfg: RunConfig) -> Outcome:
    a = cfg.args
    rep = euclid.classify_distance_graph(a.n, a.dspec)
    text = f"{rep.verdict} ({rep.case})"
    if rep.witness_plan:
        text += f"; witness: {rep.witness_plan}"
    return Outcome({"n": a.n, "dspec": str(a.dspec)}, rep.to_json(), text)


def cmd_cantor_interval(cfg: RunConfig) -> Outcome:
    iv = families.cantor_interval(cfg.args.j)
    result = {"index": iv.index, "depth": iv.depth, "lo": euclid.fmt_q(iv.lo),
              "hi": euclid.fmt_q(iv.hi), "word": iv.word}
    return Outcome({"j": cfg.args.j}, result, str(iv))


COMMANDS: dict[str, Callable[[RunConfig], Outcome]] = {
    "gen": cmd_gen, "chi": cmd_chi, "col": cmd_col, "chil": cmd_chil,
    "defeat": cmd_defeat, "biclique": cmd_biclique, "adversary": cmd_adversary,
    "defeat-check": cmd_defeat_check, "witness": cmd_witness,
    "classify": cmd_classify, "cantor-interval": cmd_cantor_interval,
}


# -- argument parsing --------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, top: bool) -> None:
    # on subcommands the defaults are suppressed so they don't clobber
    # values given before the subcommand name
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=d(euclid.DEFAULT_SEED),
                   help=f"seed for randomised steps (default {euclid.DEFAULT_SEED})")
    p.add_argument("--budget", type=_positive, default=d(DEFAULT_BUDGET),
                   help="node-expansion budget for exhaustive searches")
    p.add_argument("--output", "-o", default=d(None), help="write output here instead of stdout")
    p.add_argument("--format", choices=("text", "json"), default=d("text"))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="distcolor", description=__doc__.splitlines()[0])
    _add_common(p, top=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        _add_common(sp, top=False)
        return sp

    gen = add("gen", "generate a graph file")
    fam = gen.add_subparsers(dest="family", required=True, parser_class=_Parser)
    sp = fam.add_parser("kmn", help="complete bipartite K(m,n)")
    sp.add_argument("--m", type=_nonneg, required=True)
    sp.add_argument("--n", type=_nonneg, required=True)
    sp = fam.add_parser("h", help="truncated H graph")
    sp.add_argument("--sizes", type=_sizes, required=True, help="block sizes, e.g. 2,2,2")
    sp = fam.add_parser("cantor", help="depth-d Cantor graph (+ JSON sidecar)")
    sp.add_argument("--d", type=_nonneg, required=True)
    sp.add_argument("--sidecar", help="sidecar path (default: <output>.json)")
    sp = fam.add_parser("cube", help="hypercube Q_d")
    sp.add_argument("--d", type=_positive, required=True)
    sp.add_argument("--embed", action="store_true",
                    help="also build the seeded unit-distance embedding")
    for f in fam.choices.values():
        _add_common(f, top=False)

    for name, help_ in (("chi", "chromatic number"), ("col", "colouring number")):
        add(name, help_).add_argument("graph", help="graph file ('-' for stdin)")
    sp = add("chil", "exact list-chromatic number of a tiny graph")
    sp.add_argument("graph")
    sp.add_argument("--kmax", type=_positive, required=True)
    sp.add_argument("--no-ohba", action="store_true",
                    help="settle k = chi by exhaustive search even when |V| <= 2 chi + 1")
    sp = add("defeat", "search for a k-listing with no proper colouring")
    sp.add_argument("graph")
    sp.add_argument("--k", type=_positive, required=True)
    sp = add("biclique", "search for a K(m,t) subgraph")
    sp.add_argument("graph")
    sp.add_argument("--m", type=_positive, required=True)
    sp.add_argument("--t", type=_positive, required=True)
    sp = add("adversary", "K(m, C(m^2, m)) with its defeating m-listing (JSON)")
    sp.add_argument("--m", type=_positive, required=True)
    sp = add("defeat-check", "check a {graph, lists} JSON document for a proper colouring")
    sp.add_argument("input", nargs="?", default="-")

    wit = add("witness", "exact biclique witnesses in distance graphs")
    kinds = wit.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    sp = kinds.add_parser("x4", help="K(k,k) in X_4 on two orthogonal circles")
    sp.add_argument("--d-sq", type=_rational, default=Fraction(2))
    sp.add_argument("--k", type=_positive, default=20)
    sp = kinds.add_parser("x3", help="K(centers, points) in X_3 for an increasing tail")
    sp.add_argument("--dspec", type=_dspec, default=euclid.DSpec.parse("tail:1,4"))
    sp.add_argument("--rho-sq", type=_rational, default=Fraction(1, 4))
    sp.add_argument("--centers", type=_positive, default=5)
    sp.add_argument("--points", type=_positive, default=20)
    for k in kinds.choices.values():
        _add_common(k, top=False)

    sp = add("classify", "countable or uncountable chi_l / col for X_n(D)")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--dspec", type=_dspec, required=True, help='e.g. "sq:1,2;tail:1,4"')
    sp = add("cantor-interval", "the j-th Cantor interval")
    sp.add_argument("--j", type=int, required=True)
    return p


def parse_config(argv: list[str] | None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(ns.command, ns, ns.seed, ns.budget, ns.output, ns.format)


def render(cfg: RunConfig, out: Outcome) -> str:
    if cfg.format == "json":
        doc = {"command": cfg.command, "inputs": out.inputs, "result": out.result,
               "stats": out.stats}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    return out.text + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a parsed configuration; returns (exit status, rendered output)."""
    out = COMMANDS[cfg.command](cfg)
    for path, content in out.files.items():
        Path(path).write_text(content)
    return out.status, render(cfg, out)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
        status, text = run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except SearchBudgetExceeded as exc:  # commands without a partial report
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (DistColorError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
