"""Command-line interface.

Every command prints a JSON run report (sorted keys) with the command name,
a sha256 digest of its inputs, the results and a status.  Exit codes:
0 ok, 1 error, 2 counterexample, 3 budget exhausted.

Mutation indices and sub-seed positions are 1-based on the command line.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field

from .autgrp import (NotACluster, NotAnAutomorphism, automorphism_from_cluster_map, closure,
                     enumerate_aut)
from .exgraph import ExchangeGraph, enumerate_graph
from .galois import Universe
from .polysurf import (ExcludedSurface, SurfaceSignature, Triangulation, arc_count, polygon_model,
                       reflection_v, rotation, seed_from_triangulation)
from .seedcore import Seed, SeedError
from .subseed import InvalidSpec, SubSeedSpec, subalgebra_from_spec

EXIT = {"ok": 0, "error": 1, "counterexample": 2, "budget": 3}


class CliError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    status: str = "ok"

    @property
    def digest(self) -> str:
        blob = json.dumps({"command": self.command, "inputs": self.inputs}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_json(self) -> dict:
        return {"command": self.command, "inputs_digest": self.digest,
                "results": self.results, "status": self.status}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# input helpers


_CONTENTS: dict = {}


def _read(path: str) -> str:
    # cached so streams like /dev/stdin survive being read for both digest and parse
    if path not in _CONTENTS:
        try:
            with open(path) as fh:
                _CONTENTS[path] = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc.strerror}") from exc
    return _CONTENTS[path]


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON ({exc.msg})") from exc


def _load_seed(path: str) -> tuple:
    """Seed plus the triangulation it came from, when the file records one."""
    data = _load_json(path)
    seed = Seed.from_json(data)
    tri = Triangulation.from_json(data["triangulation"]) if "triangulation" in data else None
    return seed, tri


def parse_sequence(text: str) -> list:
    """'1,2 3' -> [0, 1, 2]."""
    toks = text.replace(",", " ").split()
    try:
        return [int(t) - 1 for t in toks]
    except ValueError as exc:
        raise CliError(f"bad mutation sequence {text!r}") from exc


def _position(seed: Seed, tok) -> int:
    if isinstance(tok, int):
        if not 1 <= tok <= seed.m:
            raise CliError(f"position {tok} out of range 1..{seed.m}")
        return tok - 1
    if tok in seed.names:
        return seed.names.index(tok)
    raise CliError(f"unknown variable {tok!r}")


def _graph(seed: Seed, tri, budget: int) -> tuple:
    """(graph, polygon model or None)."""
    if tri is not None:
        if seed_from_triangulation(tri).matrix != seed.matrix:
            raise CliError("seed matrix does not match its recorded triangulation")
        model = polygon_model(tri.N, tri)
        return model.graph, model
    return enumerate_graph(seed, budget), None


def _variable_label(g: ExchangeGraph, model, v: int) -> str:
    if model is not None:
        a, b = model.diag_of[v]
        return f"x{a}{b}" if model.N < 10 else f"x{a}_{b}"
    return g.variables[v].to_string(list(g.root.names))


def _describe_aut(g, model, f) -> dict:
    return {"sign": f.sign, "images": {g.root.names[i]: _variable_label(g, model, f.perm[i])
                                       for i in range(g.m)}}


def _generator(g: ExchangeGraph, model, spec: dict):
    if "rotation" in spec or "reflection" in spec:
        if model is None:
            raise CliError("dihedral generators need a polygon seed")
        h = rotation(model.N, spec["rotation"]) if "rotation" in spec else reflection_v(model.N, spec["reflection"])
        return model.psi(h)
    node = g.nodes[0]
    for k in parse_sequence(" ".join(str(x) for x in spec.get("path", []))):
        if not 0 <= k < g.n:
            raise CliError(f"mutation index {k + 1} out of range")
        node = g.nodes[g.edges[(node.id, node.vars[k])][0]]
    positions = spec.get("positions", list(range(1, g.m + 1)))
    if sorted(positions) != list(range(1, g.m + 1)):
        raise CliError("positions must be a permutation of 1..m")
    return automorphism_from_cluster_map(g, [node.vars[p - 1] for p in positions])


# ---------------------------------------------------------------------------
# commands


def cmd_mutate(args) -> RunReport:
    rep = RunReport("mutate", {"seed": _read(args.seed), "sequence": args.sequence})
    seed, _ = _load_seed(args.seed)
    seq = parse_sequence(args.sequence)
    for k in seq:
        if not 0 <= k < seed.n:
            raise CliError(f"mutation index {k + 1} out of range 1..{seed.n}")
    out = seed.apply_sequence(seq)
    names = list(seed.names)
    rep.results = {"seed": out.to_json(),
                   "expressions": {nm: p.to_string(names) for nm, p in zip(out.names, out.expressions)}}
    return rep


def cmd_graph(args) -> RunReport:
    rep = RunReport("graph", {"seed": _read(args.seed), "budget": args.budget, "format": args.format})
    seed, _ = _load_seed(args.seed)
    g = enumerate_graph(seed, args.budget)
    rep.results = {"clusters": len(g.nodes), "variables": len(g.variables), "complete": g.complete}
    if args.format == "dot":
        rep.results["dot"] = g.to_dot()
    else:
        rep.results["graph"] = g.to_json()
    rep.status = "ok" if g.complete else "budget"
    return rep


def _universe(args, rep):
    seed, tri = _load_seed(args.seed)
    g, model = _graph(seed, tri, args.budget)
    if not g.complete:
        rep.status = "budget"
        rep.results = {"clusters": len(g.nodes), "complete": False}
        return None, None
    return Universe(g), model


def cmd_aut(args) -> RunReport:
    rep = RunReport("aut", {"seed": _read(args.seed), "budget": args.budget})
    u, model = _universe(args, rep)
    if u is None:
        return rep
    g = u.graph
    elems = sorted(u.aut, key=lambda a: (a.perm, a.sign))
    rep.results = {"order": len(elems), "direct": sum(f.is_direct for f in elems),
                   "elements": [_describe_aut(g, model, f) for f in elems]}
    return rep


def cmd_galois(args) -> RunReport:
    rep = RunReport("galois", {"seed": _read(args.seed), "spec": _read(args.spec), "budget": args.budget})
    u, model = _universe(args, rep)
    if u is None:
        return rep
    g = u.graph
    data = _load_json(args.spec)
    i0 = frozenset(_position(g.root, t) for t in data.get("i0", []))
    i1 = frozenset(_position(g.root, t) for t in data.get("i1", []))
    sub = subalgebra_from_spec(g, 0, i0, i1)
    G = u.galois_group(sub)
    rep.results = {"subalgebra": {"rank": sub.rank,
                                  "frozen": sorted(_variable_label(g, model, v) for v in sub.frozen),
                                  "variables": len(sub.variables)},
                   "group_order": len(G),
                   "generators": [_describe_aut(g, model, f) for f in _gens(u, G)]}
    return rep


def _gens(u: Universe, H) -> list:
    from .autgrp import generators
    return generators(frozenset(H), u.id)


def cmd_fixed(args) -> RunReport:
    rep = RunReport("fixed", {"seed": _read(args.seed), "generators": _read(args.generators),
                              "budget": args.budget})
    u, model = _universe(args, rep)
    if u is None:
        return rep
    g = u.graph
    data = _load_json(args.generators)
    gens = [_generator(g, model, s) for s in data.get("generators", [])]
    H = closure(gens, u.id)
    F = u.fixed_analysis(H)
    label = lambda ids: sorted(_variable_label(g, model, v) for v in ids)
    rep.results = {"group_order": len(H),
                   "fixed_variables": label(F.fixed_variables),
                   "maximal": [{"rank": a.rank, "frozen": label(a.frozen)} for a in F.maximal],
                   "msub": [{"rank": a.rank, "frozen": label(a.frozen)} for a in F.msub],
                   "in_ker_phi": F.in_ker_phi}
    return rep


def cmd_polygon(args) -> dict:
    if args.triangulation:
        t = Triangulation.from_json(_load_json(args.triangulation))
        if t.N != args.n:
            raise CliError(f"triangulation is of a {t.N}-gon, not a {args.n}-gon")
    else:
        t = Triangulation.fan(args.n)
    data = seed_from_triangulation(t).to_json()
    data["triangulation"] = t.to_json()
    return data


def cmd_arccount(args) -> RunReport:
    rep = RunReport("arccount", {"g": args.g, "b": args.b, "p": args.p, "c": args.c})
    rep.results = {"arcs": arc_count(SurfaceSignature(args.g, args.b, args.p, args.c))}
    return rep


def cmd_verify(args) -> RunReport:
    from .suite import run_suite
    rep = RunReport("verify", {"suite": args.suite, "rand_seed": args.rand_seed})
    if args.suite != "paper-examples":
        raise CliError(f"unknown suite {args.suite!r}")
    res = run_suite(args.rand_seed)
    rep.results = {"checks": [r.to_json() for r in res],
                   "passed": sum(r.passed for r in res), "total": len(res)}
    rep.status = "ok" if all(r.passed for r in res) else "counterexample"
    return rep


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clustergal", description=__doc__.splitlines()[0])
    p.add_argument("--budget", type=int, default=10_000, help="maximum number of clusters to enumerate")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--threads", type=int, default=1, help="accepted; work runs single-threaded")
    p.add_argument("--rand-seed", type=int, default=None)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("mutate", help="apply a mutation sequence")
    s.add_argument("seed")
    s.add_argument("sequence", nargs="?", default="")
    s = sub.add_parser("graph", help="enumerate the exchange graph")
    s.add_argument("seed")
    s = sub.add_parser("aut", help="cluster automorphism group")
    s.add_argument("seed")
    s = sub.add_parser("galois", help="Galois group of a sub-seed")
    s.add_argument("seed")
    s.add_argument("spec")
    s = sub.add_parser("fixed", help="fixed-point analysis of a subgroup")
    s.add_argument("seed")
    s.add_argument("generators")
    s = sub.add_parser("polygon", help="seed of a polygon triangulation")
    s.add_argument("n", type=int)
    s.add_argument("triangulation", nargs="?")
    s = sub.add_parser("arccount", help="arcs in a triangulation of a marked surface")
    for name in ("g", "b", "p", "c"):
        s.add_argument(name, type=int)
    s = sub.add_parser("verify", help="run the verification suite")
    s.add_argument("suite", nargs="?", default="paper-examples")
    return p


COMMANDS = {"mutate": cmd_mutate, "graph": cmd_graph, "aut": cmd_aut, "galois": cmd_galois,
            "fixed": cmd_fixed, "arccount": cmd_arccount, "verify": cmd_verify}


def main(argv=None) -> int:
    from .suite import DEFAULT_SEED
    args = build_parser().parse_args(argv)
    _CONTENTS.clear()
    if args.rand_seed is None:
        args.rand_seed = DEFAULT_SEED
    try:
        if args.command == "polygon":
            print(json.dumps(cmd_polygon(args), sort_keys=True))
            return 0
        rep = COMMANDS[args.command](args)
    except (CliError, SeedError, InvalidSpec, ExcludedSurface, NotAnAutomorphism, NotACluster,
            ValueError, IndexError, KeyError) as exc:
        msg = exc.args[0] if exc.args else type(exc).__name__
        rep = RunReport(args.command, {"argv": list(argv if argv is not None else sys.argv[1:])},
                        {"error": f"{type(exc).__name__}: {msg}"}, "error")
    try:
        if args.command == "graph" and args.format == "dot" and rep.status != "error":
            sys.stdout.write(rep.results["dot"])
        else:
            print(rep.dumps())
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return EXIT[rep.status]


if __name__ == "__main__":
    sys.exit(main())
