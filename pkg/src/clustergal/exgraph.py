"""Exchange-graph enumeration with deduplication by unordered cluster.

Every cluster variable found gets a global integer id, assigned in discovery
order; the initial seed's variable at position i has id i.  A node is
identified by the frozenset of its variable ids, which is equivalent to the
sorted tuple of canonical Laurent forms because the id map is injective.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .exactpoly import LaurentPoly
from .seedcore import Seed


class BudgetExceeded(RuntimeError):
    def __init__(self, msg: str, graph: "ExchangeGraph"):
        super().__init__(msg)
        self.graph = graph


class IncompleteGraph(RuntimeError):
    pass


@dataclass
class Node:
    id: int
    seed: Seed
    vars: tuple          # variable id per position
    path: tuple          # mutation positions from the root

    @property
    def key(self) -> frozenset:
        return frozenset(self.vars)

    def position(self, var_id: int) -> int:
        return self.vars.index(var_id)


@dataclass
class ExchangeGraph:
    root: Seed
    nodes: list = field(default_factory=list)
    by_key: dict = field(default_factory=dict)
    variables: list = field(default_factory=list)      # id -> LaurentPoly
    var_index: dict = field(default_factory=dict)      # LaurentPoly -> id
    # (node id, var id being exchanged) -> (node id, new var id)
    edges: dict = field(default_factory=dict)
    complete: bool = False
    _reroot: dict = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.root.n_exchange

    @property
    def m(self) -> int:
        return self.root.m

    def _var_id(self, p: LaurentPoly) -> int:
        vid = self.var_index.get(p)
        if vid is None:
            vid = len(self.variables)
            self.variables.append(p)
            self.var_index[p] = vid
        return vid

    def node_of(self, var_ids) -> Node | None:
        nid = self.by_key.get(frozenset(var_ids))
        return None if nid is None else self.nodes[nid]

    def require_complete(self) -> "ExchangeGraph":
        if not self.complete:
            raise BudgetExceeded(f"graph incomplete after {len(self.nodes)} nodes", self)
        return self

    def variable_set(self) -> list:
        if not self.complete:
            raise IncompleteGraph("variable set requested from a partial graph")
        return list(enumerate(self.variables))

    @property
    def exchange_ids(self) -> list:
        frozen = set(range(self.n, self.m))
        return [i for i in range(len(self.variables)) if i not in frozen]

    @property
    def frozen_ids(self) -> list:
        return list(range(self.n, self.m))

    def neighbours(self, nid: int):
        node = self.nodes[nid]
        for v in node.vars[:self.n]:
            e = self.edges.get((nid, v))
            if e is not None:
                yield v, e

    def clusters(self) -> list:
        return [n.key for n in self.nodes]

    def compatible(self, a: int, b: int) -> bool:
        return any(a in k and b in k for k in self.by_key)

    def canonical_form(self):
        """Order-free description: clusters as sets of polynomials, plus edges."""
        P = self.variables
        cl = frozenset(frozenset(P[v] for v in n.vars) for n in self.nodes)
        ed = frozenset((frozenset(P[v] for v in self.nodes[a].vars), P[v], P[w])
                       for (a, v), (_, w) in self.edges.items())
        return cl, ed

    # re-rooting ---------------------------------------------------------
    def initial_in_node(self, nid: int) -> tuple:
        """Initial cluster variables as Laurent polynomials in node ``nid``'s cluster."""
        if nid not in self._reroot:
            node = self.nodes[nid]
            s = Seed.initial(node.seed.matrix, self.n, node.seed.names)
            for k in reversed(node.path):
                s = s.mutate(k)
            self._reroot[nid] = s.expressions
        return self._reroot[nid]

    def expand_in_node(self, p: LaurentPoly, nid: int) -> LaurentPoly:
        """Re-express ``p`` (given in initial coordinates) in node ``nid``'s cluster."""
        from .exactpoly import substitute
        return substitute(p, self.initial_in_node(nid))

    def compatibility_degree(self, u: int, v: int) -> int:
        """-(least exponent of u) when v is written in a cluster containing u."""
        nid = next(n.id for n in self.nodes if u in n.vars)
        pos = self.nodes[nid].position(u)
        return -self.expand_in_node(self.variables[v], nid).min_exponents()[pos]

    # export -------------------------------------------------------------
    def to_dot(self) -> str:
        lines = ["graph exchange {"]
        for n in self.nodes:
            label = ",".join(str(v) for v in sorted(n.vars))
            lines.append(f'  n{n.id} [label="{{{label}}}"];')
        seen = set()
        for (a, v), (b, w) in sorted(self.edges.items()):
            e = (min(a, b), max(a, b), min(v, w))
            if e in seen:
                continue
            seen.add(e)
            lines.append(f'  n{a} -- n{b} [label="{v}/{w}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        names = list(self.root.names)
        return {
            "complete": self.complete,
            "nodes": [{"id": n.id, "vars": sorted(n.vars),
                       "matrix": [list(r) for r in n.seed.matrix]} for n in self.nodes],
            "edges": sorted([a, v, b, w] for (a, v), (b, w) in self.edges.items() if a <= b),
            "variables": [{"id": i, "expr": p.to_string(names)}
                          for i, p in enumerate(self.variables)],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def enumerate_graph(initial: Seed, node_budget: int = 10_000,
                    order: Sequence[int] | None = None) -> ExchangeGraph:
    """Breadth-first closure of the exchange graph.

    Returns a graph with ``complete=False`` when the budget runs out, so
    callers can report partial statistics; ``require_complete`` turns that
    into BudgetExceeded.  ``order`` permutes the expansion order of
    exchange positions (used to check that the result does not depend on it).
    """
    if node_budget < 1:
        raise ValueError("budget must be >= 1")
    g = ExchangeGraph(root=initial)
    vars0 = tuple(g._var_id(p) for p in initial.expressions)
    g.nodes.append(Node(0, initial, vars0, ()))
    g.by_key[frozenset(vars0)] = 0
    order = list(range(initial.n_exchange)) if order is None else list(order)
    exhausted = False
    head = 0
    while head < len(g.nodes):
        node = g.nodes[head]
        head += 1
        for k in order:
            v = node.vars[k]
            if (node.id, v) in g.edges:
                continue
            s2 = node.seed.mutate(k)
            w = g._var_id(s2.expressions[k])
            vars2 = node.vars[:k] + (w,) + node.vars[k + 1:]
            key = frozenset(vars2)
            nid = g.by_key.get(key)
            if nid is None:
                if len(g.nodes) >= node_budget:
                    exhausted = True
                    continue
                nid = len(g.nodes)
                g.nodes.append(Node(nid, s2, vars2, node.path + (k,)))
                g.by_key[key] = nid
            g.edges[(node.id, v)] = (nid, w)
            g.edges[(nid, w)] = (node.id, v)
    g.complete = not exhausted
    return g


def enumerate_or_raise(initial: Seed, node_budget: int = 10_000) -> ExchangeGraph:
    return enumerate_graph(initial, node_budget).require_complete()
