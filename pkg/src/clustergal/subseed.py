"""Mixing-type sub-seeds, the subalgebra criterion, complements, and cluster
subalgebras realised inside an enumerated exchange graph.

Positions are 0-based indices into the host seed (exchange positions first).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .exgraph import ExchangeGraph
from .seedcore import Seed, empty_seed


class InvalidSpec(ValueError):
    pass


class NotASubalgebra(ValueError):
    pass


@dataclass(frozen=True)
class SubSeedSpec:
    host: Seed
    i0: frozenset = frozenset()
    i1: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "i0", frozenset(self.i0))
        object.__setattr__(self, "i1", frozenset(self.i1))
        n, m = self.host.n_exchange, self.host.m
        if any(not 0 <= i < n for i in self.i0):
            raise InvalidSpec("I0 must consist of exchange positions")
        if any(not 0 <= i < m for i in self.i1):
            raise InvalidSpec("I1 position out of range")
        if self.i0 & self.i1:
            raise InvalidSpec("I0 and I1 must be disjoint")

    @classmethod
    def from_names(cls, host: Seed, i0=(), i1=()) -> "SubSeedSpec":
        pos = {nm: i for i, nm in enumerate(host.names)}
        try:
            return cls(host, frozenset(pos[x] for x in i0), frozenset(pos[x] for x in i1))
        except KeyError as exc:
            raise InvalidSpec(f"unknown variable name {exc}") from exc

    @property
    def exchange(self) -> tuple:
        return tuple(i for i in range(self.host.n_exchange)
                     if i not in self.i0 and i not in self.i1)

    @property
    def frozen(self) -> tuple:
        n, m = self.host.n_exchange, self.host.m
        return tuple(sorted(self.i0)) + tuple(i for i in range(n, m) if i not in self.i1)


def mixing_subseed(spec: SubSeedSpec) -> Seed:
    """Freeze I0, delete I1, restrict the matrix.  Expressions stay in host coordinates."""
    ex, fr = spec.exchange, spec.frozen
    rows = ex + fr
    if not rows:
        return empty_seed()
    h = spec.host
    return Seed(tuple(h.names[i] for i in rows),
                tuple(tuple(h.matrix[i][j] for j in ex) for i in rows),
                len(ex),
                tuple(h.expressions[i] for i in rows))


def is_cluster_subalgebra_spec(spec: SubSeedSpec) -> bool:
    """b_xy = 0 for every x in I1 and every remaining exchange position y."""
    M = spec.host.matrix
    return all(M[x][y] == 0 for x in spec.i1 for y in spec.exchange)


def complement_spec(spec: SubSeedSpec) -> SubSeedSpec:
    """Spec of the complement sub-seed.

    Exchange part: host exchange positions in I1.  Frozen part: host frozen
    variables together with I0 (the exchange variables frozen in the sub-seed).
    """
    if not is_cluster_subalgebra_spec(spec):
        raise NotASubalgebra("complement requires a spec passing the criterion")
    return SubSeedSpec(spec.host, spec.i0, frozenset(spec.exchange))


def complement_subseed(spec: SubSeedSpec) -> Seed:
    return mixing_subseed(complement_spec(spec))


def reduced_subseed(s: Seed) -> Seed:
    """Drop the frozen variables whose matrix row is zero."""
    keep = [i for i in range(s.m) if i < s.n_exchange or any(s.matrix[i])]
    if len(keep) == s.m:
        return s
    if not keep:
        return empty_seed()
    return Seed(tuple(s.names[i] for i in keep), tuple(s.matrix[i] for i in keep),
                s.n_exchange, tuple(s.expressions[i] for i in keep))


# ---------------------------------------------------------------------------
# cluster subalgebras inside an enumerated universe


@dataclass(frozen=True)
class SubAlgebra:
    """A cluster subalgebra, described by its seeds inside ``universe``.

    ``seeds`` maps each exchange-id set to a host node realising it; the
    frozen ids are common to all seeds.
    """
    universe: ExchangeGraph = field(compare=False, hash=False, repr=False)
    frozen: frozenset
    seeds: tuple            # ((exchange ids frozenset, host node id), ...) sorted
    variables: frozenset

    @property
    def key(self):
        return (self.frozen, frozenset(ex for ex, _ in self.seeds))

    def __eq__(self, other):
        return isinstance(other, SubAlgebra) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def rank(self) -> int:
        return len(self.seeds[0][0]) if self.seeds else 0

    @property
    def exchange_variables(self) -> frozenset:
        return self.variables - self.frozen

    def matrix(self, ex: frozenset, nid: int) -> dict:
        """Restricted matrix as {(row id, column id): entry}."""
        node = self.universe.nodes[nid]
        pos = {v: i for i, v in enumerate(node.vars)}
        rows = sorted(ex) + sorted(self.frozen)
        return {(x, y): node.seed.matrix[pos[x]][pos[y]] for x in rows for y in sorted(ex)}

    @property
    def representative(self) -> tuple:
        return self.seeds[0]

    def spec(self) -> SubSeedSpec:
        """Mixing-type spec of the representative seed in its host node."""
        ex, nid = self.representative
        node = self.universe.nodes[nid]
        n = self.universe.n
        i0 = {i for i, v in enumerate(node.vars[:n]) if v in self.frozen}
        i1 = {i for i, v in enumerate(node.vars) if v not in ex and v not in self.frozen}
        return SubSeedSpec(node.seed, frozenset(i0), frozenset(i1))

    def seed(self) -> Seed:
        return mixing_subseed(self.spec())

    def is_whole(self) -> bool:
        u = self.universe
        return self.frozen == frozenset(u.frozen_ids) and len(self.variables) == len(u.variables)

    def describe(self) -> dict:
        return {"rank": self.rank, "frozen": sorted(self.frozen),
                "variables": sorted(self.variables), "seeds": len(self.seeds)}

    def image(self, perm) -> "SubAlgebra":
        """Image under a permutation of variable ids (an automorphism)."""
        u = self.universe
        seeds = []
        for ex, nid in self.seeds:
            node = u.nodes[nid]
            host = u.by_key[frozenset(perm[v] for v in node.vars)]
            seeds.append((frozenset(perm[v] for v in ex), host))
        return _make(u, frozenset(perm[v] for v in self.frozen), seeds)


def _make(u: ExchangeGraph, frozen: frozenset, seeds: Iterable) -> SubAlgebra:
    best: dict = {}
    for ex, nid in seeds:
        if ex not in best or nid < best[ex]:
            best[ex] = nid
    items = tuple(sorted(best.items(), key=lambda t: (t[1], sorted(t[0]))))
    allv = frozenset(frozen).union(*[ex for ex in best]) if best else frozenset(frozen)
    return SubAlgebra(u, frozenset(frozen), items, allv)


def _closure(u: ExchangeGraph, nid: int, ex: frozenset, fr: frozenset, visited=None):
    """BFS over sub-seeds, mutating only at exchange ids.  Returns list of states."""
    start = (nid, ex)
    seen = {start}
    queue = [start]
    while queue:
        node, cur = queue.pop()
        for v in cur:
            e = u.edges.get((node, v))
            if e is None:
                raise NotASubalgebra("universe graph is incomplete")
            node2, w = e
            st = (node2, (cur - {v}) | {w})
            if st not in seen:
                seen.add(st)
                queue.append(st)
    if visited is not None:
        visited.update((a, b, fr) for a, b in seen)
    return seen


def subalgebra_from_spec(u: ExchangeGraph, nid: int, i0=(), i1=()) -> SubAlgebra:
    """Cluster subalgebra generated by a mixing-type sub-seed of node ``nid``."""
    node = u.nodes[nid]
    spec = SubSeedSpec(node.seed, frozenset(i0), frozenset(i1))
    if not is_cluster_subalgebra_spec(spec):
        raise NotASubalgebra("spec fails the zero-block criterion")
    ex = frozenset(node.vars[i] for i in spec.exchange)
    fr = frozenset(node.vars[i] for i in spec.frozen)
    return _make(u, fr, ((e, k) for k, e in _closure(u, nid, ex, fr)))


def subalgebra_from_ids(u: ExchangeGraph, exchange_ids, frozen_ids) -> SubAlgebra:
    """Subalgebra whose seed has the given exchange and frozen variable ids."""
    want = frozenset(exchange_ids) | frozenset(frozen_ids)
    for node in u.nodes:
        if want <= node.key:
            pos = {v: i for i, v in enumerate(node.vars)}
            if any(pos[v] >= u.n for v in exchange_ids):
                continue
            i0 = [pos[v] for v in frozen_ids if pos[v] < u.n]
            i1 = [i for i, v in enumerate(node.vars) if v not in want]
            return subalgebra_from_spec(u, node.id, i0, i1)
    raise NotASubalgebra("no cluster contains the requested variables")


def whole_algebra(u: ExchangeGraph) -> SubAlgebra:
    return subalgebra_from_spec(u, 0)


def trivial_algebra(u: ExchangeGraph) -> SubAlgebra:
    return _make(u, frozenset(), [(frozenset(), 0)])


def contains(a1: SubAlgebra, a2: SubAlgebra) -> bool:
    """Decide A(a2) <= A(a1) by searching for a seed pair related by a spec.

    Some seed S of a1 must restrict, through a mixing-type spec passing the
    criterion, to a seed T of a2 with the same matrix.
    """
    if not a2.variables <= a1.variables:
        return False
    if not a2.frozen <= a1.variables:
        return False
    for tex, tnode in a2.seeds:
        tvars = tex | a2.frozen
        tmat = None
        for sex, snode in a1.seeds:
            svars = sex | a1.frozen
            if not (tvars <= svars and tex <= sex):
                continue
            smat = a1.matrix(sex, snode)
            dropped = svars - tvars
            if any(smat[(x, y)] != 0 for x in dropped for y in tex):
                continue
            if tmat is None:
                tmat = a2.matrix(tex, tnode)
            if all(smat[k] == b for k, b in tmat.items()):
                return True
    return False


def reduced(a: SubAlgebra) -> SubAlgebra:
    """Reduced subalgebra: drop frozen ids whose row in the representative seed is zero."""
    ex, nid = a.representative
    mat = a.matrix(ex, nid)
    drop = {y for y in a.frozen if all(mat[(y, x)] == 0 for x in ex)}
    if not drop:
        return a
    return _make(a.universe, a.frozen - drop, a.seeds)


def enumerate_subalgebras(u: ExchangeGraph, allowed=None) -> list:
    """All cluster subalgebras all of whose variables lie in ``allowed``.

    Scans every node and every mixing-type spec that keeps only allowed
    variables, skipping sub-seed states already covered by an earlier
    closure.  Result is sorted by (-#variables, rank, frozen ids).
    """
    u.require_complete()
    allowed = frozenset(range(len(u.variables))) if allowed is None else frozenset(allowed)
    n = u.n
    visited: set = set()
    found: dict = {}
    for node in u.nodes:
        choices = []
        for i, v in enumerate(node.vars):
            if v not in allowed:
                choices.append(("drop",))
            elif i < n:
                choices.append(("ex", "freeze", "drop"))
            else:
                choices.append(("freeze", "drop"))
        M = node.seed.matrix
        for assign in product(*choices):
            ex_pos = [i for i, c in enumerate(assign) if c == "ex"]
            drop_pos = [i for i, c in enumerate(assign) if c == "drop"]
            if any(M[x][y] for x in drop_pos for y in ex_pos):
                continue
            ex = frozenset(node.vars[i] for i in ex_pos)
            fr = frozenset(node.vars[i] for i, c in enumerate(assign) if c == "freeze")
            if (node.id, ex, fr) in visited:
                continue
            states = _closure(u, node.id, ex, fr, visited)
            a = _make(u, fr, ((e, k) for k, e in states))
            if a.variables <= allowed:
                found.setdefault(a.key, a)
    return sorted(found.values(), key=lambda a: (-len(a.variables), a.rank, sorted(a.frozen),
                                                 sorted(map(sorted, (e for e, _ in a.seeds)))))


def maximal_elements(algs: list) -> list:
    """Members not properly contained in another member (containment by seed search)."""
    algs = sorted(algs, key=lambda a: -len(a.variables))
    chosen: list = []
    for a in algs:
        if not any(contains(b, a) for b in chosen):
            chosen.append(a)
    return [a for a in chosen if not any(b is not a and contains(b, a) for b in chosen)]
