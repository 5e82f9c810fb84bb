"""Cluster automorphisms of a finite exchange graph and finite group utilities.

An automorphism is stored as a permutation of all variable ids of the
universe together with a sign: +1 when the relabelled extended matrix equals
the original (direct), -1 when it equals the negative (inverse).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .exactpoly import NonLaurentResult, substitute
from .exgraph import ExchangeGraph
from .seedcore import Seed
from .subseed import SubSeedSpec, complement_spec, is_cluster_subalgebra_spec


class NotAnAutomorphism(ValueError):
    pass


class NotACluster(ValueError):
    pass


class MixedAmbient(ValueError):
    pass


@dataclass(frozen=True)
class Automorphism:
    perm: tuple
    sign: int

    @property
    def is_direct(self) -> bool:
        return self.sign == 1

    def __call__(self, v: int) -> int:
        return self.perm[v]

    def images(self, m: int) -> tuple:
        """Images of the initial variables (ids 0..m-1)."""
        return self.perm[:m]

    def is_identity(self) -> bool:
        return self.sign == 1 and all(i == p for i, p in enumerate(self.perm))

    def fixes(self, ids: Iterable[int]) -> bool:
        return all(self.perm[v] == v for v in ids)

    def to_json(self, m: int) -> dict:
        return {"images": list(self.images(m)), "sign": self.sign}


def identity(g: ExchangeGraph) -> Automorphism:
    return Automorphism(tuple(range(len(g.variables))), 1)


def compose(f: Automorphism, g: Automorphism) -> Automorphism:
    """f after g."""
    if len(f.perm) != len(g.perm):
        raise MixedAmbient("automorphisms of different universes")
    return Automorphism(tuple(f.perm[v] for v in g.perm), f.sign * g.sign)


def inverse(f: Automorphism) -> Automorphism:
    inv = [0] * len(f.perm)
    for i, p in enumerate(f.perm):
        inv[p] = i
    return Automorphism(tuple(inv), f.sign)


def is_direct(f: Automorphism) -> bool:
    return f.sign == 1


def _relabelled_matrix(node_seed: Seed, sigma: Sequence[int]) -> tuple:
    M = node_seed.matrix
    n = node_seed.n_exchange
    return tuple(tuple(M[sigma[i]][sigma[j]] for j in range(n)) for i in range(len(sigma)))


def _matrix_sign(g: ExchangeGraph, nid: int, sigma: Sequence[int]) -> int | None:
    R = _relabelled_matrix(g.nodes[nid].seed, sigma)
    B = g.root.matrix
    if R == B:
        return 1
    if all(R[i][j] == -B[i][j] for i in range(len(B)) for j in range(g.n)):
        return -1
    return None


def _propagate(g: ExchangeGraph, nid: int, sigma: Sequence[int]) -> tuple | None:
    """Extend x_i -> vars of node ``nid`` at sigma(i) to all variables by
    following mutations, then verify every edge commutes.  None on failure."""
    nv = len(g.variables)
    perm = [-1] * nv
    image_node = [-1] * len(g.nodes)
    tgt = g.nodes[nid]
    for i in range(g.m):
        perm[i] = tgt.vars[sigma[i]]
    image_node[0] = nid
    queue = [0]
    while queue:
        a = queue.pop(0)
        fa = image_node[a]
        for v in g.nodes[a].vars[:g.n]:
            b, w = g.edges[(a, v)]
            e = g.edges.get((fa, perm[v]))
            if e is None:
                return None
            fb, fw = e
            if perm[w] == -1:
                perm[w] = fw
            elif perm[w] != fw:
                return None
            if image_node[b] == -1:
                image_node[b] = fb
                queue.append(b)
            elif image_node[b] != fb:
                return None
    if -1 in perm or len(set(perm)) != nv:
        return None
    for (a, v), (b, w) in g.edges.items():
        if g.edges.get((image_node[a], perm[v])) != (image_node[b], perm[w]):
            return None
    return tuple(perm)


def substitution_check(g: ExchangeGraph, f: Automorphism, ids: Iterable[int] | None = None) -> bool:
    """Redundant check: the substitution x_i -> f(x_i) sends each variable to its image."""
    images = [g.variables[f.perm[i]] for i in range(g.m)]
    ids = range(len(g.variables)) if ids is None else ids
    try:
        return all(substitute(g.variables[v], images) == g.variables[f.perm[v]] for v in ids)
    except NonLaurentResult:
        return False


def automorphism_from_cluster_map(g: ExchangeGraph, target: Sequence[int],
                                  check_all: bool = True) -> Automorphism:
    """Validate x_i -> variable ``target[i]`` as a cluster automorphism."""
    g.require_complete()
    if len(target) != g.m:
        raise NotACluster(f"need {g.m} images")
    node = g.node_of(target)
    if node is None or len(set(target)) != g.m:
        raise NotACluster("target ids do not form a cluster")
    pos = {v: i for i, v in enumerate(node.vars)}
    sigma = [pos[t] for t in target]
    n = g.n
    if any((i < n) != (sigma[i] < n) for i in range(g.m)):
        raise NotAnAutomorphism("exchange/frozen split not respected")
    sign = _matrix_sign(g, node.id, sigma)
    if sign is None:
        raise NotAnAutomorphism("relabelled matrix is neither B nor -B")
    perm = _propagate(g, node.id, sigma)
    if perm is None:
        raise NotAnAutomorphism("map does not commute with mutation")
    f = Automorphism(perm, sign)
    if not substitution_check(g, f, None if check_all else range(min(len(perm), 2 * g.m))):
        raise NotAnAutomorphism("substitution disagrees with the propagated permutation")
    return f


def enumerate_aut(g: ExchangeGraph, check_all: bool = False) -> frozenset:
    """All cluster automorphisms, by scanning (cluster, bijection) pairs."""
    g.require_complete()
    n, m = g.n, g.m
    out = set()
    for node in g.nodes:
        for pe in permutations(range(n)):
            for pf in permutations(range(n, m)):
                sigma = pe + pf
                sign = _matrix_sign(g, node.id, sigma)
                if sign is None:
                    continue
                perm = _propagate(g, node.id, sigma)
                if perm is None:
                    continue
                f = Automorphism(perm, sign)
                if f in out:
                    continue
                ids = None if check_all else range(min(len(perm), 2 * m))
                if not substitution_check(g, f, ids):
                    raise NotAnAutomorphism("substitution check failed on a matrix-valid map")
                out.add(f)
    return frozenset(out)


# ---------------------------------------------------------------------------
# finite groups of automorphisms


def closure(gens: Iterable[Automorphism], ident: Automorphism) -> frozenset:
    elems = {ident}
    gens = list(gens)
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                c = compose(s, a)
                if c not in elems:
                    elems.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(elems)


def conjugate_subgroup(H: Iterable[Automorphism], f: Automorphism) -> frozenset:
    """f H f^-1."""
    fi = inverse(f)
    return frozenset(compose(compose(f, h), fi) for h in H)


def are_conjugate(H1: frozenset, H2: frozenset, G: Iterable[Automorphism]):
    """Some f in G with f H1 f^-1 = H2, scanning G in a fixed order; else None."""
    if len(H1) != len(H2):
        return None
    for f in sorted(G, key=lambda a: (a.perm, a.sign)):
        if conjugate_subgroup(H1, f) == H2:
            return f
    return None


def element_order(f: Automorphism) -> int:
    k, c = 1, f
    while not c.is_identity():
        c = compose(f, c)
        k += 1
    return k


def subgroups(G: frozenset) -> list:
    """All subgroups: cyclic subgroups, then joins until stable."""
    ident = next(f for f in G if f.is_identity())
    cyc = {closure([f], ident) for f in G}
    subs = set(cyc) | {frozenset([ident])}
    frontier = set(subs)
    while frontier:
        new = set()
        for A in frontier:
            for C in cyc:
                if C <= A:
                    continue
                J = closure(list(A | C), ident)
                if J not in subs:
                    new.add(J)
        subs |= new
        frontier = new
    return sorted(subs, key=lambda S: (len(S), sorted((a.perm, a.sign) for a in S)))


def generators(H: frozenset, ident: Automorphism) -> list:
    """A small generating set, chosen greedily in a fixed order."""
    gens: list = []
    cur = frozenset([ident])
    for f in sorted(H, key=lambda a: (-element_order(a), a.perm, a.sign)):
        if f not in cur:
            gens.append(f)
            cur = closure(gens, ident)
    return gens


def direct_subgroup(G: frozenset) -> frozenset:
    return frozenset(f for f in G if f.is_direct)


# ---------------------------------------------------------------------------
# extending a complement automorphism by the identity


@dataclass(frozen=True)
class ComembedReport:
    complement_sign: int        # +1 / -1 for f'' on the complement algebra
    block_condition: bool       # D0 submatrix unchanged at the image cluster
    extends: bool               # identity on x'_ex plus f'' is a cluster automorphism (either sign)
    extension: Automorphism | None

    @property
    def agree(self) -> bool:
        return self.complement_sign != 1 or self.block_condition == self.extends


def comembed_check(g: ExchangeGraph, spec: SubSeedSpec, images: dict) -> ComembedReport:
    """Test whether f'' on the complement extends by the identity to the host.

    ``spec`` is a spec of the root seed of ``g``; ``images`` sends the id of
    every complement variable (exchange and frozen) to its image id.  The
    block condition compares the rows of the complement's frozen variables
    against the columns of x'_fr meet x_ex, before and after f''.
    """
    g.require_complete()
    if spec.host != g.root:
        raise ValueError("spec must be taken on the root seed of the universe")
    if not is_cluster_subalgebra_spec(spec):
        from .subseed import NotASubalgebra
        raise NotASubalgebra("spec fails the zero-block criterion")
    comp = complement_spec(spec)
    ex2, fr2 = comp.exchange, comp.frozen
    if set(images) != set(ex2) | set(fr2):
        raise ValueError("images must cover exactly the complement variables")
    if any(images[v] != v for v in fr2):
        raise NotAnAutomorphism("f'' must fix the complement's frozen variables")
    # f'' must be a cluster automorphism of the complement algebra
    tgt = [images[v] for v in ex2 + fr2]
    bar_ids = list(spec.exchange) + tgt
    node = g.node_of(bar_ids)
    if node is None:
        raise NotACluster("image of the complement cluster is not a cluster")
    pos = {v: i for i, v in enumerate(node.vars)}
    M0, M1 = g.root.matrix, node.seed.matrix
    rows = ex2 + fr2
    rel = [[M1[pos[images[x]]][pos[images[y]]] for y in ex2] for x in rows]
    orig = [[M0[x][y] for y in ex2] for x in rows]
    if rel == orig:
        sign2 = 1
    elif rel == [[-b for b in r] for r in orig]:
        sign2 = -1
    else:
        raise NotAnAutomorphism("f'' is not an automorphism of the complement")
    i0 = sorted(spec.i0)
    block = all(M1[pos[images[x]]][pos[y]] == M0[x][y] for x in fr2 for y in i0)
    target = [images.get(i, i) for i in range(g.m)]
    try:
        ext = automorphism_from_cluster_map(g, target)
    except (NotAnAutomorphism, NotACluster):
        ext = None
    return ComembedReport(sign2, block, ext is not None, ext)
