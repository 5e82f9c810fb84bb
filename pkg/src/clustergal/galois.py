"""Galois groups of cluster subalgebras, fixed-point analysis of automorphism
subgroups, and the checks built on them.

A subalgebra A(S) counts as contained in A^H when every cluster variable
of A(S), frozen ones included, is fixed by every element of H.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .autgrp import Automorphism, are_conjugate, conjugate_subgroup, generators, identity
from .exactpoly import LaurentPoly, substitute
from .exgraph import ExchangeGraph
from .subseed import SubAlgebra, contains, enumerate_subalgebras, maximal_elements, reduced


class KerPhiInput(ValueError):
    pass


class NotAscending(ValueError):
    pass


class NoChainFound(RuntimeError):
    pass


class NoOutsideVariable(ValueError):
    pass


class Universe:
    """An enumerated finite-type algebra with its automorphism group and caches."""

    def __init__(self, graph: ExchangeGraph, aut: frozenset | None = None):
        from .autgrp import enumerate_aut
        self.graph = graph.require_complete()
        self.aut = enumerate_aut(graph) if aut is None else frozenset(aut)
        self.id = identity(graph)
        self._subs: dict = {}
        self._fixed: dict = {}

    def subalgebras(self, allowed: frozenset) -> list:
        if allowed not in self._subs:
            self._subs[allowed] = enumerate_subalgebras(self.graph, allowed)
        return self._subs[allowed]

    def galois_group(self, sub: SubAlgebra) -> frozenset:
        return frozenset(f for f in self.aut if f.fixes(sub.variables))

    def fixed_analysis(self, H: frozenset) -> "FixedAnalysis":
        H = frozenset(H)
        if H not in self._fixed:
            self._fixed[H] = _fixed_analysis(self, H)
        return self._fixed[H]


def fixed_variables(g: ExchangeGraph, H) -> frozenset:
    return frozenset(v for v in range(len(g.variables)) if all(f.perm[v] == v for f in H))


def orbits(g: ExchangeGraph, H) -> list:
    seen, out = set(), []
    for v in range(len(g.variables)):
        if v in seen:
            continue
        orb = sorted({f.perm[v] for f in H})
        seen.update(orb)
        out.append(orb)
    return out


def orbit_size(g: ExchangeGraph, H, v: int) -> int:
    return len({f.perm[v] for f in H})


def galois_group(u: Universe, sub: SubAlgebra) -> frozenset:
    return u.galois_group(sub)


galois_map_xi = galois_group


@dataclass
class FixedAnalysis:
    group: frozenset
    fixed_variables: frozenset
    orbits: list
    candidates: list = field(repr=False)
    maximal: list
    msub: list

    @property
    def in_ker_phi(self) -> bool:
        return not self.msub

    def summary(self) -> dict:
        return {"group_order": len(self.group),
                "fixed_variables": sorted(self.fixed_variables),
                "orbits": self.orbits,
                "maximal": [a.describe() for a in self.maximal],
                "msub": [a.describe() for a in self.msub],
                "in_ker_phi": self.in_ker_phi}


def _fixed_analysis(u: Universe, H: frozenset) -> FixedAnalysis:
    g = u.graph
    fixed = fixed_variables(g, H)
    cands = u.subalgebras(fixed)
    maxi = maximal_elements(cands)
    msub = [a for a in maxi if u.galois_group(a) == H]
    return FixedAnalysis(H, fixed, orbits(g, H), cands, maxi, msub)


def fixed_analysis(u: Universe, H) -> FixedAnalysis:
    return u.fixed_analysis(frozenset(H))


def in_ker_phi(u: Universe, H) -> bool:
    return u.fixed_analysis(frozenset(H)).in_ker_phi


# ---------------------------------------------------------------------------
# orbit-sum witness


def apply_automorphism(g: ExchangeGraph, f: Automorphism, p: LaurentPoly) -> LaurentPoly:
    return substitute(p, [g.variables[f.perm[i]] for i in range(g.m)])


@dataclass
class CritReport:
    status: str                       # "not Galois" | "inconclusive"
    z: int | None = None
    orbit: list = field(default_factory=list)
    fixed_by_H: bool = False
    host_node: int | None = None
    outside_support: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"status": self.status, "z": self.z, "orbit": self.orbit,
                "fixed_by_H": self.fixed_by_H, "host_node": self.host_node,
                "outside_support": self.outside_support}


def galois_extension_witness(u: Universe, H, sub: SubAlgebra) -> CritReport:
    """Orbit sum Z of a variable outside ``sub``: H-fixed yet not in A(sub).

    Z is expanded in the cluster of the host node of sub's representative
    seed; a dependence on a variable of that cluster outside sub shows Z is
    not a Laurent polynomial in sub's seed, so A^H is strictly larger.
    """
    g = u.graph
    outside = [v for v in range(len(g.variables)) if v not in sub.variables]
    if not outside:
        raise NoOutsideVariable("sub-algebra is the whole algebra")
    z = outside[0]
    orb = sorted({f.perm[z] for f in H})
    Z = LaurentPoly.zero(g.m)
    for v in orb:
        Z = Z + g.variables[v]
    fixed = all(apply_automorphism(g, f, Z) == Z for f in H)
    _, nid = sub.representative
    node = g.nodes[nid]
    expanded = g.expand_in_node(Z, nid)
    out = [node.vars[i] for i in range(g.m)
           if node.vars[i] not in sub.variables and expanded.depends_on(i)]
    status = "not Galois" if fixed and out else "inconclusive"
    return CritReport(status, z, orb, fixed, nid, out)


# ---------------------------------------------------------------------------
# conjugate subgroups


@dataclass
class GaladReport:
    conjugator: Automorphism | None
    forward: list                 # (f, index in M^H1, index in M^H2)
    backward_ok: bool
    consistent: bool

    def to_json(self, m: int) -> dict:
        return {"conjugate": self.conjugator is not None,
                "conjugator": None if self.conjugator is None else self.conjugator.to_json(m),
                "witnesses": [[f.to_json(m), i, j] for f, i, j in self.forward],
                "backward_ok": self.backward_ok, "consistent": self.consistent}


def verify_galad(u: Universe, H1, H2) -> GaladReport:
    """Conjugacy of H1, H2 versus automorphisms carrying M^H1 onto M^H2."""
    H1, H2 = frozenset(H1), frozenset(H2)
    F1, F2 = u.fixed_analysis(H1), u.fixed_analysis(H2)
    if F1.in_ker_phi or F2.in_ker_phi:
        raise KerPhiInput("both subgroups must lie outside ker phi")
    conj = are_conjugate(H1, H2, u.aut)
    triples = []
    backward_ok = True
    keys2 = {a.key: j for j, a in enumerate(F2.msub)}
    for f in sorted(u.aut, key=lambda a: (a.perm, a.sign)):
        for i, a in enumerate(F1.msub):
            j = keys2.get(a.image(f.perm).key)
            if j is None:
                continue
            triples.append((f, i, j))
            if conjugate_subgroup(H1, f) != H2:
                backward_ok = False
    consistent = backward_ok and ((conj is not None) == bool(triples))
    if conj is not None:
        # the forward direction must hold for the chosen conjugator itself
        consistent = consistent and any(f == conj for f, _, _ in triples)
    return GaladReport(conj, triples, backward_ok, consistent)


# ---------------------------------------------------------------------------
# chains


def is_strict_subgroup_chain(Hs) -> bool:
    return all(a < b for a, b in zip(Hs, Hs[1:]))


def reverse_galois_chain(u: Universe, Hs) -> list:
    """Pick A(S_i) in M^{H_i} with reduced seeds descending.

    Scans index tuples into the M^{H_i} in lexicographic order, so the
    returned chain is the lexicographically least one.
    """
    Hs = [frozenset(H) for H in Hs]
    if not all(a <= b for a, b in zip(Hs, Hs[1:])):
        raise NotAscending("subgroups must form an ascending chain")
    Ms = []
    for H in Hs:
        F = u.fixed_analysis(H)
        if F.in_ker_phi:
            raise KerPhiInput("chain member lies in ker phi")
        Ms.append([reduced(a) for a in F.msub])
    s = len(Hs)
    best = None
    # enumerate index tuples in lexicographic order: drive the first index outermost
    for first in product(*[range(len(M)) for M in Ms]):
        ok = all(contains(Ms[i][first[i]], Ms[i + 1][first[i + 1]]) for i in range(s - 1))
        if ok:
            best = list(first)
            break
    if best is None:
        raise NoChainFound("no descending chain of reduced sub-seeds exists")
    return [Ms[i][best[i]] for i in range(s)]


def galois_like_chain_check(u: Universe, subs) -> dict:
    """For a strictly descending chain of subalgebras, the Galois groups ascend strictly."""
    groups = [u.galois_group(a) for a in subs]
    desc = all(contains(a, b) and a != b for a, b in zip(subs, subs[1:]))
    asc = all(a < b for a, b in zip(groups, groups[1:]))
    return {"descending": desc, "groups": [len(G) for G in groups], "ascending": asc}


def subgroup_generators(u: Universe, H) -> list:
    return generators(frozenset(H), u.id)
