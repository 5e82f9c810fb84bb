"""Polygons: diagonals, triangulations, flips, seeds, the dihedral group
acting on diagonals, plus the arc-counting formulas for general signatures.

Vertices are 1..N, labelled clockwise.  A dihedral element (r, reflected)
acts by v -> rot^r(refl(v)) with refl(v) = 2 - v (mod N), the reflection
fixing vertex 1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .autgrp import Automorphism, automorphism_from_cluster_map, closure, compose, enumerate_aut
from .exgraph import ExchangeGraph, enumerate_graph
from .seedcore import Seed


class ExcludedSurface(ValueError):
    pass


class InvalidCase(ValueError):
    pass


class NotInTriangulation(ValueError):
    pass


# ---------------------------------------------------------------------------
# counting formulas


@dataclass(frozen=True)
class SurfaceSignature:
    g: int      # genus
    b: int      # boundary components
    p: int      # punctures
    c: int      # marked points on the boundary

    def __post_init__(self):
        if min(self.g, self.b, self.p, self.c) < 0:
            raise ExcludedSurface("negative parameter")
        if self.b and self.c < self.b:
            raise ExcludedSurface("every boundary component needs a marked point")
        if self.b == 0 and self.c:
            raise ExcludedSurface("boundary marked points without boundary")
        excluded = (
            (self.g == 0 and self.b == 0 and 1 <= self.p <= 3),
            (self.g == 0 and self.b == 1 and self.p == 0 and self.c <= 3),
            (self.g == 0 and self.b == 1 and self.p == 1 and self.c == 1),
            (self.g == 0 and self.b == 0 and self.p == 0),
        )
        if any(excluded):
            raise ExcludedSurface(f"excluded surface {self}")


def arc_count(sig: SurfaceSignature) -> int:
    """Number of arcs in an ideal triangulation: 6g + 3b + 3p + c - 6."""
    return 6 * sig.g + 3 * sig.b + 3 * sig.p + sig.c - 6


def is_feasible(sig: SurfaceSignature) -> bool:
    """False for the 4-punctured sphere, the once-punctured 4-gon and the
    twice-punctured digon, whose automorphism groups are not mapping class groups."""
    return (sig.g, sig.b, sig.p, sig.c) not in {(0, 0, 4, 0), (0, 1, 1, 4), (0, 1, 2, 2)}


CASES = ("noMarked", "oncePuncturedDisk", "oncePuncturedDisk1Mark", "annulusOrDigon", "general")


def max_tagged_arcs_in_subsurface(g: int, a: int, p: int, c: int, t: int, s: int, d: int,
                                  n_b: int, case: str) -> int:
    if case in ("noMarked", "oncePuncturedDisk"):
        return 0
    if case == "oncePuncturedDisk1Mark":
        return 2
    if case == "annulusOrDigon":
        return n_b
    if case == "general":
        return 6 * g + 3 * a + 3 * p + c - 6 - t - s - d + n_b
    raise InvalidCase(case)


# ---------------------------------------------------------------------------
# polygon geometry

def diagonal(i: int, j: int, N: int) -> tuple:
    i, j = min(i, j), max(i, j)
    if j - i < 2 or (i == 1 and j == N) or not 1 <= i or j > N:
        raise ValueError(f"({i},{j}) is not a diagonal of the {N}-gon")
    return (i, j)


def all_diagonals(N: int) -> list:
    return [(i, j) for i in range(1, N + 1) for j in range(i + 2, N + 1)
            if not (i == 1 and j == N)]


def crosses(d: tuple, e: tuple) -> bool:
    (a, b), (c, f) = d, e
    if len({a, b, c, f}) < 4:
        return False
    return (a < c < b) != (a < f < b)


@dataclass(frozen=True)
class Triangulation:
    N: int
    diagonals: frozenset

    def __post_init__(self):
        object.__setattr__(self, "diagonals", frozenset(tuple(sorted(d)) for d in self.diagonals))
        if len(self.diagonals) != self.N - 3:
            raise ValueError(f"need {self.N - 3} diagonals, got {len(self.diagonals)}")
        for d in self.diagonals:
            diagonal(*d, self.N)
        for d, e in combinations(self.diagonals, 2):
            if crosses(d, e):
                raise ValueError(f"diagonals {d} and {e} cross")

    @classmethod
    def fan(cls, N: int, apex: int = 1) -> "Triangulation":
        ds = [tuple(sorted((apex, (apex + k - 1) % N + 1))) for k in range(2, N - 1)]
        return cls(N, frozenset(ds))

    @property
    def ordered(self) -> list:
        return sorted(self.diagonals)

    def edges(self) -> set:
        sides = {tuple(sorted((i, i % self.N + 1))) for i in range(1, self.N + 1)}
        return sides | set(self.diagonals)

    @cached_property
    def triangles(self) -> list:
        E = self.edges()
        out = []
        for a, b, c in combinations(range(1, self.N + 1), 3):
            if (a, b) in E and (b, c) in E and (a, c) in E:
                out.append((a, b, c))
        return out

    def to_json(self) -> dict:
        return {"ngon": self.N, "diagonals": [list(d) for d in self.ordered]}

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        return cls(int(data["ngon"]), frozenset(tuple(d) for d in data["diagonals"]))


def flip(t: Triangulation, d: tuple) -> Triangulation:
    """Replace ``d`` by the other diagonal of its quadrilateral."""
    d = tuple(sorted(d))
    if d not in t.diagonals:
        raise NotInTriangulation(f"{d} is not in the triangulation")
    apexes = [v for tri in t.triangles if set(d) <= set(tri) for v in tri if v not in d]
    new = tuple(sorted(apexes))
    return Triangulation(t.N, (t.diagonals - {d}) | {new})


def triangulations(N: int) -> list:
    """All triangulations of the N-gon (flip-graph closure from the fan)."""
    start = Triangulation.fan(N)
    seen = {start.diagonals: start}
    queue = [start]
    while queue:
        t = queue.pop()
        for d in t.ordered:
            t2 = flip(t, d)
            if t2.diagonals not in seen:
                seen[t2.diagonals] = t2
                queue.append(t2)
    return sorted(seen.values(), key=lambda t: t.ordered)


def flip_graph_dot(N: int) -> str:
    ts = triangulations(N)
    idx = {t.diagonals: i for i, t in enumerate(ts)}
    lines = ["graph flips {"]
    for i, t in enumerate(ts):
        lab = " ".join(f"{a}{b}" for a, b in t.ordered)
        lines.append(f'  t{i} [label="{lab}"];')
    for i, t in enumerate(ts):
        for d in t.ordered:
            j = idx[flip(t, d).diagonals]
            if i < j:
                lines.append(f"  t{i} -- t{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _triangle_sides(tri) -> list:
    a, b, c = tri
    return [(a, b), (b, c), (a, c)]     # clockwise order of sides


def exchange_matrix(t: Triangulation, order=None) -> tuple:
    """b[g][d] = #(triangles where d follows g counterclockwise) - #(clockwise)."""
    order = t.ordered if order is None else list(order)
    pos = {d: i for i, d in enumerate(order)}
    n = len(order)
    B = [[0] * n for _ in range(n)]
    for tri in t.triangles:
        sides = _triangle_sides(tri)
        for k in range(3):
            g, d = sides[k], sides[(k + 1) % 3]
            if g in pos and d in pos:
                B[pos[g]][pos[d]] -= 1
                B[pos[d]][pos[g]] += 1
    return tuple(tuple(r) for r in B)


def seed_from_triangulation(t: Triangulation) -> Seed:
    order = t.ordered
    names = [f"x{a}{b}" if t.N < 10 else f"x{a}_{b}" for a, b in order]
    return Seed.initial(exchange_matrix(t, order), len(order), names)


# ---------------------------------------------------------------------------
# the dihedral group


@dataclass(frozen=True)
class DihedralElement:
    N: int
    r: int = 0
    reflected: bool = False

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % self.N)

    def __call__(self, v: int) -> int:
        w = (2 - v) if self.reflected else v
        return (w - 1 + self.r) % self.N + 1

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        r = self.r + (-other.r if self.reflected else other.r)
        return DihedralElement(self.N, r, self.reflected != other.reflected)

    def on_diagonal(self, d: tuple) -> tuple:
        return tuple(sorted((self(d[0]), self(d[1]))))

    def label(self) -> str:
        return f"{'s' if self.reflected else 'r'}{self.r}"


def dihedral_group(N: int) -> list:
    return [DihedralElement(N, r, s) for s in (False, True) for r in range(N)]


def rotation(N: int, k: int = 1) -> DihedralElement:
    return DihedralElement(N, k, False)


def reflection_through(N: int, v: int) -> DihedralElement:
    """Reflection whose axis passes through vertex ``v``."""
    return DihedralElement(N, 2 * (v - 1), True)


def reflection_v(N: int, c: int) -> DihedralElement:
    """The reflection v -> c - v (mod N)."""
    return DihedralElement(N, c - 2, True)


@dataclass
class PolygonModel:
    """Exchange graph of the N-gon together with the variable <-> diagonal map."""
    N: int
    base: Triangulation
    graph: ExchangeGraph
    diag_of: dict          # var id -> diagonal
    var_of: dict           # diagonal -> var id
    node_tri: list         # node id -> Triangulation

    def psi(self, h: DihedralElement) -> Automorphism:
        target = [self.var_of[h.on_diagonal(d)] for d in self.base.ordered]
        return automorphism_from_cluster_map(self.graph, target, check_all=False)

    def diagonals_of(self, ids) -> list:
        return sorted(self.diag_of[v] for v in ids)

    def ids_of(self, ds) -> frozenset:
        return frozenset(self.var_of[tuple(sorted(d))] for d in ds)

    def subgroup(self, elements) -> frozenset:
        from .autgrp import identity
        return closure([self.psi(h) for h in elements], identity(self.graph))


def polygon_model(N: int, base: Triangulation | None = None) -> PolygonModel:
    """Enumerate the polygon algebra and match variables with diagonals by
    flipping in parallel with mutation."""
    base = base or Triangulation.fan(N)
    g = enumerate_graph(seed_from_triangulation(base)).require_complete()
    diag_of = {i: d for i, d in enumerate(base.ordered)}
    node_tri = [None] * len(g.nodes)
    node_tri[0] = base
    queue = [0]
    while queue:
        a = queue.pop(0)
        t = node_tri[a]
        for v in g.nodes[a].vars:
            b, w = g.edges[(a, v)]
            t2 = flip(t, diag_of[v])
            new = (t2.diagonals - t.diagonals)
            (nd,) = tuple(new)
            if diag_of.setdefault(w, nd) != nd:
                raise AssertionError("flip and mutation disagree")
            if node_tri[b] is None:
                node_tri[b] = t2
                queue.append(b)
            elif node_tri[b].diagonals != t2.diagonals:
                raise AssertionError("flip and mutation disagree")
    var_of = {d: v for v, d in diag_of.items()}
    if len(var_of) != len(diag_of):
        raise AssertionError("two variables on one diagonal")
    return PolygonModel(N, base, g, diag_of, var_of, node_tri)


def flip_mutation_compatible(t: Triangulation, d: tuple) -> bool:
    """seed(flip(t, d)) equals the mutation of seed(t) at d, up to relabelling."""
    t2 = flip(t, d)
    new = next(iter(t2.diagonals - t.diagonals))
    order = t.ordered
    k = order.index(tuple(sorted(d)))
    mutated = seed_from_triangulation(t).mutate(k).matrix
    order2 = [new if x == tuple(sorted(d)) else x for x in order]
    return mutated == exchange_matrix(t2, order2)


def mcg_iso_check(N: int) -> dict:
    """psi: dihedral group of order 2N -> Aut of the N-gon algebra."""
    model = polygon_model(N)
    D = dihedral_group(N)
    psi = {h: model.psi(h) for h in D}
    aut = enumerate_aut(model.graph)
    hom = all(psi[a * b] == compose(psi[a], psi[b]) for a in D for b in D)
    injective = len(set(psi.values())) == len(D)
    onto = set(psi.values()) == set(aut)
    return {"N": N, "dihedral_order": len(D), "aut_order": len(aut),
            "homomorphism": hom, "injective": injective, "onto": onto,
            "ok": hom and injective and onto}


def fixed_diagonals(model: PolygonModel, H) -> list:
    ids = [v for v in range(len(model.graph.variables)) if all(f.perm[v] == v for f in H)]
    return model.diagonals_of(ids)


def maximal_invariant_region(model: PolygonModel, H) -> dict:
    """H-fixed diagonals and their maximal pairwise-compatible subsets."""
    fixed = fixed_diagonals(model, H)
    maxi = []
    for r in range(len(fixed), 0, -1):
        for S in combinations(fixed, r):
            if any(crosses(a, b) for a, b in combinations(S, 2)):
                continue
            if any(set(S) <= set(T) for T in maxi):
                continue
            maxi.append(S)
    return {"fixed": fixed, "maximal_compatible": sorted(maxi)}


def dumps_triangulation(t: Triangulation) -> str:
    return json.dumps(t.to_json())
