"""Chebyshev transforms, cluster-monomial families, the stability checker and
the brute-force unique-expression scan.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

import flint

from .autgrp import Automorphism
from .exactpoly import LaurentPoly, substitute
from .exgraph import ExchangeGraph
from .seedcore import Seed


class UnregisteredQuasiVariable(KeyError):
    pass


KINDS = ("bangle", "bracelet", "band")


def chebyshev_T(k: int) -> flint.fmpz_poly:
    """First kind, normalised T_0 = 2, T_1 = z, T_{k+1} = z T_k - T_{k-1}."""
    if k < 0:
        raise ValueError("k must be >= 0")
    z = flint.fmpz_poly([0, 1])
    a, b = flint.fmpz_poly([2]), z
    if k == 0:
        return a
    for _ in range(k - 1):
        a, b = b, z * b - a
    return b


def chebyshev_U(k: int) -> flint.fmpz_poly:
    """Second kind, U_0 = 1, U_1 = z, same recursion.  U_{-1} = 0, U_{-2} = -1."""
    if k < -2:
        raise ValueError("k must be >= -2")
    if k == -2:
        return flint.fmpz_poly([-1])
    if k == -1:
        return flint.fmpz_poly([])
    z = flint.fmpz_poly([0, 1])
    a, b = flint.fmpz_poly([1]), z
    if k == 0:
        return a
    for _ in range(k - 1):
        a, b = b, z * b - a
    return b


def eval_poly(P: flint.fmpz_poly, z: LaurentPoly) -> LaurentPoly:
    """Horner evaluation of an integer polynomial at a Laurent polynomial."""
    acc = LaurentPoly.zero(z.nvars)
    for c in reversed(P.coeffs()):
        acc = acc * z + int(c)
    return acc


def apply_transform(kind: str, k: int, z: LaurentPoly) -> LaurentPoly:
    if kind == "bangle":
        return z ** k
    if kind == "bracelet":
        return eval_poly(chebyshev_T(k), z)
    if kind == "band":
        return eval_poly(chebyshev_U(k), z)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# loop element fixture


def loop_from_smoothing(alpha: LaurentPoly, c_plus: LaurentPoly, c_minus: LaurentPoly) -> LaurentPoly:
    """Solve x_zeta * x_alpha = x_{C+} + x_{C-} for x_zeta (exact division)."""
    return (c_plus + c_minus).exact_div(alpha)


def kronecker_seed() -> Seed:
    return Seed.initial([[0, 2], [-2, 0]])


def kronecker_loop() -> LaurentPoly:
    """Loop element of the annulus with one marked point on each boundary.

    The arcs form the chain x_{k-1} x_{k+1} = x_k^2 + 1; smoothing the loop
    against the arc x1 gives x_zeta * x1 = x0 + x2.
    """
    s = kronecker_seed()
    x1, x2 = s.expressions
    x0 = s.mutate(1).expressions[1]       # (x1^2 + 1) / x2
    return loop_from_smoothing(x1, x0, x2)


def kronecker_symmetries() -> dict:
    """Images of (x1, x2) under the swap and the shift of the Kronecker algebra."""
    s = kronecker_seed()
    x1, x2 = s.expressions
    return {"swap": (x2, x1), "shift": (x2, s.mutate(0).expressions[0])}


# ---------------------------------------------------------------------------
# families built from compatible sets


@dataclass(frozen=True)
class QuasiVariable:
    id: int
    value: LaurentPoly
    kind: str = "bangle"     # which P_k gives <k, z>


@dataclass
class BasisFamily:
    elements: list                       # LaurentPoly
    structure: list                      # per element: tuple of (id, k)
    registry: dict = field(default_factory=dict)   # id -> QuasiVariable

    def __len__(self):
        return len(self.elements)

    def to_json(self, names=None) -> dict:
        return {"elements": [{"value": p.to_string(names), "decomposition": [list(t) for t in d]}
                             for p, d in zip(self.elements, self.structure)]}


def _value(u: ExchangeGraph, registry: dict, vid: int, k: int) -> LaurentPoly:
    if vid < len(u.variables):
        return u.variables[vid] ** k
    q = registry.get(vid)
    if q is None:
        raise UnregisteredQuasiVariable(vid)
    return apply_transform(q.kind, k, q.value)


def _monomials(ids, max_degree):
    ids = sorted(ids)
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(ids, d):
            dec = {}
            for v in combo:
                dec[v] = dec.get(v, 0) + 1
            yield tuple(sorted(dec.items()))


def cluster_monomial_basis(u: ExchangeGraph, max_degree: int) -> BasisFamily:
    """Monomials of total degree <= max_degree supported on one cluster."""
    u.variable_set()
    seen = set()
    for node in u.nodes:
        seen.update(_monomials(node.vars, max_degree))
    structure = sorted(seen, key=lambda d: (sum(k for _, k in d), d))
    elements = []
    for dec in structure:
        p = LaurentPoly.one(u.m)
        for v, k in dec:
            p = p * u.variables[v] ** k
        elements.append(p)
    return BasisFamily(elements, structure)


def independence_certificate(family: BasisFamily, trials: int = 3, rand_seed: int = 0) -> dict:
    """Rank of the evaluation matrix at random rational points.

    Full rank in any trial certifies independence; a dependent family is
    reported independent only if every trial hits a root of a nonzero
    polynomial, which has probability at most (deg / range) per trial.
    """
    rng = random.Random(rand_seed)
    N = len(family.elements)
    if N == 0:
        return {"independent": True, "trials": 0}
    nv = family.elements[0].nvars
    for t in range(trials):
        pts = [[Fraction(rng.randint(1, 10**6), rng.randint(1, 10**3)) for _ in range(nv)]
               for _ in range(N)]
        rows = [[p.evaluate(pt) for p in family.elements] for pt in pts]
        M = flint.fmpq_mat(N, N, [flint.fmpq(x.numerator, x.denominator) for r in rows for x in r])
        if M.rank() == N:
            return {"independent": True, "trials": t + 1}
    return {"independent": False, "trials": trials}


def _act(u: ExchangeGraph, f: Automorphism, registry: dict, vid: int) -> int | None:
    if vid < len(u.variables):
        return f.perm[vid]
    q = registry.get(vid)
    if q is None:
        raise UnregisteredQuasiVariable(vid)
    img = substitute(q.value, [u.variables[f.perm[i]] for i in range(u.m)])
    for r in registry.values():
        if r.value == img and r.kind == q.kind:
            return r.id
    return None


def d_stable_check(u: ExchangeGraph, family: BasisFamily, G, bound: int | None = None) -> dict:
    """Check equivariance, stability under G, and distinctness of elements."""
    reg = family.registry
    decs = set(family.structure)
    idx = {d: i for i, d in enumerate(family.structure)}
    equiv_ok = stable_ok = True
    failures = []
    for f in sorted(G, key=lambda a: (a.perm, a.sign)):
        images = [u.variables[f.perm[i]] for i in range(u.m)]
        for d, p in zip(family.structure, family.elements):
            if bound is not None and sum(k for _, k in d) > bound:
                continue
            mapped = []
            for v, k in d:
                w = _act(u, f, reg, v)
                if w is None:
                    stable_ok = False
                    failures.append(("stability", d))
                    break
                mapped.append((w, k))
            else:
                md = tuple(sorted(mapped))
                if md not in decs:
                    stable_ok = False
                    failures.append(("stability", d))
                    continue
                fp = substitute(p, images)
                if fp != family.elements[idx[md]]:
                    equiv_ok = False
                    failures.append(("equivariance", d))
    distinct_ok = len(set(family.elements)) == len(family.elements)
    if not distinct_ok:
        failures.append(("distinctness", None))
    return {"equivariance": equiv_ok, "stability": stable_ok, "distinct": distinct_ok,
            "ok": equiv_ok and stable_ok and distinct_ok, "failures": failures[:10]}


def extended_rank(s: Seed) -> int:
    if not s.n_exchange:
        return 0
    M = flint.fmpq_mat(s.m, s.n_exchange, [x for r in s.matrix for x in r])
    return M.rank()


def _modulo_frozen(p: LaurentPoly, n: int) -> LaurentPoly:
    low = p.min_exponents()
    return p.div_monomial([0] * n + list(low[n:]))


def unique_expression_brute_force(u: ExchangeGraph, max_compat: int = 2) -> dict:
    """Products x1*x2 of exchange variables with compatibility degree
    <= max_compat determine {x1, x2}, up to a Laurent monomial in the frozen
    variables.

    The statement needs the extended exchange matrix to have full rank; the
    rank is reported so a violation on a rank-deficient seed can be told
    apart from a genuine counterexample.
    """
    exch = u.exchange_ids
    n = u.n
    pairs = []
    for i, a in enumerate(exch):
        for b in exch[i:]:
            if a == b or max(u.compatibility_degree(a, b), u.compatibility_degree(b, a)) <= max_compat:
                pairs.append((a, b))
    by_product: dict = {}
    for a, b in pairs:
        key = _modulo_frozen(u.variables[a] * u.variables[b], n)
        by_product.setdefault(key, []).append((a, b))
    violations = [v for v in by_product.values() if len(v) > 1]
    rank = extended_rank(u.root)
    return {"pairs": len(pairs), "violations": violations, "full_rank": rank == n,
            "rank": rank, "ok": not violations}
