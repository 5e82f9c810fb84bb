"""Seeds, skew-symmetrizers and seed mutation.

Matrices are tuples of integer rows; an extended matrix has one row per
variable (exchange rows first) and one column per exchange variable.
Mutation indices are 0-based in the Python API.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .exactpoly import LaurentPoly

Matrix = tuple  # tuple[tuple[int, ...], ...]


class NotSkewSymmetrizable(ValueError):
    pass


class SeedError(ValueError):
    pass


def as_matrix(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def find_skew_symmetrizer(B: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Minimal positive integer diagonal D with D*B skew-symmetric.

    The constraints d_i*b_ij = -d_j*b_ji fix ratios d_j/d_i along every
    nonzero entry; each connected component is solved by propagation and
    scaled to the least integer solution.
    """
    n = len(B)
    for i in range(n):
        if len(B[i]) < n:
            raise NotSkewSymmetrizable("exchange block is not square")
        if B[i][i] != 0:
            raise NotSkewSymmetrizable(f"nonzero diagonal entry at {i}")
        for j in range(n):
            a, b = B[i][j], B[j][i]
            if (a == 0) != (b == 0) or (a != 0 and (a > 0) == (b > 0)):
                raise NotSkewSymmetrizable(f"sign pattern violated at ({i}, {j})")
    ratio: list[Fraction | None] = [None] * n
    for root in range(n):
        if ratio[root] is not None:
            continue
        ratio[root] = Fraction(1)
        comp = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if B[i][j] == 0:
                    continue
                # d_j = -d_i * b_ij / b_ji
                want = ratio[i] * Fraction(-B[i][j], B[j][i])
                if ratio[j] is None:
                    ratio[j] = want
                    comp.append(j)
                    stack.append(j)
                elif ratio[j] != want:
                    raise NotSkewSymmetrizable("inconsistent cycle of ratios")
        scale = lcm(*(ratio[j].denominator for j in comp))
        ints = [int(ratio[j] * scale) for j in comp]
        g = 0
        for v in ints:
            g = gcd(g, v)
        for j, v in zip(comp, ints):
            ratio[j] = Fraction(v // g)
    return tuple(int(r) for r in ratio)


def mutate_matrix(M: Sequence[Sequence[int]], k: int) -> Matrix:
    n = len(M[0]) if M else 0
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range for {n} exchange columns")
    out = []
    for i, row in enumerate(M):
        new = []
        for j, b in enumerate(row):
            if i == k or j == k:
                new.append(-b)
            else:
                bik, bkj = row[k], M[k][j]
                if bik > 0 and bkj > 0:
                    new.append(b + bik * bkj)
                elif bik < 0 and bkj < 0:
                    new.append(b - bik * bkj)
                else:
                    new.append(b)
        out.append(tuple(new))
    return tuple(out)


def exchange_block(M: Matrix, n: int) -> Matrix:
    return tuple(tuple(r[:n]) for r in M[:n])


@dataclass(frozen=True)
class Seed:
    names: tuple
    matrix: Matrix
    n_exchange: int
    expressions: tuple

    def __post_init__(self):
        m, n = len(self.names), self.n_exchange
        if not 0 <= n <= m:
            raise SeedError(f"need 0 <= n_exchange <= m, got n={n}, m={m}")
        if len(self.matrix) != m or any(len(r) != n for r in self.matrix):
            raise SeedError(f"matrix must be {m}x{n}")
        if len(self.expressions) != m:
            raise SeedError("one expression per variable required")
        if len(set(self.expressions)) != m:
            raise SeedError("cluster variables must be distinct")
        find_skew_symmetrizer(exchange_block(self.matrix, n))

    @classmethod
    def initial(cls, matrix, n_exchange: int | None = None, names=None) -> "Seed":
        matrix = as_matrix(matrix)
        m = len(matrix)
        n = len(matrix[0]) if matrix and n_exchange is None else (n_exchange or 0)
        if names is None:
            names = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(m - n)]
        exprs = tuple(LaurentPoly.variable(m, i) for i in range(m))
        return cls(tuple(names), matrix, n, exprs)

    @property
    def m(self) -> int:
        return len(self.names)

    @property
    def n(self) -> int:
        return self.n_exchange

    @property
    def exchange_matrix(self) -> Matrix:
        return exchange_block(self.matrix, self.n_exchange)

    @property
    def cluster(self) -> tuple:
        return self.expressions

    @property
    def frozen_positions(self) -> range:
        return range(self.n_exchange, self.m)

    def skew_symmetrizer(self) -> tuple[int, ...]:
        return find_skew_symmetrizer(self.exchange_matrix)

    def exchange_binomial(self, k: int) -> LaurentPoly:
        """Numerator of the exchange relation at position ``k``."""
        ar = self.expressions[0].nvars if self.expressions else 0
        pos = LaurentPoly.one(ar)
        neg = LaurentPoly.one(ar)
        for j in range(self.m):
            b = self.matrix[j][k]
            if b > 0:
                pos = pos * self.expressions[j] ** b
            elif b < 0:
                neg = neg * self.expressions[j] ** (-b)
        return pos + neg

    def mutate(self, k: int) -> "Seed":
        if not 0 <= k < self.n_exchange:
            raise IndexError(f"mutation index {k} out of range (rank {self.n_exchange})")
        new_var = self.exchange_binomial(k).exact_div(self.expressions[k])
        exprs = list(self.expressions)
        exprs[k] = new_var
        return Seed(self.names, mutate_matrix(self.matrix, k), self.n_exchange, tuple(exprs))

    def apply_sequence(self, ks: Sequence[int]) -> "Seed":
        s = self
        for k in ks:
            s = s.mutate(k)
        return s

    def with_expressions(self, exprs) -> "Seed":
        return Seed(self.names, self.matrix, self.n_exchange, tuple(exprs))

    def to_json(self) -> dict:
        return {"names": list(self.names), "n_exchange": self.n_exchange,
                "matrix": [list(r) for r in self.matrix]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "Seed":
        try:
            names = data["names"]
            n = int(data["n_exchange"])
            matrix = as_matrix(data["matrix"])
        except (KeyError, TypeError) as exc:
            raise SeedError(f"malformed seed JSON: {exc}") from exc
        if len(matrix) != len(names):
            raise SeedError("matrix needs one row per name")
        if len(matrix) == 0:
            return cls((), (), 0, ())
        return cls.initial(matrix, n, names)

    @classmethod
    def loads(cls, text: str) -> "Seed":
        return cls.from_json(json.loads(text))


def mutate_seed(s: Seed, k: int) -> Seed:
    return s.mutate(k)


def apply_sequence(s: Seed, ks: Sequence[int]) -> Seed:
    return s.apply_sequence(ks)


def empty_seed() -> Seed:
    return Seed((), (), 0, ())
