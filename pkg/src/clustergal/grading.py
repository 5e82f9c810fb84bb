"""Principal-coefficient invariants: g-vectors, C/G-matrices, F-polynomials,
denominator vectors.

All functions take expressions in the initial cluster of a principal
extension: slots 0..n-1 are the exchange variables, slots n..2n-1 the
coefficients y_1..y_n.
"""
from __future__ import annotations

from typing import Sequence

import flint

from .exactpoly import LaurentPoly
from .seedcore import Matrix, Seed, as_matrix, find_skew_symmetrizer


class NotHomogeneous(ValueError):
    pass


class SingularCMatrix(ArithmeticError):
    pass


class NonIntegerResult(ArithmeticError):
    pass


def principal_extension(B: Sequence[Sequence[int]]) -> Matrix:
    B = as_matrix(B)
    find_skew_symmetrizer(B)
    n = len(B)
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return B + ident


def principal_seed(B: Sequence[Sequence[int]]) -> Seed:
    return Seed.initial(principal_extension(B))


def _degree(e, B) -> tuple:
    n = len(B)
    deg = list(e[:n])
    for j in range(n):
        yj = e[n + j]
        if yj:
            # deg(y_j) = -(column j of B)
            for i in range(n):
                deg[i] -= yj * B[i][j]
    return tuple(deg)


def g_vector(v: LaurentPoly, B: Sequence[Sequence[int]]) -> tuple:
    """Common degree of all terms of ``v``; raises NotHomogeneous otherwise."""
    B = as_matrix(B)
    if v.nvars != 2 * len(B):
        raise ValueError("expression is not in a principal-coefficient context")
    degs = {_degree(e, B) for e in v.terms}
    if len(degs) != 1:
        raise NotHomogeneous(f"{len(degs)} distinct degrees")
    return degs.pop()


def c_matrix(s: Seed) -> Matrix:
    n = s.n_exchange
    return tuple(tuple(r) for r in s.matrix[n:2 * n])


def g_matrix(s: Seed, B: Sequence[Sequence[int]]) -> Matrix:
    """Columns are the g-vectors of the seed's exchange variables."""
    cols = [g_vector(s.expressions[k], B) for k in range(s.n_exchange)]
    n = len(cols)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def _to_int_matrix(M) -> Matrix:
    out = []
    for i in range(M.nrows()):
        row = []
        for j in range(M.ncols()):
            c = M[i, j]
            if c.q != 1:
                raise NonIntegerResult(f"entry ({i},{j}) = {c}")
            row.append(int(c.p))
        out.append(tuple(row))
    return tuple(out)


def column_skew_symmetrizer(B: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Minimal positive D with B*D skew-symmetric (the symmetrizer of B^T).

    This is the convention under which G = D (C^{-1})^T D^{-1} holds; with the
    row convention (D*B skew-symmetric) the identity fails for B2 and G2.
    """
    B = as_matrix(B)
    return find_skew_symmetrizer(tuple(zip(*B)) if B else ())


def g_matrix_via_duality(C: Sequence[Sequence[int]], D: Sequence[int]) -> Matrix:
    """G = D (C^{-1})^T D^{-1}, exactly; ``D`` from :func:`column_skew_symmetrizer`."""
    n = len(C)
    if n == 0:
        return ()
    Cm = flint.fmpq_mat(n, n, [x for r in C for x in r])
    if Cm.det() == 0:
        raise SingularCMatrix("C-matrix is singular")
    Dm = flint.fmpq_mat(n, n, [int(i == j) * D[i] for i in range(n) for j in range(n)])
    Dinv = flint.fmpq_mat(n, n, [flint.fmpq(1, D[i]) if i == j else 0
                                 for i in range(n) for j in range(n)])
    return _to_int_matrix(Dm * Cm.inv().transpose() * Dinv)


def is_column_sign_coherent(C: Sequence[Sequence[int]]) -> bool:
    for j in range(len(C[0]) if C else 0):
        col = [r[j] for r in C]
        if any(x > 0 for x in col) and any(x < 0 for x in col):
            return False
    return True


def f_polynomial(v: LaurentPoly, n: int) -> LaurentPoly:
    """Set x_1..x_n to 1; the result lives in the n coefficient slots."""
    return v.specialize(range(n), 1).project(range(n, 2 * n))


def denominator_vector(v: LaurentPoly, n: int | None = None) -> tuple:
    """d_i = -(least exponent of x_i); an initial variable gets -1 at its slot."""
    n = v.nvars if n is None else n
    low = v.min_exponents()
    return tuple(-low[i] for i in range(n))


def compatibility_degree_initial(i: int, v: LaurentPoly) -> int:
    return -v.min_exponents()[i]
