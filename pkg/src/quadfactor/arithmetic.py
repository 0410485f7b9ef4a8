"""Determinant, rank and integer solving from a factorization, plus oracles.

The oracles share no code with the factorization: they eliminate directly
on the matrix (fraction-free, modular, Smith reduction) or enumerate
matchings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np

from . import _kernels
from .factorization import LDUFactorization

MATCHING_LIMIT = 14


def _ints(M) -> list[list[int]]:
    return [[int(x) for x in row] for row in np.asarray(M)]


def permutation_sign(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# -- through the factorization ----------------------------------------------------


def det_via_ldu(f: LDUFactorization) -> int:
    if f.b != f.w:
        raise ValueError(f"determinant of a {f.b}x{f.w} matrix")
    if len(f.units()) < f.b:
        return 0
    d = permutation_sign(f.black_perm) * permutation_sign(f.white_perm)
    d *= int(np.prod(np.diag(f.L))) * int(np.prod(np.diag(f.U)))
    return d


def rank_via_ldu(f: LDUFactorization) -> int:
    return int(np.count_nonzero(f.D))


@dataclass(frozen=True)
class SolveOutcome:
    """Either ``x`` with B x = v, or the zero row of D̃ that blocks a solution.

    ``witness`` is then an integer vector c with c B = 0 and c . v != 0,
    in the caller's black labeling.
    """

    x: tuple | None
    row: int | None = None
    witness: tuple | None = None

    @property
    def solvable(self) -> bool:
        return self.x is not None


def _forward(L: list[list[int]], rhs: list[int]) -> list[int]:
    y = []
    for i, row in enumerate(L):
        s = rhs[i] - sum(row[j] * y[j] for j in range(i) if row[j])
        y.append(s * row[i])  # diagonal is +-1, its own inverse
    return y


def _backward(U: list[list[int]], rhs: list[int]) -> list[int]:
    n = len(U)
    z = [0] * n
    for i in range(n - 1, -1, -1):
        row = U[i]
        s = rhs[i] - sum(row[j] * z[j] for j in range(i + 1, n) if row[j])
        z[i] = s * row[i]
    return z


def solve_integer(f: LDUFactorization, v: Sequence[int]) -> SolveOutcome:
    """Integer solution of B x = v, or a certificate that none exists over Q."""
    v = [int(a) for a in v]
    if len(v) != f.b:
        raise ValueError(f"right-hand side has length {len(v)}, expected {f.b}")
    L, D, U = _ints(f.L), _ints(f.D), _ints(f.U)
    y = _forward(L, [v[p] for p in f.black_perm])
    unit_col = {i: j for i, j in f.units()}
    for r in range(f.b):
        if r not in unit_col and y[r] != 0:
            # row r of L^-1 annihilates B in factor order
            Lt = [[L[j][i] for j in range(f.b)] for i in range(f.b)]
            e = [1 if i == r else 0 for i in range(f.b)]
            c = _backward(Lt, e)
            witness = [0] * f.b
            for i, p in enumerate(f.black_perm):
                witness[p] = c[i]
            return SolveOutcome(None, r, tuple(witness))
    z = [0] * f.w
    for r, j in unit_col.items():
        z[j] = y[r]
    u = _backward(U, z)
    x = [0] * f.w
    for c, p in enumerate(f.white_perm):
        x[p] = u[c]
    return SolveOutcome(tuple(x))


# -- oracles --------------------------------------------------------------------------


def det_oracle(B) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    B = np.asarray(B)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise ValueError(f"determinant of a matrix with shape {B.shape}")
    return _kernels.det_bareiss(B.astype(np.int64))


def cofactor_det(B) -> int:
    """Laplace expansion along the first row; exponential, for cross-checks only."""
    M = _ints(B)
    if len(M) == 0:
        return 1
    if len(M) == 1:
        return M[0][0]
    total = 0
    for j, a in enumerate(M[0]):
        if a:
            minor = [row[:j] + row[j + 1 :] for row in M[1:]]
            total += (-1) ** j * a * cofactor_det(minor)
    return total


def leibniz_det(B) -> int:
    M = _ints(B)
    n = len(M)
    total = 0
    for p in permutations(range(n)):
        term = permutation_sign(p)
        for i in range(n):
            term *= M[i][p[i]]
            if not term:
                break
        total += term
    return total


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def rank_oracle(B, modulus: int = 0) -> int:
    """Rank over Q (modulus 0) or over GF(p)."""
    B = np.asarray(B, dtype=np.int64)
    if B.size == 0:
        return 0
    if modulus == 0:
        return _kernels.rank_bareiss(B)
    if not _is_prime(modulus):
        raise ValueError(f"{modulus} is not prime")
    return _kernels.rank_mod_p(B, modulus)


def signed_matchings(B) -> int:
    """Signed count of perfect matchings: sum of sgn(s) over supported permutations."""
    B = np.asarray(B, dtype=np.int64)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise ValueError(f"signed matchings need a square matrix, got shape {B.shape}")
    if B.shape[0] > MATCHING_LIMIT:
        raise ValueError(f"matching enumeration is capped at {MATCHING_LIMIT} squares per color")
    return _kernels.signed_matchings(B)


def count_matchings(B) -> int:
    """Unsigned number of perfect matchings (domino tilings for a disk)."""
    return _permanent01(_ints(B))


def _permanent01(M: list[list[int]]) -> int:
    n = len(M)
    used = [False] * n

    def walk(i):
        if i == n:
            return 1
        total = 0
        for j in range(n):
            if M[i][j] and not used[j]:
                used[j] = True
                total += walk(i + 1)
                used[j] = False
        return total

    return walk(0)


@dataclass(frozen=True)
class SnfReport:
    factors: tuple  # nonzero invariant factors, each dividing the next

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def free_cokernel(self) -> bool:
        return all(d == 1 for d in self.factors)


def smith_normal_form(B) -> SnfReport:
    """Invariant factors by exact integer row and column reduction."""
    M = _ints(B)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    factors = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if M[i][j] and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            p = M[t][t]
            moved = False
            for i in range(t + 1, rows):
                q = M[i][t] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
                if M[i][t]:
                    M[t], M[i] = M[i], M[t]
                    moved = True
                    break
            if moved:
                continue
            for j in range(t + 1, cols):
                q = M[t][j] // p
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                if M[t][j]:
                    for row in M:
                        row[t], row[j] = row[j], row[t]
                    moved = True
                    break
            if moved:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad])]
        factors.append(abs(M[t][t]))
        t += 1
    return SnfReport(tuple(factors))


def rational_solve(B, v: Sequence[int]) -> tuple | None:
    """Some rational solution of B x = v by Gauss-Jordan over Q, or None."""
    M = [[Fraction(int(a)) for a in row] + [Fraction(int(c))] for row, c in zip(np.asarray(B), v)]
    rows = len(M)
    cols = np.asarray(B).shape[1] if rows else 0
    if rows != len(v):
        raise ValueError("right-hand side length mismatch")
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        M[r] = [a / piv for a in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                a = M[i][c]
                M[i] = [x - a * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if any(M[i][cols] for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    return tuple(x)
