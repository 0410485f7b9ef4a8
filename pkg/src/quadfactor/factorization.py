"""L·D̃·U factorization of black-to-white matrices by recursive cut and paste.

All arithmetic is exact int64; every factor entry lies in {-1, 0, 1}.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .diagonals import Diagonal, select_diagonal
from .disk import Bicoloring, QuadDisk, bicolor, black_to_white_matrix, coloring_from, develop, is_board
from .errors import FactorizationError
from .surgery import RIGHT, SurgeryResult, cut_and_paste, plan_surgery

INT = np.int64


def identity_nm(n: int, m: int) -> np.ndarray:
    """The n x m defective identity with ones at (i, i)."""
    return np.eye(n, m, dtype=INT)


def block_diag(*mats: np.ndarray) -> np.ndarray:
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = np.zeros((rows, cols), dtype=INT)
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def _assemble(tl: np.ndarray, tr: np.ndarray, bl: np.ndarray, br: np.ndarray) -> np.ndarray:
    top = tl.shape[0]
    left = tl.shape[1]
    out = np.zeros((top + bl.shape[0], left + tr.shape[1]), dtype=INT)
    out[:top, :left] = tl
    out[:top, left:] = tr
    out[top:, :left] = bl
    out[top:, left:] = br
    return out


@dataclass(frozen=True)
class DefectiveIdentity:
    """A 0/1 matrix whose unit entries form a strictly increasing staircase."""

    shape: tuple
    units: tuple

    def __post_init__(self):
        n, m = self.shape
        for (i, j), (i2, j2) in zip(self.units, self.units[1:]):
            if not (i < i2 and j < j2):
                raise ValueError("unit entries must increase in both row and column")
        for i, j in self.units:
            if not (0 <= i < n and 0 <= j < m):
                raise ValueError(f"unit ({i}, {j}) outside a {n}x{m} matrix")

    @property
    def rank(self) -> int:
        return len(self.units)

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=INT)
        for i, j in self.units:
            out[i, j] = 1
        return out

    @classmethod
    def from_array(cls, M) -> "DefectiveIdentity":
        M = np.asarray(M)
        if not is_defective_identity(M):
            raise ValueError("matrix is not a defective identity")
        units = tuple((int(i), int(j)) for i, j in zip(*np.nonzero(M)))
        return cls(tuple(M.shape), units)


def is_defective_identity(M) -> bool:
    M = np.asarray(M)
    if M.ndim != 2:
        return False
    if M.size and not np.isin(M, (0, 1)).all():
        return False
    rows, cols = np.nonzero(M)
    # np.nonzero scans row-major, so rows are sorted
    return bool(np.all(np.diff(rows) > 0) and np.all(np.diff(cols) > 0))


@dataclass(frozen=True)
class LDUFactorization:
    """P_b · B · P_w = L · D · U.

    Row r of the factored matrix is black square ``black_perm[r]`` of the
    caller's labeling; column c is white square ``white_perm[c]``.
    """

    black_perm: tuple
    white_perm: tuple
    L: np.ndarray
    D: np.ndarray
    U: np.ndarray

    @property
    def b(self) -> int:
        return self.L.shape[0]

    @property
    def w(self) -> int:
        return self.U.shape[0]

    def units(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.D))]

    def permuted(self, B: np.ndarray) -> np.ndarray:
        """P_b B P_w, i.e. B with rows and columns in factor order."""
        return np.asarray(B)[np.ix_(list(self.black_perm), list(self.white_perm))]

    def P_b(self) -> np.ndarray:
        P = np.zeros((self.b, self.b), dtype=INT)
        P[np.arange(self.b), list(self.black_perm)] = 1
        return P

    def P_w(self) -> np.ndarray:
        P = np.zeros((self.w, self.w), dtype=INT)
        P[list(self.white_perm), np.arange(self.w)] = 1
        return P

    def product(self) -> np.ndarray:
        return self.L @ self.D @ self.U


class Verdict(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def _is_perm(p: Sequence[int], n: int) -> bool:
    return sorted(p) == list(range(n))


def verify_factorization(B, f: LDUFactorization) -> Verdict:
    """Check every structural property and the exact product; falsy with a reason on failure."""
    B = np.asarray(B, dtype=INT)
    b, w = B.shape
    L, D, U = (np.asarray(x) for x in (f.L, f.D, f.U))
    if L.shape != (b, b) or D.shape != (b, w) or U.shape != (w, w):
        return Verdict(False, "shape")
    if not (_is_perm(f.black_perm, b) and _is_perm(f.white_perm, w)):
        return Verdict(False, "permutation")
    for M in (L, U):
        if M.size and not np.isin(M, (-1, 0, 1)).all():
            return Verdict(False, "entry-bound")
    if not is_defective_identity(D):
        return Verdict(False, "defective-identity")
    if np.any(np.triu(L, 1)):
        return Verdict(False, "L-not-lower")
    if np.any(np.tril(U, -1)):
        return Verdict(False, "U-not-upper")
    if not (np.all(np.abs(np.diag(L)) == 1) and np.all(np.abs(np.diag(U)) == 1)):
        return Verdict(False, "diagonal")
    if not np.array_equal(f.permuted(B), L @ D @ U):
        return Verdict(False, "product")
    return Verdict(True, "ok")


# -- the block step -----------------------------------------------------------


def block_ldu(M, n: int, n_prime: int, N, variant: str = "right") -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Three-factor block decomposition of M around its n x n' corner.

    ``right`` needs n' <= n and M11 N = M12; ``left`` needs n' >= n and
    N M11 = M21. The product is checked before returning.
    """
    M = np.asarray(M, dtype=INT)
    N = np.asarray(N, dtype=INT)
    rows, cols = M.shape
    m, m_prime = rows - n, cols - n_prime
    if m < 0 or m_prime < 0:
        raise ValueError(f"split ({n}, {n_prime}) does not fit a {rows}x{cols} matrix")
    M11, M12 = M[:n, :n_prime], M[:n, n_prime:]
    M21, M22 = M[n:, :n_prime], M[n:, n_prime:]
    if variant == "right":
        if n_prime > n:
            raise ValueError("right variant needs n' <= n")
        if N.shape != (n_prime, m_prime):
            raise ValueError(f"N must be {n_prime}x{m_prime}, got {N.shape}")
        if not np.array_equal(M11 @ N, M12):
            raise FactorizationError("hypothesis M11 N = M12 fails")
        pad = identity_nm(n_prime, n)
        Lf = _assemble(M11 @ pad, np.zeros((n, m), INT), M21 @ pad, np.eye(m, dtype=INT))
        Df = _assemble(identity_nm(n, n_prime), np.zeros((n, m_prime), INT), np.zeros((m, n_prime), INT), M22 - M21 @ N)
        Uf = _assemble(np.eye(n_prime, dtype=INT), N, np.zeros((m_prime, n_prime), INT), np.eye(m_prime, dtype=INT))
    elif variant == "left":
        if n_prime < n:
            raise ValueError("left variant needs n' >= n")
        if N.shape != (m, n):
            raise ValueError(f"N must be {m}x{n}, got {N.shape}")
        if not np.array_equal(N @ M11, M21):
            raise FactorizationError("hypothesis N M11 = M21 fails")
        pad = identity_nm(n_prime, n)
        Lf = _assemble(np.eye(n, dtype=INT), np.zeros((n, m), INT), N, np.eye(m, dtype=INT))
        Df = _assemble(identity_nm(n, n_prime), np.zeros((n, m_prime), INT), np.zeros((m, n_prime), INT), M22 - N @ M12)
        Uf = _assemble(pad @ M11, pad @ M12, np.zeros((m_prime, n_prime), INT), np.eye(m_prime, dtype=INT))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if not np.array_equal(Lf @ Df @ Uf, M):
        raise FactorizationError("block decomposition does not reproduce M")
    return Lf, Df, Uf


# -- one cut-and-paste step ------------------------------------------------------


@dataclass(frozen=True)
class StepFactors:
    """One inductive step, stated in the frame whose rows have the diagonal's color.

    In that frame A = [[B11, B12], [B21, B22]] with the removed squares
    first, and A = lower @ center @ upper. ``transposed`` is set when the
    diagonal squares are white, so the black-to-white matrix is A^T.
    """

    transposed: bool
    row_order: tuple  # square indices of the frame's rows
    col_order: tuple
    B11: np.ndarray
    B12: np.ndarray
    B21: np.ndarray
    B22: np.ndarray
    S_rows: np.ndarray  # diagonal of S_{b'} (frame rows of the smaller disk)
    S_cols: np.ndarray  # diagonal of S_{w'}
    N: np.ndarray
    columns: tuple  # j_1..j_{k-1}, 0-based inside the smaller disk's columns
    L_step: np.ndarray
    X: np.ndarray
    Y: np.ndarray
    B_prime: np.ndarray  # B22 - B21 N
    lower: np.ndarray
    center: np.ndarray
    upper: np.ndarray

    @property
    def sizes(self) -> tuple[int, int]:
        """(b - b', w - w') in the frame: removed rows and removed columns."""
        return self.B11.shape

    def black_white(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(lower, center, upper) for the black-to-white matrix itself."""
        if self.transposed:
            return self.upper.T, self.center.T, self.lower.T
        return self.lower, self.center, self.upper


def _adjacency(disk: QuadDisk, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    ri = {s: i for i, s in enumerate(rows)}
    ci = {s: j for j, s in enumerate(cols)}
    A = np.zeros((len(rows), len(cols)), dtype=INT)
    for owners in disk.edge_squares.values():
        if len(owners) == 2:
            s, t = owners
            if s in ri and t in ci:
                A[ri[s], ci[t]] = 1
            elif t in ri and s in ci:
                A[ri[t], ci[s]] = 1
    return A


def _glued_adjacency(surgery: SurgeryResult, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    """Adjacency of the smaller disk, read from the surgery output, in original square ids."""
    ri = {s: i for i, s in enumerate(rows)}
    ci = {s: j for j, s in enumerate(cols)}
    A = np.zeros((len(rows), len(cols)), dtype=INT)
    for comp, m in zip(surgery.components, surgery.square_maps):
        for owners in comp.edge_squares.values():
            if len(owners) == 2:
                s, t = m[owners[0]], m[owners[1]]
                if s in ri and t in ci:
                    A[ri[s], ci[t]] += 1
                elif t in ri and s in ci:
                    A[ri[t], ci[s]] += 1
    return A


def _bidiagonal(k: int, kp: int) -> np.ndarray:
    out = np.zeros((k, kp), dtype=INT)
    for i in range(kp):
        out[i, i] = 1
        if i + 1 < k:
            out[i + 1, i] = 1
    return out


def step_factor(
    disk: QuadDisk,
    diagonal: Diagonal | None,
    surgery: SurgeryResult,
    coloring: Bicoloring | None = None,
    prime_order: Sequence[int] | None = None,
    verify: bool = True,
) -> StepFactors:
    """Inductive step relating B of the disk to B of the cut-and-pasted disk.

    ``prime_order`` lists the surviving squares (original indices) in the
    order used for the smaller disk; by default component by component.
    """
    plan = surgery.plan
    if diagonal is not None and tuple(diagonal.squares) != plan.diagonal.squares:
        raise ValueError("surgery was not performed along this diagonal")
    if coloring is None:
        coloring = bicolor(disk)
    colors = coloring.colors
    if prime_order is None:
        prime_order = [s for m in surgery.square_maps for s in m]
    diag_color = colors[plan.diagonal.squares[0]]
    if any(colors[s] != diag_color for s in plan.diagonal.squares):
        raise AssertionError("diagonal squares are not monochromatic")
    if any(colors[s] == diag_color for s in plan.left_squares):
        raise AssertionError("left squares share the diagonal color")

    k, kp = plan.k, plan.k_prime
    prime_rows = [s for s in prime_order if colors[s] == diag_color]
    prime_cols = [s for s in prime_order if colors[s] != diag_color]
    rows = list(plan.diagonal.squares) + prime_rows
    cols = list(plan.left_squares) + prime_cols
    A = _adjacency(disk, rows, cols)
    B11, B12 = A[:k, :kp], A[:k, kp:]
    B21, B22 = A[k:, :kp], A[k:, kp:]

    if not np.array_equal(B11, _bidiagonal(k, kp)):
        raise FactorizationError(f"B11 is not lower bidiagonal:\n{B11}")
    S_rows = np.array([-1 if plan.sides.get(s) == RIGHT else 1 for s in prime_rows], dtype=INT)
    S_cols = np.array([-1 if plan.sides.get(s) == RIGHT else 1 for s in prime_cols], dtype=INT)
    col_pos = {s: j for j, s in enumerate(prime_cols)}
    columns = tuple(col_pos[s] for s in plan.right_squares)
    N = np.zeros((kp, len(prime_cols)), dtype=INT)
    for i, j in enumerate(columns):
        N[i, j] = -1

    if verify:
        signed = A * np.concatenate([np.ones(k, INT), S_rows])[:, None] * np.concatenate([np.ones(kp, INT), S_cols])[None, :]
        expected = _assemble(B11, -B12, B21, B22)
        if not np.array_equal(signed, expected):
            raise FactorizationError("sign pattern S_b B S_w does not isolate the right region")
        if not np.array_equal(B11 @ N, -B12):
            raise FactorizationError("B11 N = -B12 fails")

    B_prime = B22 - B21 @ N
    if verify:
        glued = _glued_adjacency(surgery, prime_rows, prime_cols)
        if not np.array_equal(B_prime, glued):
            raise FactorizationError("B22 - B21 N differs from the adjacency of the glued disk")

    pad = identity_nm(kp, k)
    L_tilde = B11 @ pad
    L_step = L_tilde.copy()
    if kp < k:
        L_step[k - 1, k - 1] = 1
        if verify and not np.array_equal(L_tilde @ identity_nm(k, kp), L_step @ identity_nm(k, kp)):
            raise FactorizationError("(k, k) replacement changed L I")
    X = S_rows[:, None] * (B21 @ pad)
    Y = N * S_cols[None, :]
    bp, wp = len(prime_rows), len(prime_cols)
    lower = _assemble(L_step, np.zeros((k, bp), INT), X, np.diag(S_rows).astype(INT).reshape(bp, bp))
    center = _assemble(identity_nm(k, kp), np.zeros((k, wp), INT), np.zeros((bp, kp), INT), B_prime)
    upper = _assemble(np.eye(kp, dtype=INT), Y, np.zeros((wp, kp), INT), np.diag(S_cols).astype(INT).reshape(wp, wp))
    if verify and not np.array_equal(lower @ center @ upper, A):
        raise FactorizationError("step factors do not reproduce B")

    return StepFactors(
        transposed=not diag_color,
        row_order=tuple(rows),
        col_order=tuple(cols),
        B11=B11,
        B12=B12,
        B21=B21,
        B22=B22,
        S_rows=S_rows,
        S_cols=S_cols,
        N=N,
        columns=columns,
        L_step=L_step,
        X=X,
        Y=Y,
        B_prime=B_prime,
        lower=lower,
        center=center,
        upper=upper,
    )


# -- recursion ---------------------------------------------------------------------


class _Factors(NamedTuple):
    black: list  # square indices, factor row order
    white: list
    L: np.ndarray
    D: np.ndarray
    U: np.ndarray


_CACHE: OrderedDict = OrderedDict()
CACHE_SIZE = 50_000


def clear_cache() -> None:
    _CACHE.clear()


def _cache_key(disk: QuadDisk, colors: Sequence[bool], verify: bool):
    # the recursion only sees vertex ids through their relative order and
    # lattice offsets, so translated copies of a board share one entry
    cells = disk.lattice_cells()
    if cells is None:
        sq = disk.squares
    else:
        mx = min(c[0] for c in cells)
        my = min(c[1] for c in cells)
        sq = tuple(tuple((x - mx, y - my) for x, y in q) for q in disk.squares)
    return sq, tuple(colors), verify


def _factor(disk: QuadDisk, colors: Sequence[bool], verify: bool) -> _Factors:
    key = _cache_key(disk, colors, verify)
    hit = _CACHE.get(key)
    if hit is not None:
        _CACHE.move_to_end(key)
        return hit
    fac = _factor_uncached(disk, colors, verify)
    for a in (fac.L, fac.D, fac.U):
        a.flags.writeable = False
    _CACHE[key] = fac
    if len(_CACHE) > CACHE_SIZE:
        _CACHE.popitem(last=False)
    return fac


def _factor_uncached(disk: QuadDisk, colors: Sequence[bool], verify: bool) -> _Factors:
    dev = develop(disk)
    diagonal = select_diagonal(disk, is_board(disk, dev), dev)
    plan = plan_surgery(disk, diagonal)
    surgery = cut_and_paste(disk, plan)

    prime_black: list = []
    prime_white: list = []
    Ls, Ds, Us = [], [], []
    for comp, m in zip(surgery.components, surgery.square_maps):
        sub = _factor(comp, [colors[o] for o in m], verify)
        prime_black += [m[i] for i in sub.black]
        prime_white += [m[i] for i in sub.white]
        Ls.append(sub.L)
        Ds.append(sub.D)
        Us.append(sub.U)

    diag_black = colors[plan.diagonal.squares[0]]
    prime_order = prime_black + prime_white if diag_black else prime_white + prime_black
    step = step_factor(disk, None, surgery, coloring_from(colors), prime_order, verify)
    lower, center, upper = step.black_white()
    removed_black = [s for s in plan.removed if colors[s]]
    removed_white = [s for s in plan.removed if not colors[s]]
    nb, nw = len(removed_black), len(removed_white)

    Lp, Dp, Up = block_diag(*Ls), block_diag(*Ds), block_diag(*Us)
    L = lower @ block_diag(np.eye(nb, dtype=INT), Lp)
    D = block_diag(identity_nm(nb, nw), Dp)
    U = block_diag(np.eye(nw, dtype=INT), Up) @ upper
    return _Factors(removed_black + prime_black, removed_white + prime_white, L, D, U)


def ldu(disk: QuadDisk, coloring: Bicoloring | None = None, verify: bool = True) -> LDUFactorization:
    """Factor the black-to-white matrix with all entries in {-1, 0, 1}.

    Permutations refer to the labels of ``coloring`` (default
    :func:`bicolor`). With ``verify`` every step identity and the final
    product are checked exactly.
    """
    if coloring is None:
        coloring = bicolor(disk)
    fac = _factor(disk, coloring.colors, verify)
    bl = coloring.black_label()
    wl = coloring.white_label()
    f = LDUFactorization(
        tuple(bl[s] for s in fac.black),
        tuple(wl[s] for s in fac.white),
        fac.L.copy(),
        fac.D.copy(),
        fac.U.copy(),
    )
    if verify:
        verdict = verify_factorization(black_to_white_matrix(disk, coloring), f)
        if not verdict:
            raise FactorizationError(f"factorization check failed: {verdict.reason}")
    return f
