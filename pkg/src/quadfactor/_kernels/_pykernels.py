"""Pure-Python kernels; the reference semantics for the compiled module.

Arguments are 2-D integer arrays (anything indexable as rows of ints).
Arithmetic uses Python ints, so nothing here can overflow.
"""


def _rows(A):
    return [[int(x) for x in row] for row in A]


def det_bareiss(A):
    """Determinant by fraction-free elimination."""
    M = _rows(A)
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - a * rk[j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1] if n else 1


def rank_bareiss(A, ncols=None):
    """Rank over the rationals by fraction-free elimination."""
    M = _rows(A)
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    prev = 1
    for c in range(cols):
        p = next((i for i in range(r, rows) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        rr = M[r]
        for i in range(r + 1, rows):
            ri = M[i]
            a = ri[c]
            for j in range(c + 1, cols):
                ri[j] = (ri[j] * pv - a * rr[j]) // prev
            ri[c] = 0
        prev = pv
        r += 1
        if r == rows:
            break
    return r


def rank_mod_p(A, p):
    """Rank over GF(p)."""
    M = [[x % p for x in row] for row in _rows(A)]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], p - 2, p)
        rr = [(x * inv) % p for x in M[r]]
        M[r] = rr
        for i in range(rows):
            if i != r and M[i][c]:
                a = M[i][c]
                ri = M[i]
                for j in range(c, cols):
                    ri[j] = (ri[j] - a * rr[j]) % p
        r += 1
        if r == rows:
            break
    return r


def signed_matchings(A):
    """Sum over permutations s with nonzero support of sgn(s) * prod A[i, s(i)]."""
    M = _rows(A)
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("signed matchings need a square matrix")
    support = [[j for j in range(n) if M[i][j]] for i in range(n)]
    used = [False] * n
    total = 0

    def walk(i, inversions, weight):
        nonlocal total
        if i == n:
            total += -weight if inversions & 1 else weight
            return
        for j in support[i]:
            if not used[j]:
                above = sum(used[j + 1 :])
                used[j] = True
                walk(i + 1, inversions + above, weight * M[i][j])
                used[j] = False

    walk(0, 0, 1)
    return total
