"""Closed-form Rauzy path matrices in the residue labeling.

These constructors rebuild, entry by entry, the matrices of the minimal
paths and their one-loop variants in a labeling adapted to arithmetic
modulo n - 1.  They are conjugate to the path-built matrices, so all
cross-checks are done at the characteristic polynomial level.
"""

from __future__ import annotations

from math import gcd

from .errors import InvalidSizeError, MustReduceError
from .matrices import TransitionMatrix


def index_bounds(n: int) -> tuple[int, int]:
    """The pair (K, L): the largest admissible loop start and its complement."""
    if n < 4:
        raise InvalidSizeError(f"need n >= 4, got {n}")
    k = n // 2 - 1
    return k, n - 2 - k


def base_matrix(n: int, k: int) -> TransitionMatrix:
    """Matrix of the minimal path from central.t^k, gcd(n-1, k) = 1 only.

    First and last rows carry the residue pattern; the interior is a
    shifted identity plus a return edge.
    """
    kmax, _ = index_bounds(n)
    if not 1 <= k <= kmax:
        raise InvalidSizeError(f"k must be in 1..{kmax}, got {k}")
    d = gcd(n - 1, k)
    if d != 1:
        raise MustReduceError(n, k, (n - 1) // d + 1, k // d)
    kinv = pow(k, -1, n - 1)
    # alpha[i] solves alpha * k == i - 1 modulo n - 1, values in 1..n-1.
    alpha = [0] * n
    for i in range(1, n):
        alpha[i] = ((i - 1) * kinv - 1) % (n - 1) + 1
    a = [0] * n
    for j in range(k + 2, n - k):
        a[alpha[j]] = 2
    for j in range(n - k, n):
        a[alpha[j]] = 1
    for j in range(1, k + 1):
        a[alpha[j]] = 0
    a[1] = 2
    b = [0] * n
    for label in range(1, n):
        b[label] = 1 if a[label] == 2 else 0
    b[1] = 1

    rows = [[0] * n for _ in range(n)]
    rows[0][0] = a[n - 1]
    for j in range(2, n):
        rows[0][j - 1] = a[j - 1]
    rows[0][n - 1] = 1
    for i in range(2, n - 1):
        rows[i - 1][i] = 1
    rows[n - 2][0] = 1
    rows[n - 1][0] = b[n - 1]
    for j in range(2, n):
        rows[n - 1][j - 1] = b[j - 1]
    rows[n - 1][n - 1] = 1
    return TransitionMatrix.from_rows(rows)


def loop_increment_even(n: int, l: int) -> TransitionMatrix:
    """The nonnegative increment added to the minimal-path matrix when a
    loop of index l is inserted (n even, 1 <= l <= L)."""
    kmax, lmax = index_bounds(n)
    if n % 2:
        raise InvalidSizeError(f"need n even, got {n}")
    if not 1 <= l <= lmax:
        raise InvalidSizeError(f"l must be in 1..{lmax}, got {l}")
    rows = [[0] * n for _ in range(n)]
    r = 2 * l - 1
    rows[r][1] = 1
    rows[r][2 * l] = 1
    for j in range(l, kmax):
        rows[r][2 * j + 2] = 2
    return TransitionMatrix.from_rows(rows)


def loop_matrix_even(n: int, l: int) -> TransitionMatrix:
    """Closed form of the one-loop path matrix for even n, 1 <= l <= L."""
    base = base_matrix(n, n // 2 - 1)
    inc = loop_increment_even(n, l)
    return TransitionMatrix.from_rows(
        [
            [x + y for x, y in zip(br, ir)]
            for br, ir in zip(base.rows, inc.rows)
        ]
    )


def outer_loop_increment_even(n: int) -> TransitionMatrix:
    """Increment for the loop index L + 2 (even n): rows 1 and n - 2 gain
    a 1 in every odd column from 3 on and in the last column."""
    kmax, _ = index_bounds(n)
    if n % 2:
        raise InvalidSizeError(f"need n even, got {n}")
    rows = [[0] * n for _ in range(n)]
    for j in range(1, kmax):
        rows[0][2 * j] = 1
        rows[n - 3][2 * j] = 1
    rows[0][n - 1] = 1
    rows[n - 3][n - 1] = 1
    return TransitionMatrix.from_rows(rows)


def outer_loop_matrix_even(n: int) -> TransitionMatrix:
    base = base_matrix(n, n // 2 - 1)
    inc = outer_loop_increment_even(n)
    return TransitionMatrix.from_rows(
        [
            [x + y for x, y in zip(br, ir)]
            for br, ir in zip(base.rows, inc.rows)
        ]
    )


def skeleton_matrix_odd(n: int) -> TransitionMatrix:
    """The loop-free block skeleton shared by all one-loop matrices when
    n is 3 modulo 4."""
    if n % 4 != 3:
        raise InvalidSizeError(f"need n = 3 mod 4, got {n}")
    kmax, _ = index_bounds(n)
    m = kmax + 1
    rows = [[0] * n for _ in range(n)]
    for i in range(1, kmax + 1):
        rows[i - 1][kmax + i - 1] = 1
    for j in range(1, kmax + 1):
        rows[m - 1][j - 1] = 1
    rows[m - 1][n - 3] = 2
    rows[m - 1][n - 2] = 2
    rows[m - 1][n - 1] = 1
    rows[m][n - 2] = 1
    for i in range(1, kmax + 1):
        rows[kmax + 1 + i][i - 1] = 1
    rows[n - 1][n - 3] = 1
    rows[n - 1][n - 2] = 1
    rows[n - 1][n - 1] = 1
    return TransitionMatrix.from_rows(rows)


def loop_matrix_odd(n: int, l: int) -> TransitionMatrix:
    """Closed form of the one-loop path matrix for n = 3 mod 4, l odd.

    Row n - l of the skeleton is replaced outright by the loop pattern:
    2 in every column up to m - l, 1 in column n - 2, 2 in column n - 1.
    """
    kmax, lmax = index_bounds(n)
    if n % 4 != 3:
        raise InvalidSizeError(f"need n = 3 mod 4, got {n}")
    if not 1 <= l <= lmax or l % 2 == 0:
        raise InvalidSizeError(f"l must be odd in 1..{lmax}, got {l}")
    m = kmax + 1
    rows = [list(r) for r in skeleton_matrix_odd(n).rows]
    r = n - l - 1
    rows[r] = [0] * n
    for i in range(1, m - l + 1):
        rows[r][i - 1] = 2
    rows[r][n - 3] = 1
    rows[r][n - 2] = 2
    return TransitionMatrix.from_rows(rows)


def outer_loop_matrix_odd(n: int) -> TransitionMatrix:
    """The displayed block matrix at loop index L + 2 (n = 3 mod 4)."""
    if n % 4 != 3:
        raise InvalidSizeError(f"need n = 3 mod 4, got {n}")
    kmax, _ = index_bounds(n)
    rows = [[0] * n for _ in range(n)]
    for i in range(1, kmax + 1):
        rows[i - 1][kmax + i - 1] = 1
    r = kmax
    for j in range(1, kmax + 1):
        rows[r][j - 1] = 2
    rows[r][n - 3] = 2
    rows[r][n - 2] = 3
    rows[r][n - 1] = 2
    r = kmax + 1
    for j in range(1, kmax + 1):
        rows[r][j - 1] = 1
    rows[r][n - 2] = 2
    rows[r][n - 1] = 1
    for i in range(1, kmax + 1):
        rows[kmax + 1 + i][i - 1] = 1
    rows[n - 1][n - 3] = 1
    rows[n - 1][n - 2] = 1
    rows[n - 1][n - 1] = 1
    return TransitionMatrix.from_rows(rows)
