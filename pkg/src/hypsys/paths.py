"""The named path families used throughout: the minimal symmetric path
from each central-loop start and its one-loop variants."""

from __future__ import annotations

from .closed_forms import index_bounds
from .errors import InvalidSizeError
from .matrices import RauzyPath
from .permutations import LabeledPermutation, MoveKind, central_permutation, rauzy_move


def central_loop_start(n: int, k: int) -> LabeledPermutation:
    """The vertex central.t^k."""
    p = central_permutation(n)
    for _ in range(k):
        p, _, _ = rauzy_move(p, MoveKind.RIGHT_T)
    return p


def minimal_path(n: int, k: int) -> RauzyPath:
    """The shortest path from central.t^k to its symmetric that starts
    with a b move: the full secondary loop followed by the central-loop
    run, word b^(n-1-k) t^(n-1-2k)."""
    kmax, _ = index_bounds(n)
    if not 1 <= k <= kmax:
        raise InvalidSizeError(f"k must be in 1..{kmax}, got {k}")
    word = "b" * (n - 1 - k) + "t" * (n - 1 - 2 * k)
    return RauzyPath.from_word(central_loop_start(n, k), word)


def loop_path(n: int, k: int, l: int) -> RauzyPath:
    """The minimal path with one extra closed loop, indexed by l.

    Small l re-runs a t loop inside the secondary loop; large l re-runs a
    b loop further along the central loop.
    """
    kmax, _ = index_bounds(n)
    if not 1 <= k <= kmax:
        raise InvalidSizeError(f"k must be in 1..{kmax}, got {k}")
    lmax = 2 * n - 2 - 3 * k
    if not 1 <= l <= lmax:
        raise InvalidSizeError(f"l must be in 1..{lmax}, got {l}")
    if l <= n - 2 - k:
        word = (
            "b" * l
            + "t" * (n - 1 - k - l)
            + "b" * (n - 1 - k - l)
            + "t" * (n - 1 - 2 * k)
        )
    else:
        word = (
            "b" * (n - 1 - k)
            + "t" * (l - (n - 1 - k))
            + "b" * (2 * (n - 1 - k) - l)
            + "t" * (2 * n - 2 - 3 * k - l)
        )
    return RauzyPath.from_word(central_loop_start(n, k), word)
