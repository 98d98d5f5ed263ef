"""Exception hierarchy for hypsys.

Every domain error derives from :class:`HypsysError` and carries an exit
code so the command line front end can map failures to distinct process
statuses (see ``hypsys.cli``).
"""

from __future__ import annotations


class HypsysError(Exception):
    """Base class for all domain errors raised by this package."""

    exit_code = 4


class InvalidSizeError(HypsysError):
    """Alphabet size outside the supported range (n >= 2)."""


class InvalidPermutationError(HypsysError):
    """Rows are not both permutations of {1..n}."""


class UndefinedMoveError(HypsysError):
    """Rauzy move requested on a degenerate permutation (winner == loser)."""


class MembershipError(HypsysError):
    """Permutation does not belong to the requested Rauzy diagram."""


class InvalidTransvectionError(HypsysError):
    """Elementary matrix requested with winner == loser."""


class NotACandidatePathError(HypsysError):
    """Path end matches neither its start nor the symmetric of its start."""


class NotARomeError(HypsysError):
    """The given vertex set misses a cycle of the matrix support graph."""


class MustReduceError(HypsysError):
    """Family polynomial requested at a reducible index pair.

    Carries the reduced parameters ``(n2, k2)`` at which the same largest
    root is realised by a primitive matrix.
    """

    def __init__(self, n: int, k: int, n2: int, k2: int):
        super().__init__(
            f"gcd(n-1, k) > 1 for (n, k) = ({n}, {k}); "
            f"reduce to (n', k') = ({n2}, {k2})"
        )
        self.n2 = n2
        self.k2 = k2


class ReducibleCaseError(HypsysError):
    """Loop-family polynomial requested at an even loop index.

    The matrix is reducible there; the root is realised at the reduced
    parameters ``(n2, l2)``.
    """

    def __init__(self, n: int, l: int, n2: int, l2: int):
        super().__init__(
            f"loop index l = {l} is even for n = {n}; "
            f"reduce to (n', l') = ({n2}, {l2})"
        )
        self.n2 = n2
        self.l2 = l2


class OutOfRangeError(HypsysError):
    """Operation requested outside its proven range of validity."""


class NoDominantRootError(HypsysError):
    """Polynomial has no real root greater than one."""


class NotPrimitiveError(HypsysError):
    """Operation requires a primitive nonnegative matrix."""


class AmbiguousComparisonError(HypsysError):
    """Two interval lengths are exactly equal; the induction type is undefined."""


class NotPureError(HypsysError):
    """Path visits the central permutation, so it is not pure."""


class BudgetError(HypsysError):
    """An iteration or time budget was exhausted before completion."""


class UnsupportedSizeError(HypsysError):
    """Operation needs the full Rauzy diagram and n is too large to build it."""


class ConstructionViolationError(HypsysError):
    """Neither sign of the contracting eigenvector is a weak suspension datum.

    This contradicts the symmetric construction and signals a bug rather
    than bad input.
    """

    exit_code = 5


class InternalInconsistencyError(HypsysError):
    """Two independent computations of the same quantity disagree."""

    exit_code = 5
