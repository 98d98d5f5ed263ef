"""Closed-form polynomial families attached to the minimal paths.

Conventions: the polynomial attached to a path is the characteristic
polynomial of its matrix multiplied by X + 1, which makes every family
below reciprocal or anti-reciprocal and keeps the displays sparse.  The
largest real root is unchanged by the extra factor.
"""

from __future__ import annotations

from math import ceil, floor, gcd

from .closed_forms import index_bounds
from .errors import InvalidSizeError, MustReduceError, OutOfRangeError, ReducibleCaseError
from .polynomials import IntPolynomial


def _poly(terms) -> IntPolynomial:
    """Build a polynomial from (exponent, coefficient) pairs, accumulating
    repeated exponents (dict literals would silently drop them)."""
    pairs = list(terms.items()) if isinstance(terms, dict) else list(terms)
    if not pairs:
        return IntPolynomial(())
    out = [0] * (max(e for e, _ in pairs) + 1)
    for e, c in pairs:
        out[e] += c
    return IntPolynomial(out)


def excluded_exponents(n: int, k: int) -> set[int]:
    """Exponents knocked out of the middle block for the (n, k) family."""
    out = set()
    for i in range(1, k):
        base = -((-i * (n - 1)) // k)  # ceil(i (n-1) / k)
        out.add(base)
        out.add(base + 1)
    return out


def middle_exponents(n: int, k: int) -> set[int]:
    """The surviving middle exponents; symmetric under e -> n + 1 - e."""
    return set(range(3, n - 1)) - excluded_exponents(n, k)


def minimal_path_polynomial(n: int, k: int) -> IntPolynomial:
    """(X + 1) times the characteristic polynomial of the minimal path
    matrix started at central.t^k; requires gcd(n - 1, k) = 1.

    At a reducible index the same root lives at the reduced parameters,
    which the raised error carries.
    """
    kmax, _ = index_bounds(n)
    if not 1 <= k <= kmax:
        raise InvalidSizeError(f"k must be in 1..{kmax}, got {k}")
    d = gcd(n - 1, k)
    if d != 1:
        raise MustReduceError(n, k, (n - 1) // d + 1, k // d)
    terms = {n + 1: 1, n - 1: -2, 2: -2, 0: 1}
    for e in middle_exponents(n, k):
        terms[e] = terms.get(e, 0) - 2
    return _poly(terms)


def loop_polynomial_even(n: int, l: int) -> IntPolynomial:
    """(X + 1) times the characteristic polynomial of the one-loop path
    matrix, even n, 1 <= l <= L.

    Evaluated from the exact rational expression; the division must be
    remainder-free, anything else means the formula was misapplied.
    """
    if n % 2 or n < 4:
        raise InvalidSizeError(f"need even n >= 4, got {n}")
    _, lmax = index_bounds(n)
    if not 1 <= l <= lmax:
        raise InvalidSizeError(f"l must be in 1..{lmax}, got {l}")
    base = minimal_path_polynomial(n, n // 2 - 1)
    numerator = _poly(
        [
            (n - 2 * l + 2, 1),
            (n - 2 * l + 4, 1),
            (n - 1, 2),
            (2 * l + 1, -1),
            (2 * l - 1, -1),
            (4, -2),
        ]
    )
    correction = numerator.div_exact(_poly({2: 1, 0: -1}))
    return base - correction


def loop_polynomial_odd(n: int, l: int) -> IntPolynomial:
    """(X + 1) times the characteristic polynomial of the one-loop path
    matrix, n = 3 mod 4, odd l with 1 <= l <= L.

    Even l is the reducible case; the raised error carries the reduced
    parameters (n', l') = ((n + 1)/2, l/2).
    """
    if n % 4 != 3 or n < 7:
        raise InvalidSizeError(f"need n = 3 mod 4, n >= 7, got {n}")
    _, lmax = index_bounds(n)
    if not 1 <= l <= lmax:
        raise InvalidSizeError(f"l must be in 1..{lmax}, got {l}")
    if l % 2 == 0:
        raise ReducibleCaseError(n, l, (n + 1) // 2, l // 2)
    m = (n - 1) // 2
    core = _poly(
        [
            (0, 1),
            (2, -3),
            (m, -2),
            (m + 2, 8),
            (m + 4, -2),
            (n + 1, -3),
            (n + 3, 1),
        ]
    )
    extra = _poly(
        [
            ((n + 7) // 2 - l, 2),
            (l + m, 2),
            (l, -2),
            (n + 3 - l, -2),
        ]
    )
    return (core + extra).div_exact(_poly({2: 1, 0: -1}))


def systole_polynomial(n: int) -> IntPolynomial:
    """Defining polynomial of the least dilatation for alphabet size n."""
    if n < 4:
        raise InvalidSizeError(f"need n >= 4, got {n}")
    if n % 2 == 0:
        return _poly({n + 1: 1, n - 1: -2, 2: -2, 0: 1})
    if n % 4 == 1:
        return _poly({n + 1: 1, n - 1: -2, (n + 1) // 2: -2, 2: -2, 0: 1})
    m = (n - 1) // 2
    return _poly({n + 1: 1, n - 1: -2, m + 2: -4, m: 4, 2: 2, 0: -1})


def second_minimum_polynomial(n: int) -> IntPolynomial:
    """Defining polynomial of the second least dilatation.

    Proven only for even n >= 18 with n != 4 mod 6; anything else is
    reported as out of range rather than extrapolated.
    """
    if n < 18 or n % 2 or n % 6 == 4:
        raise OutOfRangeError(
            "second minimum is only established for even n >= 18 "
            f"with n != 4 mod 6; got {n}"
        )
    return _poly(
        {
            n + 1: 1,
            n - 1: -2,
            ceil(2 * n / 3): -2,
            floor(n / 3) + 1: -2,
            2: -2,
            0: 1,
        }
    )
