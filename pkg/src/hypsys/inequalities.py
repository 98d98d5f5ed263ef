"""Verification suite for the root-comparison inequalities.

Every comparison used to pin down the extremal dilatations is re-checked
here numerically but exactly: each instance compares two certified root
enclosures (or an integer column-sum bound) and reports pass/fail.  A
failure is report content, never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .closed_forms import (
    index_bounds,
    loop_matrix_odd,
    outer_loop_matrix_even,
    outer_loop_matrix_odd,
)
from .errors import InvalidSizeError
from .families import (
    loop_polynomial_even,
    loop_polynomial_odd,
    minimal_path_polynomial,
    second_minimum_polynomial,
)
from .matrices import charpoly_exact, path_matrix
from .paths import loop_path
from .polynomials import (
    IntPolynomial,
    Ordering,
    RootEnclosure,
    compare_roots,
    perron_root,
)

_WIDTH = Fraction(1, 10**30)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    instance: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.suite}: {self.instance}{tail}"


@dataclass
class Report:
    results: list[CheckResult]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]


class _RootCache:
    def __init__(self):
        self._cache: dict = {}

    def base(self, n: int, k: int) -> RootEnclosure:
        """Largest root for the minimal path at (n, k); reducible indices
        are routed through their reduced parameters."""
        d = gcd(n - 1, k)
        n2, k2 = (n - 1) // d + 1, k // d
        key = ("base", n2, k2)
        if key not in self._cache:
            self._cache[key] = perron_root(minimal_path_polynomial(n2, k2), _WIDTH)
        return self._cache[key]

    def loop_even(self, n: int, l: int) -> RootEnclosure:
        _, lmax = index_bounds(n)
        if l <= lmax:
            key = ("loop-even", n, l)
            if key not in self._cache:
                self._cache[key] = perron_root(loop_polynomial_even(n, l), _WIDTH)
            return self._cache[key]
        key = ("loop-even-big", n, l)
        if key not in self._cache:
            kmax = n // 2 - 1
            cp = charpoly_exact(path_matrix(loop_path(n, kmax, l)))
            self._cache[key] = perron_root(cp, _WIDTH)
        return self._cache[key]

    def loop_odd(self, n: int, l: int) -> RootEnclosure:
        if l % 2 == 0:
            return self.loop_even((n + 1) // 2, l // 2)
        _, lmax = index_bounds(n)
        key = ("loop-odd", n, l)
        if key not in self._cache:
            if l <= lmax:
                self._cache[key] = perron_root(loop_polynomial_odd(n, l), _WIDTH)
            else:
                kmax = (n - 3) // 2
                cp = charpoly_exact(path_matrix(loop_path(n, kmax, l)))
                self._cache[key] = perron_root(cp, _WIDTH)
        return self._cache[key]


def _root_of(poly_coeffs: tuple[int, ...]) -> RootEnclosure:
    return perron_root(IntPolynomial(poly_coeffs), _WIDTH)


_ROOT_TWO = ("radical", (-2, 0, 1))  # X^2 - 2
_TWO = ("radical", (-2, 1))  # X - 2
_ROOT_THREE = ("radical", (-3, 0, 1))  # X^2 - 3
_FOURTH_ROOT_SIX = ("radical", (-6, 0, 0, 0, 1))  # X^4 - 6


def _check_greater(results, suite, name, a: RootEnclosure, b: RootEnclosure):
    verdict = compare_roots(a, b)
    results.append(
        CheckResult(
            suite,
            name,
            verdict is Ordering.GREATER,
            f"compare says {verdict.name}",
        )
    )


def verify_inequalities(n_max: int = 30) -> Report:
    """Run every root comparison on all instances up to ``n_max``."""
    if n_max < 7:
        raise InvalidSizeError(f"need n_max >= 7, got {n_max}")
    cache = _RootCache()
    results: list[CheckResult] = []

    # Three decreasing sequences of extremal roots.
    suite = "decreasing"
    evens = [n for n in range(4, n_max + 1) if n % 2 == 0]
    for a, b in zip(evens, evens[1:]):
        _check_greater(
            results, suite, f"even minima: theta({a}) > theta({b})",
            cache.base(a, a // 2 - 1), cache.base(b, b // 2 - 1),
        )
    ones = [n for n in range(5, n_max + 1) if n % 4 == 1]
    for a, b in zip(ones, ones[1:]):
        _check_greater(
            results, suite, f"1 mod 4 minima: theta({a}) > theta({b})",
            cache.base(a, index_bounds(a)[0]), cache.base(b, index_bounds(b)[0]),
        )
    threes = [n for n in range(7, n_max + 1) if n % 4 == 3]
    for a, b in zip(threes, threes[1:]):
        _check_greater(
            results, suite, f"3 mod 4 minima: theta({a}) > theta({b})",
            cache.loop_odd(a, index_bounds(a)[1]),
            cache.loop_odd(b, index_bounds(b)[1]),
        )

    # Larger loop start wins for coprime indices.
    suite = "compare-start"
    for n in range(4, n_max + 1):
        kmax, _ = index_bounds(n)
        coprime = [k for k in range(1, kmax + 1) if gcd(n - 1, k) == 1]
        for i, k in enumerate(coprime):
            for k2 in coprime[i + 1 :]:
                _check_greater(
                    results, suite, f"theta({n},{k}) > theta({n},{k2})",
                    cache.base(n, k), cache.base(n, k2),
                )

    # Column-sum bounds for the out-of-range loop indices.
    suite = "column-bounds"
    for n in [x for x in range(7, n_max + 1) if x % 4 == 3]:
        m = outer_loop_matrix_odd(n)
        delta = (m @ m).min_column_sum()
        # The spectral radius strictly exceeds the minimum column sum for
        # a primitive matrix, so delta = 4 already forces the root above 2
        # (the computed value is exactly 4, not greater).
        results.append(
            CheckResult(
                suite,
                f"min column sum of the squared outer loop matrix (n={n}) >= 4",
                delta >= 4,
                f"delta = {delta}",
            )
        )
        _, lmax = index_bounds(n)
        _check_greater(
            results, suite, f"theta({n},K,L+2) > 2",
            cache.loop_odd(n, lmax + 2), _root_of((-2, 1)),
        )
    for n in [x for x in range(4, n_max + 1) if x % 2 == 0]:
        _, lmax = index_bounds(n)
        _check_greater(
            results, suite, f"theta({n},K,L+1) > sqrt(3)",
            cache.loop_even(n, lmax + 1), _root_of((-3, 0, 1)),
        )
    for n in [x for x in range(6, n_max + 1) if x % 2 == 0]:
        m = outer_loop_matrix_even(n)
        m4 = (m @ m) @ (m @ m)
        delta = m4.min_column_sum()
        results.append(
            CheckResult(
                suite,
                f"min column sum of the fourth power of the outer loop matrix (n={n}) = 6",
                delta == 6,
                f"delta = {delta}",
            )
        )
        _, lmax = index_bounds(n)
        _check_greater(
            results, suite, f"theta({n},K,L+2) > 6^(1/4)",
            cache.loop_even(n, lmax + 2), _root_of((-6, 0, 0, 0, 1)),
        )

    # Smaller odd loop index wins (3 mod 4).
    suite = "loop-odd-order"
    for n in [x for x in range(7, n_max + 1) if x % 4 == 3]:
        _, lmax = index_bounds(n)
        odd = list(range(1, lmax + 1, 2))
        for i, l in enumerate(odd):
            for l2 in odd[i + 1 :]:
                _check_greater(
                    results, suite, f"theta({n},K,{l}) > theta({n},K,{l2})",
                    cache.loop_odd(n, l), cache.loop_odd(n, l2),
                )

    # Smaller loop index wins (even sizes).
    suite = "loop-even-order"
    for n in [x for x in range(4, n_max + 1) if x % 2 == 0]:
        _, lmax = index_bounds(n)
        for l in range(1, lmax + 1):
            for l2 in range(l + 1, lmax + 1):
                _check_greater(
                    results, suite, f"theta({n},K,{l}) > theta({n},K,{l2})",
                    cache.loop_even(n, l), cache.loop_even(n, l2),
                )

    # Halved size beats the odd extremal value (3 mod 4).
    suite = "halving"
    for n in [x for x in range(7, n_max + 1) if x % 4 == 3]:
        _, lmax = index_bounds(n)
        n2 = (n + 1) // 2
        _, lmax2 = index_bounds(n2)
        target = cache.loop_odd(n, lmax)
        _check_greater(
            results, suite, f"theta({n2},K,L) > theta({n},K,L)",
            cache.loop_even(n2, lmax2), target,
        )
        _check_greater(
            results, suite, f"theta({n2},K,L+2) > theta({n},K,L)",
            cache.loop_even(n2, lmax2 + 2), target,
        )
        kmax, _ = index_bounds(n)
        for k in range(1, kmax):
            d = gcd(n - 1, k)
            _check_greater(
                results, suite,
                f"theta({(n - 1) // d + 1},{k // d}) > theta({n},K,L)  [from k={k}]",
                cache.base(n, k), target,
            )

    # Everything beats the second minimum except the minimum itself.
    suite = "second-minimum"
    for n in [x for x in range(18, n_max + 1) if x % 2 == 0 and x % 6 != 4]:
        kmax, lmax = index_bounds(n)
        results.append(
            CheckResult(
                suite,
                f"gcd(n-1, K-1) = 1 at n={n}",
                gcd(n - 1, kmax - 1) == 1,
            )
        )
        second = perron_root(second_minimum_polynomial(n), _WIDTH)
        for k in range(1, kmax - 1):
            _check_greater(
                results, suite, f"theta({n},{k}) > theta({n},K-1)",
                cache.base(n, k), second,
            )
        for l in range(1, lmax + 1):
            _check_greater(
                results, suite, f"theta({n},K,{l}) > theta({n},K-1)",
                cache.loop_even(n, l), second,
            )
        _check_greater(
            results, suite, f"theta({n},K,L+1) > theta({n},K-1)",
            cache.loop_even(n, lmax + 1), second,
        )
        _check_greater(
            results, suite, f"theta({n},K,L+2) > theta({n},K-1)",
            cache.loop_even(n, lmax + 2), second,
        )

    # Reduced starts beat the 1 mod 4 minimum.
    suite = "one-mod-four"
    for n in [x for x in range(5, n_max + 1) if x % 4 == 1]:
        kmax, _ = index_bounds(n)
        target = cache.base(n, kmax)
        for k in range(1, kmax):
            d = gcd(n - 1, k)
            _check_greater(
                results, suite,
                f"theta({(n - 1) // d + 1},{k // d}) > theta({n},K)  [from k={k}]",
                cache.base(n, k), target,
            )

    return Report(results)
