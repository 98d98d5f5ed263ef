from math import gcd

import pytest

from hypsys.closed_forms import index_bounds
from hypsys.errors import (
    InvalidSizeError,
    MustReduceError,
    OutOfRangeError,
    ReducibleCaseError,
)
from hypsys.families import (
    loop_polynomial_even,
    loop_polynomial_odd,
    middle_exponents,
    minimal_path_polynomial,
    second_minimum_polynomial,
    systole_polynomial,
)
from hypsys.polynomials import IntPolynomial


def poly_from_terms(terms):
    out = [0] * (max(terms) + 1)
    for e, c in terms.items():
        out[e] += c
    return IntPolynomial(out)


def long_division(num: IntPolynomial, den: IntPolynomial) -> IntPolynomial:
    """Test-local long-division oracle, independent of div_exact."""
    from fractions import Fraction

    rem = [Fraction(c) for c in num.coeffs]
    d = den.degree
    quo = [Fraction(0)] * (len(rem) - d)
    while len(rem) - 1 >= d:
        f = rem[-1] / den.coeffs[-1]
        quo[len(rem) - 1 - d] = f
        for i in range(d + 1):
            rem[len(rem) - 1 - d + i] -= f * den.coeffs[i]
        assert rem[-1] == 0
        rem.pop()
    assert all(x == 0 for x in rem)
    assert all(f.denominator == 1 for f in quo)
    return IntPolynomial([int(f) for f in quo])


class TestBaseFamily:
    def test_even_extremal(self):
        assert minimal_path_polynomial(6, 2) == poly_from_terms({7: 1, 5: -2, 2: -2, 0: 1})

    def test_with_interior_terms(self):
        expect = poly_from_terms({13: 1, 11: -2, 8: -2, 5: -2, 2: -2, 0: 1})
        assert minimal_path_polynomial(12, 4) == expect

    def test_small_odd(self):
        expect = poly_from_terms({6: 1, 4: -2, 3: -2, 2: -2, 0: 1})
        assert minimal_path_polynomial(5, 1) == expect

    def test_reducible_raises_with_parameters(self):
        with pytest.raises(MustReduceError) as info:
            minimal_path_polynomial(9, 2)
        assert (info.value.n2, info.value.k2) == (5, 1)

    def test_reciprocal_and_symmetric_exponents(self):
        for n in range(4, 15):
            kmax, _ = index_bounds(n)
            for k in range(1, kmax + 1):
                if gcd(n - 1, k) != 1:
                    continue
                p = minimal_path_polynomial(n, k)
                assert p.is_reciprocal
                mids = middle_exponents(n, k)
                assert {n + 1 - e for e in mids} == mids

    def test_out_of_range(self):
        with pytest.raises(InvalidSizeError):
            minimal_path_polynomial(6, 3)


class TestLoopFamilies:
    def test_even_display_case(self):
        expect = poly_from_terms({7: 1, 5: -2, 4: -1, 3: -1, 2: -2, 0: 1})
        assert loop_polynomial_even(6, 2) == expect

    def test_even_division_oracle(self):
        # Independently divide the displayed numerator for (6, 1).
        numerator = poly_from_terms({6: 1, 8: 1, 5: 2, 4: -2, 3: -1, 1: -1})
        correction = long_division(numerator, IntPolynomial((-1, 0, 1)))
        expect = minimal_path_polynomial(6, 2) - correction
        assert loop_polynomial_even(6, 1) == expect

    def test_even_top_index_reproduces_display(self):
        for n in range(4, 21, 2):
            _, lmax = index_bounds(n)
            expect = poly_from_terms(
                {n + 1: 1, n - 1: -2, n - 3: -1, 4: -1, 2: -2, 0: 1}
            )
            assert loop_polynomial_even(n, lmax) == expect

    def test_odd_display_case(self):
        expect = poly_from_terms({8: 1, 6: -2, 5: -4, 3: 4, 2: 2, 0: -1})
        assert loop_polynomial_odd(7, 3) == expect

    def test_odd_division_oracle(self):
        # (7, 1): numerator assembled by hand, divided by the test oracle.
        m = 3
        core = poly_from_terms({0: 1, 2: -3, m: -2, m + 2: 8, m + 4: -2, 8: -3, 10: 1})
        extra = poly_from_terms({6: 2, 4: 2, 1: -2, 9: -2})
        expect = long_division(core + extra, IntPolynomial((-1, 0, 1)))
        assert loop_polynomial_odd(7, 1) == expect

    def test_odd_eleven_matches_closed_form(self):
        expect = poly_from_terms({12: 1, 10: -2, 7: -4, 5: 4, 2: 2, 0: -1})
        assert loop_polynomial_odd(11, 5) == expect

    def test_even_loop_index_reduces(self):
        with pytest.raises(ReducibleCaseError) as info:
            loop_polynomial_odd(7, 2)
        assert (info.value.n2, info.value.l2) == (4, 1)

    def test_bad_sizes(self):
        with pytest.raises(InvalidSizeError):
            loop_polynomial_even(7, 1)
        with pytest.raises(InvalidSizeError):
            loop_polynomial_odd(9, 1)


class TestExtremePolynomials:
    def test_systole_even(self):
        assert systole_polynomial(4) == poly_from_terms({5: 1, 3: -2, 2: -2, 0: 1})

    def test_systole_three_mod_four(self):
        assert systole_polynomial(7) == poly_from_terms(
            {8: 1, 6: -2, 5: -4, 3: 4, 2: 2, 0: -1}
        )

    def test_systole_one_mod_four(self):
        assert systole_polynomial(5) == poly_from_terms(
            {6: 1, 4: -2, 3: -2, 2: -2, 0: 1}
        )

    def test_systole_matches_families(self):
        for n in range(4, 21):
            kmax, lmax = index_bounds(n)
            if n % 4 == 3:
                assert systole_polynomial(n) == loop_polynomial_odd(n, lmax)
            else:
                assert systole_polynomial(n) == minimal_path_polynomial(n, kmax)

    def test_second_minimum(self):
        expect = poly_from_terms({19: 1, 17: -2, 12: -2, 7: -2, 2: -2, 0: 1})
        assert second_minimum_polynomial(18) == expect

    @pytest.mark.parametrize("n", [16, 22, 17, 19])
    def test_second_minimum_out_of_range(self, n):
        with pytest.raises(OutOfRangeError):
            second_minimum_polynomial(n)


class TestReducedIndices:
    def test_reduced_parameters_share_a_root(self):
        # The reducible pair (9, 2) realizes the same largest root as the
        # reduced pair (5, 1), here certified through the path matrix.
        from hypsys.matrices import charpoly_exact, path_matrix
        from hypsys.paths import minimal_path
        from hypsys.polynomials import Ordering, compare_roots, perron_root

        big = perron_root(charpoly_exact(path_matrix(minimal_path(9, 2))))
        small = perron_root(minimal_path_polynomial(5, 1))
        assert compare_roots(big, small) is Ordering.EQUAL
