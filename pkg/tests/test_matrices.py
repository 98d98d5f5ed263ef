import random

import pytest

from hypsys.errors import (
    InvalidTransvectionError,
    NotACandidatePathError,
    NotARomeError,
)
from hypsys.matrices import (
    RauzyPath,
    TransitionMatrix,
    charpoly_exact,
    elementary_matrix,
    is_primitive,
    min_column_sum,
    path_matrix,
    rome_charpoly,
    transition_product,
)
from hypsys.paths import central_loop_start, loop_path, minimal_path
from hypsys.permutations import MoveKind, rauzy_move
from hypsys.polynomials import IntPolynomial, Ordering, compare_roots, perron_root


class TestElementary:
    def test_unit_entry(self):
        m = elementary_matrix(4, 1, 4)
        assert m[3, 0] == 1
        assert m[0, 0] == 1 and m[1, 1] == 1
        assert m.determinant() == 1

    def test_invalid(self):
        with pytest.raises(InvalidTransvectionError):
            elementary_matrix(2, 2, 4)
        with pytest.raises(InvalidTransvectionError):
            elementary_matrix(0, 1, 4)

    def test_product_dominates_identity(self):
        product = transition_product(minimal_path(4, 1))
        identity = TransitionMatrix.identity(4)
        assert identity.entrywise_leq(product)


class TestPathMatrix:
    def test_known_charpoly(self):
        v = path_matrix(minimal_path(4, 1))
        assert charpoly_exact(v).coeffs == (1, -1, -1, -1, 1)

    def test_shifted_polynomial(self):
        v = path_matrix(minimal_path(6, 2))
        assert (charpoly_exact(v) * IntPolynomial((1, 1))) == IntPolynomial(
            (1, 0, -2, 0, 0, -2, 0, 1)
        )

    def test_loop_path_polynomial(self):
        v = path_matrix(loop_path(6, 2, 2))
        assert (charpoly_exact(v) * IntPolynomial((1, 1))) == IntPolynomial(
            (1, 0, -2, -1, -1, -2, 0, 1)
        )

    def test_empty_closed_path(self):
        p = central_loop_start(5, 1)
        path = RauzyPath(p, ())
        assert path_matrix(path, kind="closed") == TransitionMatrix.identity(5)

    def test_determinants_are_units(self):
        for n, k in ((4, 1), (6, 2), (7, 2), (8, 3)):
            assert path_matrix(minimal_path(n, k)).determinant() in (-1, 1)

    def test_not_a_candidate(self):
        start = central_loop_start(6, 2)
        path = RauzyPath(start, (MoveKind.RIGHT_B,))
        with pytest.raises(NotACandidatePathError):
            path_matrix(path)

    def test_winners_and_losers_recorded(self):
        path = minimal_path(4, 1)
        assert path.winners == (2, 2, 4)
        assert path.losers == (4, 3, 2)


class TestPrimitivity:
    def test_primitive_cases(self):
        assert is_primitive(path_matrix(minimal_path(4, 1)))
        assert is_primitive(path_matrix(loop_path(7, 2, 3)))

    def test_non_primitive_case(self):
        assert not is_primitive(path_matrix(minimal_path(7, 2)))

    def test_permutation_matrix_not_primitive(self):
        rows = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
        assert not is_primitive(TransitionMatrix(rows))

    def test_primitivity_parity_scan(self):
        # The loop index controls primitivity when the size is 3 mod 4.
        for n in (7, 11):
            kmax = n // 2 - 1
            lmax = n - 2 - kmax
            for l in range(1, lmax + 4):
                expected = l % 2 == 1
                assert is_primitive(path_matrix(loop_path(n, kmax, l))) == expected


class TestCharpoly:
    def test_identity(self):
        p = charpoly_exact(TransitionMatrix.identity(3))
        assert p == IntPolynomial((-1, 3, -3, 1))  # (X-1)^3

    def test_reciprocal_shape(self):
        for n, k in ((6, 2), (8, 3), (10, 4)):
            p = charpoly_exact(path_matrix(minimal_path(n, k))) * IntPolynomial((1, 1))
            assert p.is_reciprocal

    def test_anti_reciprocal_shape(self):
        p = charpoly_exact(path_matrix(loop_path(7, 2, 3))) * IntPolynomial((1, 1))
        assert p.is_anti_reciprocal


class TestColumnSums:
    def test_identity(self):
        assert min_column_sum(TransitionMatrix.identity(5)) == 1

    def test_outer_loop_powers(self):
        from hypsys.closed_forms import index_bounds, outer_loop_matrix_even

        for n in (6, 8, 10):
            m = outer_loop_matrix_even(n)
            m4 = (m @ m) @ (m @ m)
            assert m4.min_column_sum() == 6

    def test_squared_outer_loop_odd(self):
        from hypsys.closed_forms import outer_loop_matrix_odd

        for n in (7, 11):
            m = outer_loop_matrix_odd(n)
            assert (m @ m).min_column_sum() == 4


class TestRome:
    def test_full_vertex_set(self):
        rng = random.Random(3)
        rows = tuple(
            tuple(rng.randrange(3) for _ in range(4)) for _ in range(4)
        )
        m = TransitionMatrix(rows)
        assert rome_charpoly(m, [1, 2, 3, 4]) == charpoly_exact(m)

    def test_not_a_rome(self):
        m = path_matrix(minimal_path(6, 2))
        with pytest.raises(NotARomeError):
            rome_charpoly(m, [1])

    def test_single_vertex_rome(self):
        rows = ((1, 1), (1, 0))
        m = TransitionMatrix(rows)
        # Vertex 1 meets both cycles (the self loop and the 2-cycle).
        assert rome_charpoly(m, [1]) == charpoly_exact(m)


class TestSubpathMonotonicity:
    def _loop_word_at(self, blocks, n):
        # The closed loop through a vertex below deck runs the opposite
        # letter of its innermost block all the way around.
        total = sum(blocks)
        current = "t" if len(blocks) % 2 else "b"
        other = "b" if current == "t" else "t"
        return other * (n - 1 - total)

    def test_inserting_loops_grows_everything(self, diagram8):
        rng = random.Random(17)
        n = 8
        for _ in range(12):
            k = rng.randrange(1, 4)
            base = minimal_path(n, k)
            v_base = path_matrix(base)
            # Walk a prefix, insert the closed loop at that vertex.
            cut = rng.randrange(1, len(base))
            perm = base.start
            blocks = [k]
            for move in base.moves[:cut]:
                idx = diagram8.index_of(perm)
                perm, _, _ = rauzy_move(perm, move)
                blocks = list(diagram8.blocks[diagram8.index_of(perm)])
            loop_word = self._loop_word_at(tuple(blocks), n)
            if not loop_word:
                continue
            from hypsys.permutations import parse_word

            decorated = RauzyPath(
                base.start,
                base.moves[:cut] + parse_word(loop_word) + base.moves[cut:],
            )
            v_dec = path_matrix(decorated)
            assert v_base.entrywise_leq(v_dec)
            r_base = perron_root(charpoly_exact(v_base))
            r_dec = perron_root(charpoly_exact(v_dec))
            verdict = compare_roots(r_dec, r_base)
            if is_primitive(v_dec):
                assert verdict is Ordering.GREATER
            else:
                assert verdict in (Ordering.GREATER, Ordering.EQUAL)

    def test_text_round_trip(self):
        m = path_matrix(minimal_path(5, 1))
        assert TransitionMatrix.from_text(m.to_text()) == m
