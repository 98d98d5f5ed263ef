import random
from fractions import Fraction

import pytest

from hypsys.errors import AmbiguousComparisonError, NotPrimitiveError, NotPureError
from hypsys.matrices import RauzyPath, TransitionMatrix, charpoly_exact, path_matrix
from hypsys.paths import central_loop_start, minimal_path
from hypsys.permutations import LabeledPermutation, MoveKind, central_permutation
from hypsys.polynomials import Ordering, compare_roots, perron_root
from hypsys.suspension import (
    IetState,
    Side,
    eigen_data,
    height_window,
    is_central_loop_start,
    rauzy_step_dynamic,
    sample_pure_admissible,
    weak_suspension,
    zrl_coding_successors,
    zrl_normalize,
    zrl_step,
)


class TestHeightWindow:
    def test_genuine_suspension_contains_zero(self):
        # All top prefix sums positive, all bottom prefix sums negative.
        perm = central_permutation(4)
        tau = [Fraction(x) for x in (1, 1, -1, -1)]
        window = height_window(perm, tau)
        assert not window.is_empty
        assert window.contains(Fraction(0))

    def test_zero_vector_is_empty(self):
        perm = central_permutation(4)
        window = height_window(perm, [Fraction(0)] * 4)
        assert window.is_empty

    def test_eigen_tau_is_feasible(self):
        path = minimal_path(4, 1)
        data = eigen_data(path_matrix(path), path.start)
        assert not data.window.is_empty

    def test_corner_gates(self):
        # top first equals bottom last: the extra gate must be consulted.
        perm = LabeledPermutation((1, 2, 3), (3, 2, 1))
        good = weak_suspension(perm, [Fraction(1), Fraction(-1), Fraction(-1)])
        assert good.window.corner_first_applies

    def test_sampled_heights_satisfy_strict_inequalities(self):
        path = minimal_path(6, 2)
        data = eigen_data(path_matrix(path), path.start)
        window = data.window
        width = Fraction(1, 10**6)
        lo = window.lo.enclosure(width)[1]
        hi = window.hi.enclosure(width)[0]
        mid = (lo + hi) / 2
        perm = path.start
        tau = data.tau

        def clause_failures(h):
            bad = 0
            acc = tau[0] * 0
            for label in perm.top[:-1]:
                acc = acc + tau[label - 1]
                if (acc + h).sign() <= 0:
                    bad += 1
            acc = tau[0] * 0
            for label in perm.bottom[:-1]:
                acc = acc + tau[label - 1]
                if (acc + h).sign() >= 0:
                    bad += 1
            return bad

        # Inside the window every strict inequality holds; just outside it
        # at least one fails, so the window is exactly the solution set.
        assert clause_failures(mid) == 0
        outside_low = window.lo.enclosure(width)[0] - 1
        outside_high = window.hi.enclosure(width)[1] + 1
        assert clause_failures(outside_low) > 0
        assert clause_failures(outside_high) > 0


class TestEigenData:
    def test_known_roots(self):
        for n, k, decimal in ((4, 1, "1.72208380573904"), (6, 2, "1.55603019132268")):
            path = minimal_path(n, k)
            data = eigen_data(path_matrix(path), path.start)
            assert data.theta.refined(Fraction(1, 10**16)).decimal(14) == decimal

    def test_positive_lengths_sum_to_one(self):
        path = minimal_path(4, 1)
        data = eigen_data(path_matrix(path), path.start)
        assert all(v.sign() > 0 for v in data.lengths)
        total = data.normalized_lengths()[0] * 0
        for v in data.normalized_lengths():
            total = total + v
        assert (total - 1).is_zero

    def test_non_primitive_rejected(self):
        rows = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
        with pytest.raises(NotPrimitiveError):
            eigen_data(TransitionMatrix(rows), central_permutation(3))


class TestDynamicSteps:
    def test_type_rule(self):
        perm = central_permutation(4)
        lengths = [Fraction(x) for x in (5, 1, 1, 2)]
        # top last (4) vs bottom last (1): 2 < 5, so the bottom row wins.
        state, move, winner, loser = rauzy_step_dynamic(IetState(perm, lengths))
        assert move is MoveKind.RIGHT_B
        assert (winner, loser) == (1, 4)
        assert state.lengths[0] == 3

    def test_tie_raises(self):
        perm = central_permutation(4)
        lengths = [Fraction(1)] * 4
        with pytest.raises(AmbiguousComparisonError):
            rauzy_step_dynamic(IetState(perm, lengths))

    def test_eigen_state_replays_the_word(self):
        path = minimal_path(4, 1)
        data = eigen_data(path_matrix(path), path.start)
        state = IetState(path.start, list(data.lengths))
        letters = []
        for _ in range(len(path)):
            state, move, _, _ = rauzy_step_dynamic(state)
            letters.append(move.letter)
        assert "".join(letters) == "bbt"
        # After the full word the lengths have contracted by the root:
        # scaling back up must reproduce the starting lengths (relabeled).
        theta = data.field.theta()
        from hypsys.matrices import relabeling_map

        mapping = relabeling_map(state.permutation.symmetric(), path.start)
        for a, b in mapping.items():
            assert (theta * state.lengths[a - 1] - data.lengths[b - 1]).is_zero

    def test_left_step_is_conjugate_of_right_step(self):
        rng = random.Random(23)
        for _ in range(50):
            n = rng.choice((4, 5, 6))
            perm = central_permutation(n)
            for _ in range(rng.randrange(6)):
                perm, _, _ = __import__("hypsys.permutations", fromlist=["rauzy_move"]).rauzy_move(
                    perm, rng.choice((MoveKind.RIGHT_T, MoveKind.RIGHT_B))
                )
            lengths = [Fraction(rng.randrange(1, 50)) for _ in range(n)]
            if lengths[perm.top[0] - 1] == lengths[perm.bottom[0] - 1]:
                continue
            state = IetState(perm, list(lengths))
            left_state, left_move, w, l = rauzy_step_dynamic(state, Side.LEFT)
            mirror = IetState(perm.symmetric(), list(lengths))
            right_state, right_move, w2, l2 = rauzy_step_dynamic(mirror, Side.RIGHT)
            assert left_move.conjugate is right_move
            assert left_state.permutation == right_state.permutation.symmetric()
            assert left_state.lengths == right_state.lengths
            assert (w, l) == (w2, l2)


class TestZrlStep:
    def test_fixed_point_on_minimal_path(self, diagram6):
        path = minimal_path(4, 1)
        newpath, info, _ = zrl_step(path)
        assert newpath.start.reduced() == path.start.reduced()
        assert newpath.word == path.word

    def test_info_words(self):
        path = minimal_path(4, 1)
        _, info, _ = zrl_step(path)
        assert info.right_word == "b^2 t"
        assert info.left_word == "T^2 B"

    def test_preserves_dilatation(self, diagram6):
        rng = random.Random(31)
        for _ in range(8):
            path = sample_pure_admissible(diagram6, rng)
            before = perron_root(charpoly_exact(path_matrix(path, kind="symmetric")))
            newpath, _, _ = zrl_step(path, diagram=diagram6)
            after = perron_root(charpoly_exact(path_matrix(newpath, kind="symmetric")))
            assert compare_roots(before, after) is Ordering.EQUAL

    def test_rejects_paths_through_the_center(self):
        start = central_loop_start(6, 1)
        # Walk the central loop all the way around: visits the center.
        path = RauzyPath(start, tuple([MoveKind.RIGHT_T] * 9))
        with pytest.raises(NotPureError):
            zrl_step(path)

    def test_rejects_large_dilatations(self, diagram6):
        # Avoiding the center is not enough: at dilatation 2 and above the
        # map can come from the closed-loop construction.
        rng = random.Random(7)
        from hypsys.permutations import rauzy_move

        central_reduced = central_permutation(6).reduced()
        while True:
            start = diagram6.vertices[rng.randrange(diagram6.size)]
            if diagram6.sides[diagram6.index_of(start)] != "t":
                continue
            coords = diagram6.coordinates_of(start).parts
            if len(coords) % 2 or coords == tuple(reversed(coords)):
                continue
            target = start.symmetric().reduced()
            perm, moves = start, []
            for _ in range(60):
                move = rng.choice((MoveKind.RIGHT_T, MoveKind.RIGHT_B))
                nxt, _, _ = rauzy_move(perm, move)
                if nxt.reduced() == central_reduced:
                    continue
                perm = nxt
                moves.append(move)
                if perm.reduced() == target:
                    break
            if not moves or perm.reduced() != target:
                continue
            path = RauzyPath(start, tuple(moves))
            from hypsys.matrices import is_primitive
            from hypsys.polynomials import has_real_root_geq

            matrix = path_matrix(path, kind="symmetric")
            if not is_primitive(matrix):
                continue
            if has_real_root_geq(charpoly_exact(matrix).square_free_part(), Fraction(2)):
                break
        with pytest.raises(NotPureError):
            zrl_step(path, diagram=diagram6)


class TestZrlNormalize:
    def test_already_normalized(self):
        run = zrl_normalize(minimal_path(6, 2))
        assert run.iterations == 0
        assert run.path.word == minimal_path(6, 2).word

    def test_random_paths_normalize(self, diagram6, diagram7):
        rng = random.Random(47)
        for diagram in (diagram6, diagram7):
            for _ in range(6):
                path = sample_pure_admissible(diagram, rng, require_noncentral_start=True)
                before = perron_root(charpoly_exact(path_matrix(path, kind="symmetric")))
                run = zrl_normalize(path)
                assert is_central_loop_start(run.path.start)
                assert run.path.moves[0] is MoveKind.RIGHT_B
                after = perron_root(
                    charpoly_exact(path_matrix(run.path, kind="symmetric"))
                )
                assert compare_roots(before, after) is Ordering.EQUAL

    def test_observed_transitions_follow_the_coding_rules(self, diagram6):
        rng = random.Random(53)
        for _ in range(10):
            path = sample_pure_admissible(diagram6, rng, require_noncentral_start=True)
            run = zrl_normalize(path)
            current = diagram6.coordinates_of(path.start).parts
            for info in run.trace:
                if len(current) >= 4:
                    assert info.start_coordinates in zrl_coding_successors(current)
                current = info.start_coordinates

    def test_parity_preserved_along_orbit(self, diagram6):
        rng = random.Random(59)
        for _ in range(6):
            path = sample_pure_admissible(diagram6, rng, require_noncentral_start=True)
            run = zrl_normalize(path)
            current = diagram6.coordinates_of(path.start).parts
            for info in run.trace:
                assert len(info.start_coordinates) % 2 == len(current) % 2
                current = info.start_coordinates

    def test_every_letter_wins_and_loses_along_a_long_orbit(self, diagram6):
        # Renormalize far past the normalized form: over enough steps every
        # interval label must both win and lose.
        path = minimal_path(6, 2)
        from hypsys.suspension import zrl_step

        winners = set()
        losers = set()
        data = None
        for _ in range(12):
            path, info, data = zrl_step(path, data, diagram6)
            winners |= info.winners
            losers |= info.losers
        assert winners == set(range(1, 7))
        assert losers == set(range(1, 7))

    def test_trace_lines_format(self, diagram6):
        rng = random.Random(61)
        path = sample_pure_admissible(diagram6, rng, require_noncentral_start=True)
        run = zrl_normalize(path)
        for line in run.trace_lines():
            assert line.startswith("step=")
            assert "right=" in line and "left=" in line and "coords=" in line


class TestCodingSuccessors:
    def test_base_case(self):
        assert zrl_coding_successors((2, 3)) == set()

    def test_double_collapse(self):
        assert (2, 3) in zrl_coding_successors((1, 1, 2, 1))

    def test_right_rule_increment(self):
        succ = zrl_coding_successors((2, 1, 1, 3))
        assert any(s[-2:] == (2, 2) for s in succ)  # (..., 1+1, 3-1)

    def test_all_variants_have_the_same_total(self):
        parts = (2, 1, 1, 3)
        for s in zrl_coding_successors(parts):
            assert sum(s) == sum(parts)

    def test_split_rules_present(self):
        succ = zrl_coding_successors((3, 1, 1, 4))
        # Right-end split with remainder 2: (..., 1, 2, 1, 1).
        assert any(s[-3:] == (2, 1, 1) for s in succ)
        # Left-end split with remainder 1: (1, 1, 1, ...).
        assert any(s[:3] == (1, 1, 1) for s in succ)
