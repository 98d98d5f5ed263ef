"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  The genus 7 and 8 census rows are stretch targets; set
``HYPSYS_STRETCH=1`` to run them under a declared time budget.
"""

import os
import random
import time
from fractions import Fraction
from math import gcd

import pytest

from hypsys.closed_forms import index_bounds, loop_matrix_odd
from hypsys.families import (
    loop_polynomial_even,
    loop_polynomial_odd,
    minimal_path_polynomial,
    second_minimum_polynomial,
    systole_polynomial,
)
from hypsys.inequalities import verify_inequalities
from hypsys.matrices import charpoly_exact, is_primitive, path_matrix, rome_charpoly
from hypsys.paths import loop_path, minimal_path
from hypsys.permutations import MoveKind, build_diagram
from hypsys.polynomials import (
    IntPolynomial,
    Ordering,
    compare_roots,
    perron_root,
)
from hypsys.search import SearchConfig, census_table, second_length, spectrum, systole
from hypsys.suspension import (
    eigen_data,
    is_central_loop_start,
    sample_pure_admissible,
    zrl_coding_successors,
    zrl_normalize,
)

SHIFT = IntPolynomial((1, 1))


def _report(criterion: str, detail: str):
    print(f"ACCEPTANCE {criterion}: PASS  ({detail})")


def test_criterion_1_systole_reproduction():
    started = time.monotonic()
    for n in range(4, 21):
        result = systole(n)
        assert result.closed_form == systole_polynomial(n)
        assert compare_roots(result.dilatation, result.predicted) is Ordering.EQUAL
        shifted = result.entry.charpoly * SHIFT
        assert shifted == systole_polynomial(n)
    elapsed = time.monotonic() - started
    assert elapsed < 300
    _report("1", f"systoles for n = 4..20 in {elapsed:.1f}s")


def test_criterion_2_census_table():
    started = time.monotonic()
    table = census_table(2, 6)
    assert not table.incomplete
    assert table.counts() == [1, 4, 11, 22, 79]

    tolerance = Fraction(1, 10**11)
    g2 = table.rows[0].outcome.entries
    assert len(g2) == 1
    target = Fraction("1.72208380573904")
    enc = g2[0].dilatation.refined(tolerance)
    assert abs(enc.midpoint - target) < tolerance

    g3 = table.rows[1].outcome.entries
    expected = [
        Fraction("1.55603019132268"),
        Fraction("1.78164359860800"),
        Fraction("1.85118903363607"),
        Fraction("1.94685626827188"),
    ]
    for entry, want in zip(g3, expected):
        enc = entry.dilatation.refined(tolerance)
        assert abs(enc.midpoint - want) < tolerance

    elapsed = time.monotonic() - started
    assert elapsed < 900
    _report("2", f"counts (1, 4, 11, 22, 79) in {elapsed:.1f}s")

    if os.environ.get("HYPSYS_STRETCH") == "1":
        stretch = census_table(7, 8, time_budget=3600)
        if stretch.incomplete:
            print("ACCEPTANCE 2 (stretch): INCOMPLETE under the declared budget")
        else:
            assert stretch.counts() == [142, 452]
            print("ACCEPTANCE 2 (stretch): PASS (142, 452)")

    if os.environ.get("HYPSYS_STRETCH_G9") == "1":
        # Genus 9 needs a deeper cap: qualifying paths at n = 18 outgrow
        # the 6(n - 1) default.
        outcome = spectrum(SearchConfig(18, max_depth=220, threads=5, time_budget=3600))
        if outcome.incomplete:
            print("ACCEPTANCE 2 (stretch g=9): INCOMPLETE under the declared budget")
        else:
            assert len(outcome.entries) == 1688
            print("ACCEPTANCE 2 (stretch g=9): PASS (1688)")


def test_criterion_3_closed_form_equivalence():
    checks = 0
    for n in range(4, 15):
        kmax, lmax = index_bounds(n)
        for k in range(1, kmax + 1):
            if gcd(n - 1, k) != 1:
                continue
            lhs = charpoly_exact(path_matrix(minimal_path(n, k))) * SHIFT
            assert lhs == minimal_path_polynomial(n, k)
            checks += 1
        if n % 2 == 0:
            for l in range(1, lmax + 1):
                lhs = charpoly_exact(path_matrix(loop_path(n, kmax, l))) * SHIFT
                assert lhs == loop_polynomial_even(n, l)
                checks += 1
    for n in (7, 11):
        kmax, lmax = index_bounds(n)
        for l in range(1, lmax + 1, 2):
            lhs = charpoly_exact(path_matrix(loop_path(n, kmax, l))) * SHIFT
            assert lhs == loop_polynomial_odd(n, l)
            checks += 1
    _report("3", f"{checks} exact polynomial identities")


def test_criterion_4_primitivity_pattern():
    checks = 0
    for n in range(4, 20):
        kmax, _ = index_bounds(n)
        primitive = is_primitive(path_matrix(minimal_path(n, kmax)))
        if n % 4 == 3:
            assert not primitive
        else:
            assert primitive
        checks += 1
    for n in (7, 11, 15, 19):
        kmax, lmax = index_bounds(n)
        for l in range(1, lmax + 4):
            got = is_primitive(path_matrix(loop_path(n, kmax, l)))
            assert got == (l % 2 == 1)
            checks += 1
    _report("4", f"{checks} primitivity facts")


def test_criterion_5_inequality_suite():
    started = time.monotonic()
    report = verify_inequalities(30)
    failures = report.failures()
    for failure in failures[:20]:
        print(failure.line())
    assert report.all_passed
    _report(
        "5",
        f"{len(report.results)} comparisons at n <= 30 in "
        f"{time.monotonic() - started:.1f}s",
    )


def test_criterion_6_rome_equivalence():
    from hypsys.closed_forms import base_matrix

    checks = 0
    for n in range(4, 13):
        kmax, _ = index_bounds(n)
        for k in range(1, kmax + 1):
            if gcd(n - 1, k) != 1:
                continue
            m = base_matrix(n, k)
            assert rome_charpoly(m, [1, n]) == charpoly_exact(m)
            checks += 1
    for n in (7, 11):
        _, lmax = index_bounds(n)
        mid = (n - 1) // 2
        for l in range(1, lmax + 1, 2):
            m = loop_matrix_odd(n, l)
            assert rome_charpoly(m, [n, n - 1, mid]) == charpoly_exact(m)
            checks += 1
    _report("6", f"{checks} rome computations match the exact polynomials")


def test_criterion_7_suspension_validity():
    from hypsys.search import enumerate_admissible

    checked = 0
    for n in range(4, 9):
        triples, incomplete = enumerate_admissible(SearchConfig(n))
        assert not incomplete
        for path, matrix, _ in triples:
            data = eigen_data(matrix, path.start)
            assert not data.window.is_empty
            checked += 1
    assert checked > 0
    _report("7", f"{checked} emitted census paths all admit a height")


def test_criterion_8_zrl_suite():
    started = time.monotonic()
    total = 0
    for n, count, seed in ((6, 50, 101), (7, 50, 202)):
        diagram = build_diagram(n)
        rng = random.Random(seed)
        for _ in range(count):
            path = sample_pure_admissible(diagram, rng)
            before = perron_root(charpoly_exact(path_matrix(path, kind="symmetric")))
            run = zrl_normalize(path, max_iterations=10_000)
            assert is_central_loop_start(run.path.start)
            assert run.path.moves[0] is MoveKind.RIGHT_B
            after = perron_root(
                charpoly_exact(path_matrix(run.path, kind="symmetric"))
            )
            assert compare_roots(before, after) is Ordering.EQUAL
            current = diagram.coordinates_of(path.start).parts
            for info in run.trace:
                if len(current) >= 4:
                    assert info.start_coordinates in zrl_coding_successors(current)
                current = info.start_coordinates
            # Central-loop starts that already lead with a b move are left
            # untouched by the normalization.
            if is_central_loop_start(path.start) and path.moves[0] is MoveKind.RIGHT_B:
                assert run.iterations == 0
                assert run.path.start == path.start
            total += 1
    _report("8", f"{total} orbits in {time.monotonic() - started:.1f}s")


def test_criterion_9_second_minimum():
    started = time.monotonic()
    result = second_length(18)
    assert result.closed_form == second_minimum_polynomial(18)
    assert result.closed_form == minimal_path_polynomial(18, index_bounds(18)[0] - 1)
    assert compare_roots(result.entry.dilatation, result.predicted) is Ordering.EQUAL
    _report("9", f"second minimum at n = 18 in {time.monotonic() - started:.1f}s")
