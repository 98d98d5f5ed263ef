"""Census of dilatations below a bound, by depth-first search with
certified pruning.

All candidate paths start on the central loop, leave it with a b move and
never touch the central permutation.  The diagram is a tree of loops, so
any continuation of a prefix down to the symmetric endpoint contains the
unique simple completion route as a subpath; inserting closed loops can
only raise the largest eigenvalue, which makes the root of the
prefix-plus-completion matrix a sound lower bound for the whole subtree.
Both the lower-bound test and the final emission test are exact: cheap
integer column-sum bounds first, then a Sturm count at the bound.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from .closed_forms import index_bounds
from .errors import (
    BudgetError,
    InternalInconsistencyError,
    InvalidSizeError,
)
from .families import second_minimum_polynomial, systole_polynomial
from .matrices import RauzyPath, TransitionMatrix
from .paths import central_loop_start
from .permutations import parse_word
from .polynomials import (
    DEDUP_WIDTH,
    IntPolynomial,
    Ordering,
    RootEnclosure,
    compare_roots,
    has_real_root_geq,
    perron_root,
)

DEFAULT_BOUND = Fraction(2)


@dataclass
class SearchConfig:
    """Knobs of one census run."""

    n: int
    bound: Fraction = DEFAULT_BOUND
    max_depth: int | None = None
    width: Fraction = DEDUP_WIDTH
    threads: int = 1
    time_budget: float | None = None

    def __post_init__(self):
        self.bound = Fraction(self.bound)
        if self.n < 4:
            raise InvalidSizeError(f"census needs n >= 4, got {self.n}")
        if self.bound <= 1:
            raise InvalidSizeError("bound must exceed 1")
        if self.max_depth is not None and self.max_depth < 2 * self.n:
            raise InvalidSizeError(
                "max_depth must at least cover the minimal paths "
                f"(>= {2 * self.n})"
            )

    @property
    def depth(self) -> int:
        return self.max_depth if self.max_depth is not None else 6 * (self.n - 1)

    @property
    def completeness_capped(self) -> bool:
        """Above 2 the census only covers the symmetric construction."""
        return self.bound > 2


@dataclass(frozen=True)
class PathRecord:
    """One emitted path, fully serialized (safe to move across processes)."""

    k: int
    word: str
    rows: tuple[tuple[int, ...], ...]
    charpoly: tuple[int, ...]
    defining: tuple[int, ...]


def genus_of(n: int) -> int:
    return n // 2 if n % 2 == 0 else (n - 1) // 2


def stratum_of(n: int) -> str:
    if n % 2 == 0:
        return f"H({n - 2})"
    g = (n - 1) // 2
    return f"H({g - 1},{g - 1})"


@dataclass
class SpectrumEntry:
    """One distinct dilatation below the bound."""

    n: int
    dilatation: RootEnclosure
    defining: IntPolynomial
    charpoly: IntPolynomial
    representative_k: int
    representative_word: str
    matrix_digest: str
    realizations: int

    @property
    def genus(self) -> int:
        return genus_of(self.n)

    @property
    def stratum(self) -> str:
        return stratum_of(self.n)

    def representative_path(self) -> RauzyPath:
        start = central_loop_start(self.n, self.representative_k)
        return RauzyPath(start, parse_word(self.representative_word))


@dataclass
class SearchOutcome:
    entries: list[SpectrumEntry]
    incomplete: bool
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# One start vertex
# ---------------------------------------------------------------------------


def _apply_letter(letter: str, top: list[int], bottom: list[int]):
    """Mutating right move; returns what undo needs."""
    if letter == "t":
        winner, loser = top[-1], bottom[-1]
        kpos = bottom.index(winner)
        bottom.pop()
        bottom.insert(kpos + 1, loser)
    else:
        winner, loser = bottom[-1], top[-1]
        kpos = top.index(winner)
        top.pop()
        top.insert(kpos + 1, loser)
    return winner, loser, kpos


def _undo_letter(letter: str, top: list[int], bottom: list[int], winner, loser, kpos):
    if letter == "t":
        bottom.pop(kpos + 1)
        bottom.append(loser)
    else:
        top.pop(kpos + 1)
        top.append(loser)


def _charpoly_rows(rows) -> tuple[int, ...]:
    """Monic characteristic polynomial of a list-of-lists matrix
    (ascending coefficients), via the exact trace recurrence."""
    n = len(rows)
    a = rows
    b = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    coeffs_desc = [1]
    rng = range(n)
    for k in range(1, n + 1):
        ab = [
            [sum(a[i][t] * b[t][j] for t in rng) for j in rng]
            for i in rng
        ]
        trace = sum(ab[i][i] for i in rng)
        c = -trace // k
        coeffs_desc.append(c)
        for i in rng:
            ab[i][i] += c
        b = ab
    return tuple(reversed(coeffs_desc))


def _bool_primitive(rows) -> bool:
    n = len(rows)
    masks = [sum(1 << j for j, x in enumerate(row) if x) for row in rows]
    if any(m == 0 for m in masks):
        return False
    full = (1 << n) - 1
    e = 1
    bound = (n - 1) ** 2 + 1
    while e < bound:
        if all(m == full for m in masks):
            return True
        nxt = []
        for m in masks:
            acc = 0
            while m:
                j = (m & -m).bit_length() - 1
                acc |= masks[j]
                m &= m - 1
            nxt.append(acc)
        masks = nxt
        e *= 2
    return all(m == full for m in masks)


def _search_one_start(
    n: int,
    k: int,
    bound: Fraction,
    max_depth: int,
    deadline: float | None,
    shared_poly_cache: dict | None = None,
):
    """Depth-first enumeration of the pure symmetric paths leaving
    central.t^k with a b move; returns (records, incomplete)."""
    start = central_loop_start(n, k)
    target_pos = n - 1 - k
    target = central_loop_start(n, target_pos)
    # Column remap of the relabeling between the symmetric of the end
    # vertex and the start: column beta of the candidate matrix is column
    # alpha of the raw product.
    s_target = target.symmetric()
    col_source = [0] * n  # per destination column (0-based), the source column
    for a, b_ in zip(s_target.top, start.top):
        col_source[b_ - 1] = a - 1
    check = {a: b_ for a, b_ in zip(s_target.top, start.top)}
    for a, b_ in zip(s_target.bottom, start.bottom):
        if check[a] != b_:
            raise InternalInconsistencyError("end relabeling is inconsistent")

    bn, bd = bound.numerator, bound.denominator
    b2n, b2d = bn * bn, bd * bd
    b4n, b4d = b2n * b2n, b2d * b2d
    bound_poly_cache: dict = shared_poly_cache if shared_poly_cache is not None else {}

    top = list(start.top)
    bottom = list(start.bottom)
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    blocks = [k]
    letters: list[str] = []
    records: list[PathRecord] = []
    state = {"incomplete": False}
    rng_n = range(n)

    def candidate_matrix():
        # Walk the unique simple completion route (close every open block,
        # then move along the central loop to the target) on scratch
        # copies, then permute the columns by the end relabeling.
        sim_top = top[:]
        sim_bottom = bottom[:]
        m = [row[:] for row in V]
        work = blocks[:]
        total = sum(work)
        while len(work) > 1:
            letter = "t" if len(work) % 2 else "b"
            for _ in range(n - 1 - total):
                w, l, _ = _apply_letter(letter, sim_top, sim_bottom)
                wi, li = w - 1, l - 1
                for row in m:
                    row[li] += row[wi]
            total -= work.pop()
        for _ in range(target_pos - work[0]):
            w, l, _ = _apply_letter("t", sim_top, sim_bottom)
            wi, li = w - 1, l - 1
            for row in m:
                row[li] += row[wi]
        return tuple(
            tuple(m[i][col_source[j]] for j in rng_n) for i in rng_n
        )

    def min_colsum(rows) -> int:
        return min(sum(rows[i][j] for i in rng_n) for j in rng_n)

    def square(rows):
        return [
            [sum(rows[i][t] * rows[t][j] for t in rng_n) for j in rng_n]
            for i in rng_n
        ]

    def evaluate(rows):
        """(pruned, charpoly, defining) for the candidate matrix."""
        cached = bound_poly_cache.get(rows)
        if cached is not None:
            return cached
        if min_colsum(rows) * bd >= bn:
            result = (True, None, None)
        else:
            m2 = square(rows)
            if min(sum(m2[i][j] for i in rng_n) for j in rng_n) * b2d >= b2n:
                result = (True, None, None)
            else:
                m4 = square(m2)
                if min(sum(m4[i][j] for i in rng_n) for j in rng_n) * b4d >= b4n:
                    result = (True, None, None)
                else:
                    cp = _charpoly_rows(rows)
                    poly = IntPolynomial(cp)
                    sf = poly.square_free_part()
                    pruned = has_real_root_geq(sf, bound)
                    result = (pruned, cp, sf.coeffs)
        if len(bound_poly_cache) > 200_000:
            bound_poly_cache.clear()
        bound_poly_cache[rows] = result
        return result

    def visit(depth: int):
        if deadline is not None and time.monotonic() > deadline:
            state["incomplete"] = True
            return
        rows = candidate_matrix()
        pruned, cp, sf = evaluate(rows)
        if (
            not pruned
            and len(blocks) == 1
            and blocks[0] == target_pos
            and _bool_primitive(rows)
        ):
            records.append(
                PathRecord(k, "".join(letters), rows, cp, sf)
            )
        if pruned:
            return
        if depth >= max_depth:
            state["incomplete"] = True
            return
        total = sum(blocks)
        depth_letter = "t" if len(blocks) % 2 else "b"
        for letter in ("t", "b"):
            # Address bookkeeping: extend/close the current block or open
            # a new one; skip moves that reach the central permutation or
            # overshoot the target position on the central loop.
            if letter == depth_letter:
                if total < n - 2:
                    action = ("grow",)
                    blocks[-1] += 1
                elif len(blocks) == 1:
                    continue  # closes into the central permutation
                else:
                    action = ("pop", blocks[-1])
                    blocks.pop()
            else:
                if total < n - 2:
                    action = ("push",)
                    blocks.append(1)
                else:
                    action = ("self",)
            if blocks[0] > target_pos:
                pass  # dead branch: every completion passes the center
            else:
                w, l, kpos = _apply_letter(letter, top, bottom)
                wi, li = w - 1, l - 1
                for row in V:
                    row[li] += row[wi]
                letters.append(letter)
                visit(depth + 1)
                letters.pop()
                for row in V:
                    row[li] -= row[wi]
                _undo_letter(letter, top, bottom, w, l, kpos)
            if action[0] == "grow":
                blocks[-1] -= 1
            elif action[0] == "pop":
                blocks.append(action[1])
            elif action[0] == "push":
                blocks.pop()

    # The first move is forced to b: it leaves the central loop.
    w, l, kpos = _apply_letter("b", top, bottom)
    for row in V:
        row[l - 1] += row[w - 1]
    letters.append("b")
    blocks.append(1)
    visit(1)
    return records, state["incomplete"]


def _worker(args):
    n, k, bound_num, bound_den, max_depth, remaining = args
    deadline = time.monotonic() + remaining if remaining is not None else None
    records, incomplete = _search_one_start(
        n, k, Fraction(bound_num, bound_den), max_depth, deadline
    )
    return records, incomplete


# ---------------------------------------------------------------------------
# Census
# ---------------------------------------------------------------------------


def _collect_records(cfg: SearchConfig) -> tuple[list[PathRecord], bool]:
    kmax, _ = index_bounds(cfg.n)
    deadline = (
        time.monotonic() + cfg.time_budget if cfg.time_budget is not None else None
    )
    records: list[PathRecord] = []
    incomplete = False
    if cfg.threads > 1:
        remaining = cfg.time_budget
        jobs = [
            (cfg.n, k, cfg.bound.numerator, cfg.bound.denominator, cfg.depth, remaining)
            for k in range(1, kmax + 1)
        ]
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            for recs, inc in pool.map(_worker, jobs):
                records.extend(recs)
                incomplete = incomplete or inc
    else:
        shared_cache: dict = {}
        for k in range(1, kmax + 1):
            recs, inc = _search_one_start(
                cfg.n, k, cfg.bound, cfg.depth, deadline, shared_cache
            )
            records.extend(recs)
            incomplete = incomplete or inc
    return records, incomplete


def enumerate_admissible(cfg: SearchConfig):
    """All pure symmetric paths below the bound, as
    (path, matrix, root enclosure) triples, plus the incomplete flag."""
    records, incomplete = _collect_records(cfg)
    out = []
    enclosures: dict[tuple[int, ...], RootEnclosure] = {}
    for rec in sorted(records, key=lambda r: (r.k, len(r.word), r.word)):
        start = central_loop_start(cfg.n, rec.k)
        path = RauzyPath(start, parse_word(rec.word))
        enc = enclosures.get(rec.defining)
        if enc is None:
            enc = perron_root(IntPolynomial(rec.defining), width=cfg.width)
            enclosures[rec.defining] = enc
        out.append((path, TransitionMatrix(rec.rows), enc))
    return out, incomplete


def spectrum(cfg: SearchConfig) -> SearchOutcome:
    """Distinct dilatations below the bound, sorted ascending.

    Deduplication is by algebraic equality of the certified roots, so the
    result does not depend on the traversal or parallel schedule.
    """
    records, incomplete = _collect_records(cfg)
    notes = []
    if cfg.completeness_capped:
        notes.append(
            "bound exceeds 2: entries cover the symmetric construction only"
        )
    by_defining: dict[tuple[int, ...], list[PathRecord]] = {}
    for rec in records:
        by_defining.setdefault(rec.defining, []).append(rec)
    roots = {
        coeffs: perron_root(IntPolynomial(coeffs), width=cfg.width)
        for coeffs in by_defining
    }
    ordered = sorted(
        by_defining.keys(),
        key=cmp_to_key(lambda a, b: compare_roots(roots[a], roots[b]).value),
    )
    entries: list[SpectrumEntry] = []
    for coeffs in ordered:
        if entries and compare_roots(roots[coeffs], entries[-1].dilatation) is Ordering.EQUAL:
            # Same dilatation reached through a different defining
            # polynomial; merge into the existing class.
            previous = entries[-1]
            previous.realizations += len(by_defining[coeffs])
            rep = min(
                by_defining[coeffs], key=lambda r: (r.k, len(r.word), r.word)
            )
            if (rep.k, len(rep.word), rep.word) < (
                previous.representative_k,
                len(previous.representative_word),
                previous.representative_word,
            ):
                previous.representative_k = rep.k
                previous.representative_word = rep.word
            continue
        rep = min(by_defining[coeffs], key=lambda r: (r.k, len(r.word), r.word))
        entries.append(
            SpectrumEntry(
                n=cfg.n,
                dilatation=roots[coeffs],
                defining=IntPolynomial(coeffs),
                charpoly=IntPolynomial(rep.charpoly),
                representative_k=rep.k,
                representative_word=rep.word,
                matrix_digest=TransitionMatrix(rep.rows).digest(),
                realizations=len(by_defining[coeffs]),
            )
        )
    return SearchOutcome(entries, incomplete, notes)


# ---------------------------------------------------------------------------
# Named extremes and the census table
# ---------------------------------------------------------------------------


@dataclass
class SystoleResult:
    entry: SpectrumEntry
    closed_form: IntPolynomial
    predicted: RootEnclosure

    @property
    def dilatation(self) -> RootEnclosure:
        return self.entry.dilatation


def systole(
    n: int,
    threads: int = 1,
    time_budget: float | None = None,
    margin: Fraction = Fraction(1, 2**20),
) -> SystoleResult:
    """Least dilatation for alphabet size n, cross-checked two ways.

    The census runs with a rational bound just above the predicted root;
    this loses nothing, because the minimum over a larger bound would be
    found by the smaller search whenever it is smaller than the cap.  The
    census minimum must then agree with the closed form exactly.
    """
    closed = systole_polynomial(n)
    predicted = perron_root(closed, width=Fraction(1, 2**60))
    bound = predicted.hi + margin
    cfg = SearchConfig(n, bound=bound, threads=threads, time_budget=time_budget)
    outcome = spectrum(cfg)
    if outcome.incomplete:
        raise BudgetError(f"systole census for n={n} ran out of budget")
    if not outcome.entries:
        raise InternalInconsistencyError(
            f"census below {float(bound):.6f} found nothing at n={n}"
        )
    best = outcome.entries[0]
    if compare_roots(best.dilatation, predicted) is not Ordering.EQUAL:
        raise InternalInconsistencyError(
            f"census minimum at n={n} does not match the closed form"
        )
    shifted = best.charpoly * IntPolynomial((1, 1))
    if shifted != closed:
        raise InternalInconsistencyError(
            f"representative polynomial at n={n} does not match the closed form"
        )
    return SystoleResult(best, closed, predicted)


@dataclass
class SecondResult:
    entry: SpectrumEntry
    closed_form: IntPolynomial
    predicted: RootEnclosure


def second_length(
    n: int,
    threads: int = 1,
    time_budget: float | None = None,
    margin: Fraction = Fraction(1, 2**20),
) -> SecondResult:
    """Second least dilatation (even n >= 18, n != 4 mod 6 only)."""
    closed = second_minimum_polynomial(n)
    predicted = perron_root(closed, width=Fraction(1, 2**60))
    bound = predicted.hi + margin
    cfg = SearchConfig(n, bound=bound, threads=threads, time_budget=time_budget)
    outcome = spectrum(cfg)
    if outcome.incomplete:
        raise BudgetError(f"second-minimum census for n={n} ran out of budget")
    if len(outcome.entries) < 2:
        raise InternalInconsistencyError(
            f"census below the predicted second minimum found "
            f"{len(outcome.entries)} classes at n={n}"
        )
    second = outcome.entries[1]
    if compare_roots(second.dilatation, predicted) is not Ordering.EQUAL:
        raise InternalInconsistencyError(
            f"second census value at n={n} does not match the closed form"
        )
    return SecondResult(second, closed, predicted)


@dataclass
class CensusRow:
    genus: int
    n: int
    count: int | None
    outcome: SearchOutcome


@dataclass
class CensusTable:
    rows: list[CensusRow]

    @property
    def incomplete(self) -> bool:
        return any(r.count is None or r.outcome.incomplete for r in self.rows)

    def counts(self) -> list[int | None]:
        return [r.count for r in self.rows]


def census_table(
    g_min: int,
    g_max: int,
    threads: int = 1,
    time_budget: float | None = None,
    bound: Fraction = DEFAULT_BOUND,
) -> CensusTable:
    """Distinct-dilatation counts per genus on the even-size strata.

    A row that runs out of budget reports no count at all rather than a
    truncated one.
    """
    if g_min < 2 or g_max < g_min:
        raise InvalidSizeError(f"need 2 <= g_min <= g_max, got {g_min}..{g_max}")
    deadline = (
        time.monotonic() + time_budget if time_budget is not None else None
    )
    rows = []
    for g in range(g_min, g_max + 1):
        n = 2 * g
        remaining = None
        if deadline is not None:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                rows.append(
                    CensusRow(g, n, None, SearchOutcome([], True, ["budget exhausted"]))
                )
                continue
        cfg = SearchConfig(n, bound=bound, threads=threads, time_budget=remaining)
        outcome = spectrum(cfg)
        rows.append(
            CensusRow(g, n, None if outcome.incomplete else len(outcome.entries), outcome)
        )
    return CensusTable(rows)
