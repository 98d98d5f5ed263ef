"""Interval exchange data, weak suspension feasibility, and the
right-left renormalization of symmetric paths.

Interval lengths are exact elements of Q(theta); every induction type is
decided by a certified sign, so a renormalization orbit can never branch
on rounding.  A genuinely tied comparison (two exactly equal lengths) is
reported as an error instead of being silently resolved.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .algebraic import AlgebraicNumber, RealAlgebraicField, clear_denominators, kernel_vector
from .errors import (
    AmbiguousComparisonError,
    BudgetError,
    ConstructionViolationError,
    InternalInconsistencyError,
    NotPrimitiveError,
    NotPureError,
    UnsupportedSizeError,
)
from .matrices import RauzyPath, TransitionMatrix, charpoly_exact, is_primitive, path_matrix, relabeling_map
from .permutations import (
    LabeledPermutation,
    MoveKind,
    RauzyDiagram,
    build_diagram,
    central_permutation,
    format_word,
    rauzy_move,
)
from .polynomials import DISPLAY_WIDTH, RootEnclosure, has_real_root_geq, perron_root


class Side(Enum):
    RIGHT = "right"
    LEFT = "left"


def _sign_of(value) -> int:
    if isinstance(value, AlgebraicNumber):
        return value.sign()
    return (value > 0) - (value < 0)


def _cmp(a, b) -> int:
    return _sign_of(a - b)


# ---------------------------------------------------------------------------
# Weak suspension data
# ---------------------------------------------------------------------------


@dataclass
class HeightWindow:
    """The set of admissible heights for a candidate suspension vector.

    ``lo``/``hi`` bound the open interval cut out by the row prefix-sum
    inequalities; the two corner clauses do not involve the height and
    act as gates.  The window is empty when the interval collapses or a
    gate fails.
    """

    lo: object
    hi: object
    corner_first_applies: bool
    corner_first_ok: bool
    corner_last_applies: bool
    corner_last_ok: bool

    @property
    def is_empty(self) -> bool:
        if self.corner_first_applies and not self.corner_first_ok:
            return True
        if self.corner_last_applies and not self.corner_last_ok:
            return True
        return _cmp(self.lo, self.hi) >= 0

    def contains(self, h) -> bool:
        if self.is_empty:
            return False
        return _cmp(self.lo, h) < 0 and _cmp(h, self.hi) < 0


def height_window(perm: LabeledPermutation, tau) -> HeightWindow:
    """Admissible heights for ``tau`` over ``perm``.

    ``tau`` is indexed by label (entry i belongs to label i + 1) and may
    hold Fractions or algebraic numbers.  The top prefix sums must stay
    above -h, the bottom ones below, plus the two corner gates when the
    end columns repeat a label.
    """
    top_prefix = []
    acc = tau[perm.top[0] - 1] * 0
    for label in perm.top[:-1]:
        acc = acc + tau[label - 1]
        top_prefix.append(acc)
    bottom_prefix = []
    acc = tau[perm.bottom[0] - 1] * 0
    for label in perm.bottom[:-1]:
        acc = acc + tau[label - 1]
        bottom_prefix.append(acc)
    lo = max(( -t for t in top_prefix), key=_SortKey)
    hi = min(( -b for b in bottom_prefix), key=_SortKey)
    total = acc + tau[perm.bottom[-1] - 1]

    first_applies = perm.top[0] == perm.bottom[-1]
    first_ok = True
    if first_applies:
        first_ok = _sign_of(total - tau[perm.top[0] - 1]) < 0
    last_applies = perm.top[-1] == perm.bottom[0]
    last_ok = True
    if last_applies:
        last_ok = _sign_of(total - tau[perm.bottom[0] - 1]) > 0
    return HeightWindow(lo, hi, first_applies, first_ok, last_applies, last_ok)


class _SortKey:
    """Key object letting max()/min() run on exact comparisons."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __lt__(self, other):
        return _cmp(self.value, other.value) < 0


@dataclass
class WeakSuspensionDatum:
    permutation: LabeledPermutation
    tau: list
    window: HeightWindow

    @property
    def is_valid(self) -> bool:
        return not self.window.is_empty


def weak_suspension(perm: LabeledPermutation, tau) -> WeakSuspensionDatum:
    return WeakSuspensionDatum(perm, list(tau), height_window(perm, tau))


# ---------------------------------------------------------------------------
# Eigenvector data of a primitive path matrix
# ---------------------------------------------------------------------------


@dataclass
class EigenData:
    """Expansion root with its expanding and contracting eigenvectors.

    ``lengths`` is the positive eigenvector for the root, ``tau`` an
    eigenvector for its inverse with the sign fixed so the start
    permutation admits a height; both have integer residues.
    """

    field: RealAlgebraicField
    theta: RootEnclosure
    lengths: list[AlgebraicNumber]
    tau: list[AlgebraicNumber]
    window: HeightWindow

    def length_enclosures(self, width: Fraction = DISPLAY_WIDTH):
        return [v.enclosure(width) for v in self.lengths]

    def tau_enclosures(self, width: Fraction = DISPLAY_WIDTH):
        return [v.enclosure(width) for v in self.tau]

    def normalized_lengths(self) -> list[AlgebraicNumber]:
        total = self.lengths[0]
        for v in self.lengths[1:]:
            total = total + v
        inv = total.inverse()
        return [v * inv for v in self.lengths]


def eigen_data(
    matrix: TransitionMatrix,
    perm: LabeledPermutation,
    width: Fraction = DISPLAY_WIDTH,
) -> EigenData:
    """Exact eigen-data of a primitive path matrix at the permutation
    carrying it.

    The contracting eigenvector is sign-normalized so that the height
    window is nonempty; failure of both signs contradicts the symmetric
    construction and is raised as a hard error.
    """
    if not is_primitive(matrix):
        raise NotPrimitiveError("eigen data requires a primitive matrix")
    cp = charpoly_exact(matrix)
    theta = perron_root(cp, width=min(width, Fraction(1, 2**40)))
    field = RealAlgebraicField.from_enclosure(theta)
    lam = kernel_vector(field, matrix.rows, field.theta())
    signs = {v.sign() for v in lam}
    if signs == {-1}:
        lam = [-v for v in lam]
    elif signs != {1}:
        raise InternalInconsistencyError("expanding eigenvector is not signed")
    lam = clear_denominators(lam)
    tau = kernel_vector(field, matrix.rows, field.theta().inverse())
    tau = clear_denominators(tau)
    window = height_window(perm, tau)
    if window.is_empty:
        tau = [-v for v in tau]
        window = height_window(perm, tau)
        if window.is_empty:
            raise ConstructionViolationError(
                "neither sign of the contracting eigenvector admits a height"
            )
    return EigenData(field, field.enclosure(width), lam, tau, window)


# ---------------------------------------------------------------------------
# Dynamic induction steps
# ---------------------------------------------------------------------------


@dataclass
class IetState:
    """A permutation with exact interval lengths, indexed by label."""

    permutation: LabeledPermutation
    lengths: list

    @property
    def n(self) -> int:
        return self.permutation.n

    def length_of(self, label: int):
        return self.lengths[label - 1]


def rauzy_step_dynamic(state: IetState, side: Side = Side.RIGHT):
    """One length-driven induction step on the chosen side.

    Returns (new state, move, winner, loser).  The move type is decided
    by the exact comparison of the competing lengths; a tie leaves the
    type undefined and raises.
    """
    perm = state.permutation
    if side is Side.RIGHT:
        a, b = perm.top[-1], perm.bottom[-1]
        move_win, move_lose = MoveKind.RIGHT_T, MoveKind.RIGHT_B
    else:
        a, b = perm.top[0], perm.bottom[0]
        move_win, move_lose = MoveKind.LEFT_T, MoveKind.LEFT_B
    s = _cmp(state.lengths[a - 1], state.lengths[b - 1])
    if s == 0:
        raise AmbiguousComparisonError(
            f"equal lengths for labels {a} and {b}; both branches are admissible"
        )
    if s > 0:
        move, winner, loser = move_win, a, b
    else:
        move, winner, loser = move_lose, b, a
    new_perm, w, l = rauzy_move(perm, move)
    if (w, l) != (winner, loser):
        raise InternalInconsistencyError("winner bookkeeping out of step")
    new_lengths = list(state.lengths)
    new_lengths[winner - 1] = new_lengths[winner - 1] - new_lengths[loser - 1]
    return IetState(new_perm, new_lengths), move, winner, loser


# ---------------------------------------------------------------------------
# ZRL renormalization
# ---------------------------------------------------------------------------

_DIAGRAM_CACHE: dict[int, RauzyDiagram] = {}
_MAX_DIAGRAM_N = 16


def _cached_diagram(n: int) -> RauzyDiagram:
    if n > _MAX_DIAGRAM_N:
        raise UnsupportedSizeError(
            f"renormalization bookkeeping needs the full diagram; n = {n} > {_MAX_DIAGRAM_N}"
        )
    diagram = _DIAGRAM_CACHE.get(n)
    if diagram is None:
        diagram = build_diagram(n)
        _DIAGRAM_CACHE[n] = diagram
    return diagram


def is_central_loop_start(perm: LabeledPermutation) -> bool:
    """True on the main loop through the central permutation (in the
    orientation where the shortest word is a t run)."""
    return perm.top[-1] == perm.bottom[0]


def normalize_presentation(path: RauzyPath, diagram: RauzyDiagram) -> tuple[RauzyPath, bool]:
    """Swap the two rows of the start (and the move letters with them)
    when the shortest word of the start begins with a b."""
    side = diagram.side_of(path.start)
    if side != "b":
        return path, False
    flipped = tuple(m.row_swapped for m in path.moves)
    return RauzyPath(path.start.swap_rows(), flipped), True


@dataclass
class ZrlStepInfo:
    right_run: int
    left_run: int
    swapped: bool
    start_coordinates: tuple[int, ...]
    winners: frozenset[int] = frozenset()
    losers: frozenset[int] = frozenset()

    @property
    def right_word(self) -> str:
        return format_word([MoveKind.RIGHT_B] * self.right_run + [MoveKind.RIGHT_T])

    @property
    def left_word(self) -> str:
        return format_word([MoveKind.LEFT_T] * self.left_run + [MoveKind.LEFT_B])


@dataclass
class _ZrlData:
    field: RealAlgebraicField
    lengths: list[AlgebraicNumber]
    tau: list[AlgebraicNumber]


def _prepare_zrl(path: RauzyPath, diagram: RauzyDiagram) -> tuple[RauzyPath, _ZrlData]:
    central_reduced = central_permutation(path.start.n).reduced()
    if path.start.reduced() == central_reduced or path.visits_permutation(
        central_permutation(path.start.n)
    ):
        raise NotPureError("path visits the central permutation")
    path, _ = normalize_presentation(path, diagram)
    matrix = path_matrix(path, kind="symmetric")
    # Avoiding the central permutation is necessary but not sufficient for
    # purity; a dilatation of 2 or more can still come from the classical
    # closed-loop construction, and the renormalization is not defined for
    # those.  Below 2 the map is guaranteed pure.
    sf = charpoly_exact(matrix).square_free_part()
    if has_real_root_geq(sf, Fraction(2)):
        raise NotPureError(
            "dilatation is at least 2; the map may fix a separatrix and "
            "the renormalization only applies below 2"
        )
    data = eigen_data(matrix, path.start)
    return path, _ZrlData(data.field, list(data.lengths), list(data.tau))


def zrl_step(
    path: RauzyPath,
    data: _ZrlData | None = None,
    diagram: RauzyDiagram | None = None,
) -> tuple[RauzyPath, ZrlStepInfo, _ZrlData]:
    """One renormalization step of a pure symmetric path.

    Right induction runs until the bottom-last letter of the start loses
    (a b run and one t), left induction until the top-first letter loses
    (a T run and one B); the new presentation is read off the transported
    lengths by replaying right induction until the data has contracted by
    exactly the expansion root.  The orientation of the result is
    normalized back to the t side, which preserves the root.
    """
    n = path.start.n
    diagram = diagram or _cached_diagram(n)
    if data is None:
        path, data = _prepare_zrl(path, diagram)
    field = data.field
    central_reduced = central_permutation(n).reduced()
    perm = path.start
    lam = list(data.lengths)
    tau = list(data.tau)
    winners: set[int] = set()
    losers: set[int] = set()

    def right_step():
        nonlocal perm
        a, b = perm.top[-1], perm.bottom[-1]
        s = _cmp(lam[a - 1], lam[b - 1])
        if s == 0:
            raise AmbiguousComparisonError(f"tied lengths at labels {a}, {b}")
        move = MoveKind.RIGHT_T if s > 0 else MoveKind.RIGHT_B
        perm, w, l = rauzy_move(perm, move)
        lam[w - 1] = lam[w - 1] - lam[l - 1]
        tau[w - 1] = tau[w - 1] - tau[l - 1]
        winners.add(w)
        losers.add(l)
        if perm.reduced() == central_reduced:
            raise NotPureError("renormalization walked into the central permutation")
        return move

    def left_step():
        nonlocal perm
        a, b = perm.top[0], perm.bottom[0]
        s = _cmp(lam[a - 1], lam[b - 1])
        if s == 0:
            raise AmbiguousComparisonError(f"tied lengths at labels {a}, {b}")
        move = MoveKind.LEFT_T if s > 0 else MoveKind.LEFT_B
        perm, w, l = rauzy_move(perm, move)
        lam[w - 1] = lam[w - 1] - lam[l - 1]
        tau[w - 1] = tau[w - 1] - tau[l - 1]
        winners.add(w)
        losers.add(l)
        if perm.reduced() == central_reduced:
            raise NotPureError("renormalization walked into the central permutation")
        return move

    right_run = 0
    while True:
        move = right_step()
        if move is MoveKind.RIGHT_T:
            break
        right_run += 1
        if right_run > 4 * n * n + 64:
            raise BudgetError("right phase did not terminate")
    left_run = 0
    while True:
        move = left_step()
        if move is MoveKind.LEFT_B:
            break
        left_run += 1
        if left_run > 4 * n * n + 64:
            raise BudgetError("left phase did not terminate")

    swapped = diagram.side_of(perm) == "b"
    if swapped:
        perm = perm.swap_rows()
        tau = [-v for v in tau]

    # Replay right induction from the new start until the lengths have
    # contracted by exactly the root; the moves walked form the new word.
    theta = field.theta()
    target_reduced = perm.symmetric().reduced()
    word: list[MoveKind] = []
    mu = list(lam)
    rho = perm
    cap = 6 * max(len(path), 1) + 12 * n + 64
    while True:
        if word and rho.reduced() == target_reduced:
            mapping = relabeling_map(rho.symmetric(), perm)
            if all(
                (theta * mu[alpha - 1] - lam[beta - 1]).is_zero
                for alpha, beta in mapping.items()
            ):
                break
        if len(word) >= cap:
            raise BudgetError("replay exceeded its step budget")
        a, b = rho.top[-1], rho.bottom[-1]
        s = _cmp(mu[a - 1], mu[b - 1])
        if s == 0:
            raise AmbiguousComparisonError(f"tied lengths at labels {a}, {b}")
        move = MoveKind.RIGHT_T if s > 0 else MoveKind.RIGHT_B
        rho, w, l = rauzy_move(rho, move)
        mu[w - 1] = mu[w - 1] - mu[l - 1]
        word.append(move)
        if rho.reduced() == central_reduced:
            raise NotPureError("replay walked into the central permutation")

    new_path = RauzyPath(perm, tuple(word))
    coords = diagram.coordinates_of(perm).parts
    info = ZrlStepInfo(
        right_run, left_run, swapped, coords, frozenset(winners), frozenset(losers)
    )
    return new_path, info, _ZrlData(field, lam, tau)


@dataclass
class ZrlRun:
    path: RauzyPath
    iterations: int
    theta: RootEnclosure
    trace: list[ZrlStepInfo]

    def trace_lines(self) -> list[str]:
        lines = []
        digest = self.theta.decimal(12)
        for i, info in enumerate(self.trace):
            coords = ",".join(str(x) for x in info.start_coordinates)
            lines.append(
                f"step={i + 1} right={info.right_word} left={info.left_word} "
                f"coords=({coords}) swapped={'yes' if info.swapped else 'no'} "
                f"theta~{digest}"
            )
        return lines


def zrl_normalize(
    path: RauzyPath,
    max_iterations: int = 10_000,
    diagram: RauzyDiagram | None = None,
) -> ZrlRun:
    """Iterate the renormalization until the start sits on the central
    loop and the path leaves it with a b move.

    Termination within the budget is guaranteed by the theory; running
    out of budget therefore signals a precision or bookkeeping fault, not
    a property of the input.
    """
    n = path.start.n
    diagram = diagram or _cached_diagram(n)
    path, data = _prepare_zrl(path, diagram)
    theta = data.field.enclosure(DISPLAY_WIDTH)
    trace: list[ZrlStepInfo] = []
    for iteration in range(max_iterations + 1):
        if (
            is_central_loop_start(path.start)
            and path.moves
            and path.moves[0] is MoveKind.RIGHT_B
        ):
            return ZrlRun(path, iteration, theta, trace)
        path, info, data = zrl_step(path, data, diagram)
        trace.append(info)
    raise BudgetError(
        f"no central-loop presentation within {max_iterations} renormalization steps"
    )


# ---------------------------------------------------------------------------
# Coding action
# ---------------------------------------------------------------------------


def _right_variants(parts: tuple[int, ...]):
    head, a, b = parts[:-2], parts[-2], parts[-1]
    variants = []
    if b == 1:
        variants.append(head + (a + 1,))
    else:
        variants.append(head + (a + 1, b - 1))
        variants.append(head + (a, b - 1, 1))
        for r in range(1, b - 1):
            variants.append(head + (a, r, 1, b - 1 - r))
    return variants


def _left_variants(parts: tuple[int, ...]):
    a, b, tail = parts[0], parts[1], parts[2:]
    variants = []
    if a == 1:
        variants.append((b + 1,) + tail)
    else:
        variants.append((a - 1, b + 1) + tail)
        variants.append((1, a - 1, b) + tail)
        for r in range(1, a - 1):
            variants.append((a - 1 - r, 1, r, b) + tail)
    return variants


def zrl_coding_successors(parts) -> set[tuple[int, ...]]:
    """All coordinate tuples one renormalization step can reach.

    Both ends of the coding are rewritten independently: the right end by
    the b-run action, the left end by its mirror.  Fewer than four parts
    is the central-loop base case with no successors.
    """
    parts = tuple(parts)
    if len(parts) < 4:
        return set()
    out = set()
    for right in _right_variants(parts):
        for combined in _left_variants(right):
            out.add(combined)
    return out


# ---------------------------------------------------------------------------
# Random pure symmetric paths (for validation suites)
# ---------------------------------------------------------------------------


def sample_pure_admissible(
    diagram: RauzyDiagram,
    rng,
    max_word: int | None = None,
    require_noncentral_start: bool = False,
):
    """One random pure symmetric path with a primitive matrix.

    Starts are drawn from the t side with an even coordinate count (the
    symmetric endpoint is unreachable otherwise without crossing the
    central permutation); the walk is a random edge walk avoiding the
    central vertex.  Candidates whose dilatation reaches 2 are rejected:
    such maps can fix a separatrix and are then not pure, even though the
    path itself stays clear of the central permutation.
    """
    n = diagram.n
    max_word = max_word or 8 * n
    candidates = []
    for idx in range(diagram.size):
        if diagram.sides[idx] != "t":
            continue
        coords = diagram.blocks[idx]
        pad = n - 1 - sum(coords)
        full = coords + (pad,)
        if len(full) % 2:
            continue
        if full == tuple(reversed(full)):
            continue
        if require_noncentral_start and len(full) == 2:
            continue
        candidates.append(idx)
    central_reduced = central_permutation(n).reduced()
    two = Fraction(2)
    rng_n = range(n)
    while True:
        idx = rng.choice(candidates)
        start = diagram.vertices[idx]
        target_reduced = start.symmetric().reduced()
        perm = start
        moves: list[MoveKind] = []
        product = [[1 if i == j else 0 for j in rng_n] for i in rng_n]
        dead = False
        for _ in range(max_word):
            move = rng.choice((MoveKind.RIGHT_T, MoveKind.RIGHT_B))
            nxt, w, l = rauzy_move(perm, move)
            if nxt.reduced() == central_reduced:
                continue
            for row in product:
                row[l - 1] += row[w - 1]
            # The minimum column sum bounds the dilatation from below, so
            # once it reaches 2 no completion of this walk can stay pure.
            if min(sum(product[i][j] for i in rng_n) for j in rng_n) >= 2:
                dead = True
                break
            perm = nxt
            moves.append(move)
            if perm.reduced() == target_reduced:
                break
        if dead or not moves or perm.reduced() != target_reduced:
            continue
        path = RauzyPath(start, tuple(moves))
        matrix = path_matrix(path, kind="symmetric")
        if not is_primitive(matrix):
            continue
        sf = charpoly_exact(matrix).square_free_part()
        if has_real_root_geq(sf, two):
            continue
        return path
