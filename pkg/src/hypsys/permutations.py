"""Labeled permutations, Rauzy moves, and the hyperelliptic Rauzy diagram.

A labeled permutation is a pair of rows, each listing the labels 1..n by
position (top row first).  Right Rauzy moves act on the last column, left
moves on the first; the symmetric involution reverses and swaps the rows.
The hyperelliptic diagram D_n is the closure of the fully reversing
permutation under the two right moves; it has 2**(n-1) - 1 vertices and
the shape of a tree of loops, which is what the address algebra at the
bottom of this module encodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    InvalidPermutationError,
    InvalidSizeError,
    MembershipError,
    UndefinedMoveError,
)


class MoveKind(Enum):
    """One Rauzy move.

    The letter records the row whose competing letter wins: in a right
    move the last letters of the two rows compete, in a left move the
    first letters do.  Lowercase letters are right moves, uppercase left.
    Each left move is the conjugate of a right move by the symmetric
    involution: ``LEFT_T = s . RIGHT_B . s`` and ``LEFT_B = s . RIGHT_T . s``
    (conjugation swaps the two rows, hence the crossed pairing).
    """

    RIGHT_T = "t"
    RIGHT_B = "b"
    LEFT_T = "T"
    LEFT_B = "B"

    @property
    def is_right(self) -> bool:
        return self in (MoveKind.RIGHT_T, MoveKind.RIGHT_B)

    @property
    def letter(self) -> str:
        return self.value

    @property
    def conjugate(self) -> "MoveKind":
        """The right move this left move is conjugate to (and vice versa)."""
        return _CONJUGATE[self]

    @property
    def row_swapped(self) -> "MoveKind":
        """The move seen after exchanging the two rows."""
        return _ROW_SWAPPED[self]


_CONJUGATE = {
    MoveKind.LEFT_T: MoveKind.RIGHT_B,
    MoveKind.LEFT_B: MoveKind.RIGHT_T,
    MoveKind.RIGHT_T: MoveKind.LEFT_B,
    MoveKind.RIGHT_B: MoveKind.LEFT_T,
}

_ROW_SWAPPED = {
    MoveKind.RIGHT_T: MoveKind.RIGHT_B,
    MoveKind.RIGHT_B: MoveKind.RIGHT_T,
    MoveKind.LEFT_T: MoveKind.LEFT_B,
    MoveKind.LEFT_B: MoveKind.LEFT_T,
}


@dataclass(frozen=True)
class LabeledPermutation:
    """Two rows of labels; ``top[i]`` is the label of the i-th interval."""

    top: tuple[int, ...]
    bottom: tuple[int, ...]

    def __post_init__(self):
        n = len(self.top)
        if n < 2:
            raise InvalidSizeError(f"alphabet size must be at least 2, got {n}")
        if len(self.bottom) != n:
            raise InvalidPermutationError("rows have different lengths")
        expected = set(range(1, n + 1))
        if set(self.top) != expected or set(self.bottom) != expected:
            raise InvalidPermutationError(
                f"rows must each be a permutation of 1..{n}: "
                f"{self.top} / {self.bottom}"
            )

    @property
    def n(self) -> int:
        return len(self.top)

    def reduced(self) -> tuple[int, ...]:
        """The underlying reduced permutation, as the position map
        top position -> bottom position of the same label."""
        where = {label: i for i, label in enumerate(self.bottom)}
        return tuple(where[label] + 1 for label in self.top)

    def symmetric(self) -> "LabeledPermutation":
        """Reverse both rows and exchange them.  An involution."""
        return LabeledPermutation(tuple(reversed(self.bottom)), tuple(reversed(self.top)))

    def swap_rows(self) -> "LabeledPermutation":
        return LabeledPermutation(self.bottom, self.top)

    def relabeled(self, mapping: dict[int, int]) -> "LabeledPermutation":
        return LabeledPermutation(
            tuple(mapping[a] for a in self.top),
            tuple(mapping[a] for a in self.bottom),
        )

    # -- text form: "1 2 3 4 / 4 3 2 1" ---------------------------------

    def to_text(self) -> str:
        return "{} / {}".format(
            " ".join(str(a) for a in self.top),
            " ".join(str(a) for a in self.bottom),
        )

    @classmethod
    def from_text(cls, text: str) -> "LabeledPermutation":
        try:
            top_text, bottom_text = text.split("/")
        except ValueError:
            raise InvalidPermutationError(
                f"expected two rows separated by '/': {text!r}"
            ) from None
        return cls(
            tuple(int(tok) for tok in top_text.split()),
            tuple(int(tok) for tok in bottom_text.split()),
        )

    def __str__(self):
        return self.to_text()


def central_permutation(n: int) -> LabeledPermutation:
    """The fully reversing permutation: 1..n on top of n..1."""
    if n < 2:
        raise InvalidSizeError(f"alphabet size must be at least 2, got {n}")
    return LabeledPermutation(tuple(range(1, n + 1)), tuple(range(n, 0, -1)))


def rauzy_move(
    p: LabeledPermutation, move: MoveKind
) -> tuple[LabeledPermutation, int, int]:
    """Apply one Rauzy move; returns (new permutation, winner, loser).

    Right move of type t: the last top label wins, the last bottom label
    is removed from the end of the bottom row and reinserted right after
    the winner's bottom position.  Type b exchanges the roles of the two
    rows.  Left moves are the symmetric conjugates and act on the first
    column instead.
    """
    if move.is_right:
        top, bottom = p.top, p.bottom
        if top[-1] == bottom[-1]:
            raise UndefinedMoveError(f"degenerate last column in {p}")
        if move is MoveKind.RIGHT_T:
            winner, loser = top[-1], bottom[-1]
            k = bottom.index(winner)
            new_bottom = bottom[: k + 1] + (loser,) + bottom[k + 1 : -1]
            return LabeledPermutation(top, new_bottom), winner, loser
        winner, loser = bottom[-1], top[-1]
        k = p.top.index(winner)
        new_top = top[: k + 1] + (loser,) + top[k + 1 : -1]
        return LabeledPermutation(new_top, bottom), winner, loser
    if p.top[0] == p.bottom[0]:
        raise UndefinedMoveError(f"degenerate first column in {p}")
    conj, _, _ = rauzy_move(p.symmetric(), move.conjugate)
    q = conj.symmetric()
    if move is MoveKind.LEFT_T:
        return q, p.top[0], p.bottom[0]
    return q, p.bottom[0], p.top[0]


@dataclass(frozen=True)
class PathCoordinates:
    """Run lengths of the unique shortest word from the central permutation,
    padded so the parts always sum to n - 1."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(x <= 0 for x in self.parts):
            raise ValueError(f"parts must be positive: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts) + 1

    def reversed(self) -> "PathCoordinates":
        return PathCoordinates(tuple(reversed(self.parts)))

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)


def permutation_from_coordinates(
    coords: PathCoordinates | tuple[int, ...],
    first_move: MoveKind = MoveKind.RIGHT_T,
) -> LabeledPermutation:
    """Inverse of :func:`coordinates`: rebuild the vertex from its parts.

    The final part is padding and is not walked.  ``first_move`` selects
    the type of the first run (the two choices give row-swapped vertices).
    """
    parts = tuple(coords.parts if isinstance(coords, PathCoordinates) else coords)
    n = sum(parts) + 1
    p = central_permutation(n)
    move = first_move
    for run in parts[:-1]:
        for _ in range(run):
            p, _, _ = rauzy_move(p, move)
        move = move.row_swapped
    return p


# ---------------------------------------------------------------------------
# The diagram
# ---------------------------------------------------------------------------

_LETTER_TO_MOVE = {"t": MoveKind.RIGHT_T, "b": MoveKind.RIGHT_B}


@dataclass
class RauzyDiagram:
    """The hyperelliptic Rauzy diagram D_n, built by breadth-first closure.

    ``succ[i]`` holds the targets of the two out-edges of vertex ``i``
    (type t first), with the winner/loser labels alongside.  Because the
    labeled and the reduced diagram coincide here, vertices can be looked
    up either by exact labeled equality or by the reduced permutation.
    """

    n: int
    vertices: list[LabeledPermutation] = field(default_factory=list)
    succ: list[tuple[int, int]] = field(default_factory=list)
    winners: list[tuple[int, int]] = field(default_factory=list)
    losers: list[tuple[int, int]] = field(default_factory=list)
    sides: list[str] = field(default_factory=list)
    blocks: list[tuple[int, ...]] = field(default_factory=list)
    _by_labeled: dict = field(default_factory=dict, repr=False)
    _by_reduced: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return 2 * len(self.vertices)

    def index_of(self, p: LabeledPermutation) -> int:
        """Index of the vertex with the same reduced permutation as ``p``."""
        idx = self._by_labeled.get((p.top, p.bottom))
        if idx is not None:
            return idx
        idx = self._by_reduced.get(p.reduced())
        if idx is None:
            raise MembershipError(f"{p} is not in D_{self.n}")
        return idx

    def __contains__(self, p: LabeledPermutation) -> bool:
        try:
            self.index_of(p)
        except MembershipError:
            return False
        return True

    def coordinates_of(self, p: LabeledPermutation) -> PathCoordinates:
        idx = self.index_of(p)
        blocks = self.blocks[idx]
        pad = self.n - 1 - sum(blocks)
        return PathCoordinates(blocks + (pad,))

    def side_of(self, p: LabeledPermutation) -> str:
        """First letter of the shortest word from the central permutation
        ('' for the central permutation itself)."""
        return self.sides[self.index_of(p)]

    def is_strongly_connected(self) -> bool:
        # Forward reachability is total by construction; check the reverse.
        rev: list[list[int]] = [[] for _ in self.vertices]
        for i, (jt, jb) in enumerate(self.succ):
            rev[jt].append(i)
            rev[jb].append(i)
        seen = [False] * len(self.vertices)
        stack = [0]
        seen[0] = True
        while stack:
            i = stack.pop()
            for j in rev[i]:
                if not seen[j]:
                    seen[j] = True
                    stack.append(j)
        return all(seen)


def build_diagram(n: int) -> RauzyDiagram:
    """Breadth-first closure of the central permutation under right moves.

    Verifies the expected vertex count 2**(n-1) - 1 and that no two
    distinct vertices share a reduced permutation.
    """
    root = central_permutation(n)
    diagram = RauzyDiagram(n=n)
    diagram.vertices.append(root)
    diagram._by_labeled[(root.top, root.bottom)] = 0
    diagram._by_reduced[root.reduced()] = 0
    diagram.sides.append("")
    diagram.blocks.append(())
    frontier = [0]
    while frontier:
        next_frontier = []
        for i in frontier:
            p = diagram.vertices[i]
            targets = []
            winners = []
            losers = []
            for letter in ("t", "b"):
                q, w, l = rauzy_move(p, _LETTER_TO_MOVE[letter])
                key = (q.top, q.bottom)
                j = diagram._by_labeled.get(key)
                if j is None:
                    j = len(diagram.vertices)
                    diagram.vertices.append(q)
                    diagram._by_labeled[key] = j
                    reduced = q.reduced()
                    if reduced in diagram._by_reduced:
                        raise InvalidPermutationError(
                            "labeled and reduced diagrams disagree at "
                            f"{q}; this contradicts the structure of D_n"
                        )
                    diagram._by_reduced[reduced] = j
                    side, blk = _address_apply(
                        diagram.sides[i], diagram.blocks[i], letter, n
                    )
                    diagram.sides.append(side)
                    diagram.blocks.append(blk)
                    next_frontier.append(j)
                targets.append(j)
                winners.append(w)
                losers.append(l)
            diagram.succ.append((targets[0], targets[1]))
            diagram.winners.append((winners[0], winners[1]))
            diagram.losers.append((losers[0], losers[1]))
        frontier = next_frontier
    expected = 2 ** (n - 1) - 1
    if diagram.size != expected:
        raise InvalidPermutationError(
            f"D_{n} closure produced {diagram.size} vertices, expected {expected}"
        )
    return diagram


def coordinates(p: LabeledPermutation, diagram: RauzyDiagram) -> PathCoordinates:
    """Coordinates of ``p`` inside the given diagram (membership checked)."""
    return diagram.coordinates_of(p)


# ---------------------------------------------------------------------------
# Address algebra
# ---------------------------------------------------------------------------
#
# D_n is a tree of loops: the central loop {central.t^k}, a secondary loop
# of b-edges hanging at each of its vertices, and so on alternating.  A
# vertex is addressed by its side ('t' or 'b': the first letter of its
# shortest word) and the run lengths of that word.  Moving with the letter
# of the current innermost block extends the block, or wraps around the
# loop when the total run length has reached n - 2; moving with the other
# letter opens a new block, or is a self-loop at maximal depth.


def _block_letter(side: str, depth: int) -> str:
    """Letter of the ``depth``-th block (1-based) on the given side."""
    if depth % 2 == 1:
        return side
    return "b" if side == "t" else "t"


def _address_apply(
    side: str, blocks: tuple[int, ...], letter: str, n: int
) -> tuple[str, tuple[int, ...]]:
    """One right move in address form.  The central permutation is ('', ())."""
    if not blocks:
        return letter, (1,)
    total = sum(blocks)
    current = _block_letter(side, len(blocks))
    if letter == current:
        if total < n - 2:
            return side, blocks[:-1] + (blocks[-1] + 1,)
        if len(blocks) == 1:
            return "", ()
        return side, blocks[:-1]
    if total < n - 2:
        return side, blocks + (1,)
    return side, blocks


def completion_route(blocks: tuple[int, ...], target_pos: int, n: int) -> list[str]:
    """Letters of the unique simple route from a t-side address back up to
    the central-loop position ``target_pos``, avoiding the central
    permutation.  Requires ``blocks[0] <= target_pos <= n - 2``."""
    if not blocks or blocks[0] > target_pos:
        raise ValueError(f"no central-avoiding route from {blocks} to t^{target_pos}")
    route: list[str] = []
    work = list(blocks)
    total = sum(work)
    while len(work) > 1:
        letter = _block_letter("t", len(work))
        route.extend(letter * (n - 1 - total))
        total -= work.pop()
    route.extend("t" * (target_pos - work[0]))
    return route


# ---------------------------------------------------------------------------
# Path words
# ---------------------------------------------------------------------------


def parse_word(text: str) -> tuple[MoveKind, ...]:
    """Parse a path word such as ``"bbt"`` or the run-length form ``"b^2 t"``.

    Lowercase letters are right moves, uppercase left moves.
    """
    moves: list[MoveKind] = []
    for token in text.replace("^", " ^").split():
        if token.startswith("^"):
            if not moves:
                raise ValueError(f"dangling exponent in word: {text!r}")
            count = int(token[1:])
            if count < 1:
                raise ValueError(f"exponent must be positive: {text!r}")
            moves.extend([moves[-1]] * (count - 1))
            continue
        for ch in token:
            try:
                moves.append(MoveKind(ch))
            except ValueError:
                raise ValueError(f"unknown move letter {ch!r} in {text!r}") from None
    return tuple(moves)


def format_word(moves, run_length: bool = True) -> str:
    """Render a move sequence, collapsing runs as ``b^3 t^2`` by default."""
    letters = [m.letter for m in moves]
    if not letters:
        return ""
    if not run_length:
        return "".join(letters)
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        count = j - i
        parts.append(letters[i] if count == 1 else f"{letters[i]}^{count}")
        i = j
    return " ".join(parts)
