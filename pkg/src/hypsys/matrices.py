"""Transition matrices of Rauzy paths.

A path contributes one transvection I + E(winner, loser) per step; the
product is completed by the relabeling permutation matrix between the
path end and its start (closed case) or between the symmetric of the end
and the start (symmetric case).  Characteristic polynomials are computed
exactly, and primitivity is decided on the boolean support with the
Wielandt exponent bound, so no magnitude ever meets floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import (
    InternalInconsistencyError,
    InvalidTransvectionError,
    NotACandidatePathError,
    NotARomeError,
)
from .permutations import LabeledPermutation, MoveKind, format_word, parse_word, rauzy_move
from .polynomials import IntPolynomial


@dataclass(frozen=True)
class TransitionMatrix:
    """Immutable nonnegative integer matrix with exact helpers."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square and nonempty")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "TransitionMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, rows) -> "TransitionMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        if self.n != other.n:
            raise ValueError("size mismatch")
        bt = list(zip(*other.rows))
        return TransitionMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.rows
            )
        )

    def power(self, e: int) -> "TransitionMatrix":
        if e < 0:
            raise ValueError("negative power")
        result = TransitionMatrix.identity(self.n)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base if e > 1 else base
            e >>= 1
        return result

    def entrywise_leq(self, other: "TransitionMatrix") -> bool:
        return all(
            a <= b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def mul_vector(self, v):
        return [sum(a * x for a, x in zip(row, v)) for row in self.rows]

    def transpose(self) -> "TransitionMatrix":
        return TransitionMatrix(tuple(zip(*self.rows)))

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        n = self.n
        m = [list(r) for r in self.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def min_column_sum(self) -> int:
        """The quantity usually written delta: for a nonnegative matrix it
        bounds the spectral radius from below."""
        return min(sum(col) for col in zip(*self.rows))

    def charpoly(self) -> IntPolynomial:
        return charpoly_exact(self)

    def is_primitive(self) -> bool:
        return is_primitive(self)

    # -- text form: row-major integers, one row per line -----------------

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)

    @classmethod
    def from_text(cls, text: str) -> "TransitionMatrix":
        rows = [
            tuple(int(tok) for tok in line.split())
            for line in text.strip().splitlines()
            if line.strip()
        ]
        return cls(tuple(rows))

    def digest(self) -> str:
        import hashlib

        return hashlib.sha256(self.to_text().encode()).hexdigest()[:16]


def elementary_matrix(winner: int, loser: int, n: int) -> TransitionMatrix:
    """Identity plus a single 1 in row ``winner``, column ``loser``."""
    if winner == loser:
        raise InvalidTransvectionError(f"winner == loser == {winner}")
    if not (1 <= winner <= n and 1 <= loser <= n):
        raise InvalidTransvectionError(f"labels out of range: {winner}, {loser} (n={n})")
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    rows[winner - 1][loser - 1] = 1
    return TransitionMatrix.from_rows(rows)


def charpoly_exact(m: TransitionMatrix) -> IntPolynomial:
    """Monic characteristic polynomial det(X I - M), exactly.

    Uses the classical trace recurrence, which stays in the integers: the
    division by the step index is always exact.
    """
    n = m.n
    a = [list(r) for r in m.rows]
    b = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    coeffs_desc = [1]
    for k in range(1, n + 1):
        ab = [
            [sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
        trace = sum(ab[i][i] for i in range(n))
        if trace % k:
            raise InternalInconsistencyError("trace recurrence left a fraction")
        c = -trace // k
        coeffs_desc.append(c)
        for i in range(n):
            ab[i][i] += c
        b = ab
    return IntPolynomial(tuple(reversed(coeffs_desc)))


def is_primitive(m: TransitionMatrix) -> bool:
    """True iff some power of the support is entrywise positive.

    Powers up to the Wielandt bound (n-1)**2 + 1 decide the question, and
    only the boolean support is squared, so entries never grow.
    """
    n = m.n
    rows = [
        sum(1 << j for j, x in enumerate(row) if x > 0) for row in m.rows
    ]
    full = (1 << n) - 1
    if any(r == 0 for r in rows):
        return False
    cols = 0
    for r in rows:
        cols |= r
    if cols != full:
        return False
    bound = (n - 1) ** 2 + 1
    e = 1
    while e < bound:
        if all(r == full for r in rows):
            return True
        nxt = []
        for r in rows:
            acc = 0
            rr = r
            while rr:
                j = (rr & -rr).bit_length() - 1
                acc |= rows[j]
                rr &= rr - 1
            nxt.append(acc)
        rows = nxt
        e *= 2
    return all(r == full for r in rows)


def min_column_sum(m: TransitionMatrix) -> int:
    return m.min_column_sum()


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RauzyPath:
    """A start permutation and a word of moves, with the walk cached."""

    start: LabeledPermutation
    moves: tuple[MoveKind, ...]

    @classmethod
    def from_word(cls, start: LabeledPermutation, word: str) -> "RauzyPath":
        return cls(start, parse_word(word))

    @cached_property
    def steps(self) -> tuple[tuple[LabeledPermutation, int, int], ...]:
        """Per step: the permutation reached, the winner, the loser."""
        out = []
        p = self.start
        for move in self.moves:
            p, w, l = rauzy_move(p, move)
            out.append((p, w, l))
        return tuple(out)

    @property
    def end(self) -> LabeledPermutation:
        return self.steps[-1][0] if self.moves else self.start

    @property
    def winners(self) -> tuple[int, ...]:
        return tuple(w for _, w, _ in self.steps)

    @property
    def losers(self) -> tuple[int, ...]:
        return tuple(l for _, _, l in self.steps)

    @property
    def word(self) -> str:
        return format_word(self.moves)

    def __len__(self):
        return len(self.moves)

    def visits_permutation(self, p: LabeledPermutation) -> bool:
        """Whether the walk meets ``p`` as a reduced permutation, start and
        interior included, end excluded."""
        target = p.reduced()
        if self.start.reduced() == target:
            return True
        return any(q.reduced() == target for q, _, _ in self.steps[:-1])


def transition_product(path: RauzyPath) -> TransitionMatrix:
    """Ordered product of the step transvections (no relabeling factor)."""
    n = path.start.n
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    # Right-multiplying by I + E(w, l) adds column w to column l.
    for _, w, l in path.steps:
        wi, li = w - 1, l - 1
        for row in rows:
            row[li] += row[wi]
    return TransitionMatrix.from_rows(rows)


def relabeling_map(source: LabeledPermutation, target: LabeledPermutation) -> dict[int, int]:
    """The label bijection sending ``source`` to ``target`` position by
    position; both rows must induce the same bijection."""
    mapping: dict[int, int] = {}
    for a, b in zip(source.top, target.top):
        mapping[a] = b
    for a, b in zip(source.bottom, target.bottom):
        if mapping.get(a) != b:
            raise NotACandidatePathError(
                f"{source} and {target} are not relabelings of each other"
            )
    return mapping


def path_matrix(path: RauzyPath, kind: str = "auto") -> TransitionMatrix:
    """Matrix of a closed or symmetric path.

    The transvection product is multiplied by the permutation matrix of
    the relabeling between the end and the start (closed case) or between
    the symmetric of the end and the start (symmetric case).  ``kind`` is
    one of ``"auto"``, ``"closed"``, ``"symmetric"``.
    """
    start, end = path.start, path.end
    start_red = start.reduced()
    end_red = end.reduced()
    sym_red = start.symmetric().reduced()
    if kind == "auto":
        closed = end_red == start_red
        symmetric = end_red == sym_red
        if closed and symmetric:
            raise NotACandidatePathError(
                "start is self-symmetric; pass kind='closed' or kind='symmetric'"
            )
        if closed:
            kind = "closed"
        elif symmetric:
            kind = "symmetric"
        else:
            raise NotACandidatePathError(
                f"end {end} matches neither the start nor its symmetric "
                f"(start {start})"
            )
    if kind == "closed":
        if end_red != start_red:
            raise NotACandidatePathError(f"path is not closed: {start} -> {end}")
        source = end
    elif kind == "symmetric":
        if end_red != sym_red:
            raise NotACandidatePathError(
                f"path end is not the symmetric of its start: {start} -> {end}"
            )
        source = end.symmetric()
    else:
        raise ValueError(f"unknown kind {kind!r}")
    mapping = relabeling_map(source, start)
    tilde = transition_product(path)
    # Column beta of the result is column alpha of the product, where the
    # relabeling sends alpha to beta.
    n = start.n
    cols = list(zip(*tilde.rows))
    new_cols: list[tuple[int, ...] | None] = [None] * n
    for alpha, beta in mapping.items():
        new_cols[beta - 1] = cols[alpha - 1]
    return TransitionMatrix(tuple(zip(*new_cols)))


# ---------------------------------------------------------------------------
# The rome method
# ---------------------------------------------------------------------------


def _first_return_polynomials(m: TransitionMatrix, rome: list[int]):
    """Generating polynomials (in 1/X) of the first-return paths between
    rome vertices.  Entry [i][j] maps path length -> total weight."""
    n = m.n
    in_rome = [False] * n
    for r in rome:
        in_rome[r] = True
    table: list[list[dict[int, int]]] = [
        [dict() for _ in rome] for _ in rome
    ]
    rome_pos = {r: i for i, r in enumerate(rome)}

    for si, s in enumerate(rome):
        # Depth-first enumeration over the cycle-free complement.
        stack = [(s, 1, 0)]
        while stack:
            v, weight, length = stack.pop()
            for w in range(n):
                coef = m.rows[v][w]
                if coef == 0:
                    continue
                if in_rome[w]:
                    cell = table[si][rome_pos[w]]
                    cell[length + 1] = cell.get(length + 1, 0) + weight * coef
                else:
                    stack.append((w, weight * coef, length + 1))
    return table


def _has_cycle_avoiding(m: TransitionMatrix, rome: list[int]) -> bool:
    n = m.n
    in_rome = [False] * n
    for r in rome:
        in_rome[r] = True
    color = [0] * n  # 0 unvisited, 1 active, 2 done
    for s in range(n):
        if in_rome[s] or color[s]:
            continue
        stack = [(s, iter(range(n)))]
        color[s] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if m.rows[v][w] == 0 or in_rome[w]:
                    continue
                if color[w] == 1:
                    return True
                if color[w] == 0:
                    color[w] = 1
                    stack.append((w, iter(range(n))))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    return False


def rome_charpoly(m: TransitionMatrix, rome_vertices) -> IntPolynomial:
    """Characteristic polynomial through first-return paths over a rome.

    ``rome_vertices`` uses 1-based labels.  The determinant identity is
    evaluated over Laurent polynomials in 1/X and normalized to the monic
    convention det(X I - M).
    """
    n = m.n
    rome = sorted({int(v) - 1 for v in rome_vertices})
    if any(v < 0 or v >= n for v in rome):
        raise NotARomeError(f"vertices out of range for a {n}x{n} matrix")
    if _has_cycle_avoiding(m, rome):
        raise NotARomeError(f"a cycle avoids {sorted(v + 1 for v in rome)}")
    r = len(rome)
    table = _first_return_polynomials(m, rome)
    # Entries of V_R(X) - Id as dicts {power of 1/X: coefficient}.
    entries: list[list[dict[int, int]]] = []
    for i in range(r):
        row = []
        for j in range(r):
            cell = dict(table[i][j])
            if i == j:
                cell[0] = cell.get(0, 0) - 1
            row.append(cell)
        entries.append(row)
    det = _laurent_det(entries)
    # chi = (-1)^(n - r) * X^n * det; normalize to det(X I - M).
    sign = -1 if (n - r) % 2 else 1
    coeffs = [0] * (n + 1)
    for neg_power, c in det.items():
        e = n - neg_power
        if c and (e < 0 or e > n):
            raise NotARomeError("rome determinant produced a stray power")
        coeffs[e] += sign * c
    poly = IntPolynomial(tuple(coeffs))
    if poly.is_zero or poly.leading < 0:
        poly = -poly
    return poly


def _laurent_det(entries) -> dict[int, int]:
    r = len(entries)
    if r == 1:
        return dict(entries[0][0])
    total: dict[int, int] = {}
    for j in range(r):
        cell = entries[0][j]
        if not cell:
            continue
        minor = [
            [entries[i][jj] for jj in range(r) if jj != j] for i in range(1, r)
        ]
        sub = _laurent_det(minor)
        sign = -1 if j % 2 else 1
        for p1, c1 in cell.items():
            for p2, c2 in sub.items():
                key = p1 + p2
                total[key] = total.get(key, 0) + sign * c1 * c2
    return {k: v for k, v in total.items() if v}
