"""Exact arithmetic in a real algebraic number field Q(theta).

The field is presented by a square-free integer polynomial together with
an isolating interval for one of its real roots.  Elements are polynomial
residues; every sign decision is certified, either by interval refinement
or, when the value is actually zero, by a gcd computation.  The defining
polynomial need not be irreducible: whenever a zero divisor shows up the
presentation is split and the factor containing theta is kept.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalInconsistencyError
from .polynomials import IntPolynomial, count_roots_halfopen, RootEnclosure


def _to_fraction_tuple(coeffs) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class RealAlgebraicField:
    """Q(theta) for theta the unique root of ``defining`` in (lo, hi)."""

    def __init__(self, defining: IntPolynomial, lo: Fraction, hi: Fraction):
        defining = defining.primitive()
        if defining.degree < 1:
            raise ValueError("defining polynomial must be nonconstant")
        self._p = defining
        self._lo = Fraction(lo)
        self._hi = Fraction(hi)
        if count_roots_halfopen(self._p, self._lo, self._hi) != 1:
            raise ValueError("interval does not isolate a single root")
        if self._p.sign_at(self._lo) == 0 or self._p.sign_at(self._hi) == 0:
            raise ValueError("interval endpoints must not be roots")

    # -- presentation ----------------------------------------------------

    @property
    def defining(self) -> IntPolynomial:
        return self._p

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self._lo, self._hi

    @property
    def degree(self) -> int:
        return self._p.degree

    def enclosure(self, width: Fraction | None = None) -> RootEnclosure:
        enc = RootEnclosure(self._p, self._lo, self._hi)
        return enc.refined(width) if width is not None else enc

    @classmethod
    def from_enclosure(cls, enc: RootEnclosure) -> "RealAlgebraicField":
        return cls(enc.defining, enc.lo, enc.hi)

    def _refine_interval(self):
        mid = (self._lo + self._hi) / 2
        s = self._p.sign_at(mid)
        if s == 0:
            # theta is exactly rational; shrink to a bracketing interval.
            quarter = (self._hi - self._lo) / 4
            lo, hi = mid - quarter, mid + quarter
            while self._p.sign_at(lo) == 0:
                lo = (lo + mid) / 2
            while self._p.sign_at(hi) == 0:
                hi = (mid + hi) / 2
            self._lo, self._hi = lo, hi
            return
        if s == self._p.sign_at(self._lo):
            self._lo = mid
        else:
            self._hi = mid

    def _shrink_defining(self, factor: IntPolynomial):
        """Replace the defining polynomial by the factor that still has
        theta as a root.  Residues held by elements stay valid: they are
        only ever read through their value at theta."""
        self._p = factor.primitive()
        while self._p.sign_at(self._lo) == 0 or self._p.sign_at(self._hi) == 0:
            self._refine_interval()

    # -- residue arithmetic ------------------------------------------------

    def _mod(self, coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        p = self._p
        d = p.degree
        out = list(coeffs)
        lead = Fraction(p.leading)
        while len(out) - 1 >= d:
            f = out[-1] / lead
            k = len(out) - 1 - d
            for i in range(d + 1):
                out[k + i] -= f * p.coeffs[i]
            out.pop()
            while out and out[-1] == 0:
                out.pop()
        return tuple(out)

    def element(self, coeffs) -> "AlgebraicNumber":
        return AlgebraicNumber(self, self._mod(_to_fraction_tuple(coeffs)))

    def theta(self) -> "AlgebraicNumber":
        return self.element((0, 1))

    def zero(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self, ())

    def one(self) -> "AlgebraicNumber":
        return self.element((1,))

    def _mul(self, a: tuple[Fraction, ...], b: tuple[Fraction, ...]):
        if not a or not b:
            return ()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self._mod(tuple(out))

    def _interval_value(self, coeffs) -> tuple[Fraction, Fraction]:
        """Enclosing interval of the residue value on the current theta
        interval.  Requires lo > 0, which holds for every field built
        here (theta > 1)."""
        lo, hi = self._lo, self._hi
        if lo <= 0:
            raise InternalInconsistencyError("interval evaluation needs theta > 0")
        vlo = Fraction(0)
        vhi = Fraction(0)
        plo = Fraction(1)
        phi = Fraction(1)
        for c in coeffs:
            if c >= 0:
                vlo += c * plo
                vhi += c * phi
            else:
                vlo += c * phi
                vhi += c * plo
            plo *= lo
            phi *= hi
        return vlo, vhi

    def sign(self, coeffs) -> int:
        coeffs = self._mod(_to_fraction_tuple(coeffs))
        if not coeffs:
            return 0
        if len(coeffs) == 1:
            v = coeffs[0]
            return (v > 0) - (v < 0)
        for _ in range(8):
            vlo, vhi = self._interval_value(coeffs)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            self._refine_interval()
        # Rule the zero case in or out exactly, then refinement must finish.
        q = _fraction_poly_to_int(coeffs)
        g = q.gcd(self._p)
        if g.degree >= 1 and count_roots_halfopen(g, self._lo, self._hi) >= 1:
            return 0
        while True:
            vlo, vhi = self._interval_value(coeffs)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            self._refine_interval()

    def inverse(self, coeffs) -> tuple[Fraction, ...]:
        coeffs = self._mod(_to_fraction_tuple(coeffs))
        while True:
            if not coeffs:
                raise ZeroDivisionError("inverse of zero in Q(theta)")
            g, u = _ext_gcd_mod(coeffs, self._p)
            if len(g) == 1:
                inv = tuple(c / g[0] for c in u)
                return self._mod(inv)
            gi = _fraction_poly_to_int(g)
            if count_roots_halfopen(gi, self._lo, self._hi) >= 1:
                self._shrink_defining(gi)
            else:
                quo, rem = self._p.divmod_rational(gi)
                if rem:
                    raise InternalInconsistencyError("gcd failed to divide")
                from .polynomials import _rational_to_primitive

                self._shrink_defining(_rational_to_primitive(quo))
            coeffs = self._mod(coeffs)


def _fraction_poly_to_int(coeffs) -> IntPolynomial:
    den = 1
    for f in coeffs:
        den = den * f.denominator // __import__("math").gcd(den, f.denominator)
    return IntPolynomial(tuple(int(f * den) for f in coeffs)).primitive()


def _ext_gcd_mod(a, p: IntPolynomial):
    """Extended gcd of the residue ``a`` with the defining polynomial.

    Returns (g, u) with u*a = g modulo p, both as Fraction tuples, g monic.
    """
    r0 = _to_fraction_tuple(p.coeffs)
    r1 = _to_fraction_tuple(a)
    s0: tuple[Fraction, ...] = ()
    s1: tuple[Fraction, ...] = (Fraction(1),)
    while r1:
        q, rem = _poly_divmod_fr(r0, r1)
        r0, r1 = r1, tuple(rem)
        s0, s1 = s1, _poly_sub_fr(s0, _poly_mul_fr(q, s1))
    lead = r0[-1]
    g = tuple(c / lead for c in r0)
    u = tuple(c / lead for c in s0)
    return g, u


def _poly_divmod_fr(a, b):
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    quo = [Fraction(0)] * max(len(rem) - db, 0)
    while len(rem) - 1 >= db and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < db:
            break
        k = len(rem) - 1 - db
        f = rem[-1] / lead
        quo[k] = f
        for i in range(db + 1):
            rem[k + i] -= f * b[i]
        rem.pop()
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(quo), tuple(rem)


def _poly_mul_fr(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_sub_fr(a, b):
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class AlgebraicNumber:
    """An element of a shared :class:`RealAlgebraicField`.

    Supports ring arithmetic, exact comparisons, and inversion.  Ordering
    comparisons go through the field's certified sign routine.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: RealAlgebraicField, coeffs):
        self.field = field
        self.coeffs = _to_fraction_tuple(coeffs)

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field:
                raise ValueError("mixing elements of different fields")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return _to_fraction_tuple((Fraction(other),))
        return None

    def __add__(self, other):
        coeffs = self._coerce(other)
        if coeffs is None:
            return NotImplemented
        out = list(self.coeffs) + [Fraction(0)] * max(0, len(coeffs) - len(self.coeffs))
        for i, c in enumerate(coeffs):
            out[i] += c
        return AlgebraicNumber(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        coeffs = self._coerce(other)
        if coeffs is None:
            return NotImplemented
        return self + AlgebraicNumber(self.field, tuple(-c for c in coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        coeffs = self._coerce(other)
        if coeffs is None:
            return NotImplemented
        return AlgebraicNumber(self.field, self.field._mul(self.coeffs, coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        return AlgebraicNumber(self.field, self.field.inverse(self.coeffs))

    def __truediv__(self, other):
        coeffs = self._coerce(other)
        if coeffs is None:
            return NotImplemented
        return self * AlgebraicNumber(self.field, self.field.inverse(coeffs))

    # -- comparisons ------------------------------------------------------

    def sign(self) -> int:
        return self.field.sign(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return self.sign() == 0

    def _cmp(self, other) -> int:
        coeffs = self._coerce(other)
        if coeffs is None:
            raise TypeError(f"cannot compare with {other!r}")
        return (self - AlgebraicNumber(self.field, coeffs)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        raise TypeError("algebraic numbers are unhashable")

    # -- output -----------------------------------------------------------

    def enclosure(self, width: Fraction) -> tuple[Fraction, Fraction]:
        """A rational interval around the value, no wider than ``width``."""
        field = self.field
        coeffs = field._mod(self.coeffs)
        while True:
            lo, hi = field._interval_value(coeffs)
            if hi - lo <= width:
                return lo, hi
            field._refine_interval()

    def __repr__(self):
        lo, hi = self.enclosure(Fraction(1, 10**6))
        return f"AlgebraicNumber(~{float((lo + hi) / 2):.6f})"


def clear_denominators(values: list[AlgebraicNumber]) -> list[AlgebraicNumber]:
    """Scale a vector by a positive integer so all residues have integer
    coefficients (keeps later subtractions denominator-free)."""
    from math import gcd as _gcd

    den = 1
    for v in values:
        for c in v.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
    if den == 1:
        return values
    return [v * den for v in values]


def kernel_vector(field: RealAlgebraicField, matrix_rows, eigenvalue: AlgebraicNumber):
    """A nonzero kernel vector of (M - eigenvalue I) over Q(theta).

    ``matrix_rows`` is an integer matrix.  Raises when the matrix turns
    out to be nonsingular for this eigenvalue.
    """
    n = len(matrix_rows)
    a = [
        [
            field.element((matrix_rows[i][j],)) - (eigenvalue if i == j else field.zero())
            for j in range(n)
        ]
        for i in range(n)
    ]
    pivot_cols: list[int] = []
    row = 0
    for col in range(n):
        pivot = None
        for r in range(row, n):
            if a[r][col].sign() != 0:
                pivot = r
                break
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv = a[row][col].inverse()
        a[row] = [x * inv for x in a[row]]
        for r in range(n):
            if r != row and a[r][col].sign() != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivot_cols.append(col)
        row += 1
        if row == n:
            break
    free = [c for c in range(n) if c not in pivot_cols]
    if not free:
        raise InternalInconsistencyError("matrix is nonsingular at the eigenvalue")
    j = free[0]
    vec = [field.zero() for _ in range(n)]
    vec[j] = field.one()
    for r, col in enumerate(pivot_cols):
        vec[col] = -a[r][j]
    return vec
