"""Exact integer polynomials and certified real-root enclosures.

Every root decision in this package is made over the rationals: isolating
intervals have rational endpoints, sign evaluations are integer
computations, and equality of two algebraic numbers is settled through a
gcd computation instead of floating point.  Decimal strings are rendered
from enclosures at output time only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd as _int_gcd

from .errors import InternalInconsistencyError, NoDominantRootError

#: Default enclosure width used when deduplicating algebraically equal roots.
DEDUP_WIDTH = Fraction(1, 10**30)
#: Default enclosure width used for display purposes.
DISPLAY_WIDTH = Fraction(1, 10**12)


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients.

    Coefficients are stored in ascending order of exponent; the zero
    polynomial is the empty tuple and has degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficients required, got {c!r}")
        object.__setattr__(self, "coeffs", _trim(coeffs))

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, c: int, e: int) -> "IntPolynomial":
        if c == 0:
            return cls(())
        return cls((0,) * e + (c,))

    @classmethod
    def from_text(cls, text: str) -> "IntPolynomial":
        """Parse the ascending coefficient list form, e.g. ``"1 0 -2 -2 0 1"``."""
        return cls(tuple(int(tok) for tok in text.split()))

    # -- basic structure ----------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, e: int) -> int:
        if 0 <= e < len(self.coeffs):
            return self.coeffs[e]
        return 0

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, e: int) -> "IntPolynomial":
        """Multiply by X**e."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * e + self.coeffs)

    # -- evaluation ----------------------------------------------------

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        """Exact sign of the value at the rational point ``x``.

        Computed as the sign of ``q**deg * p(a/q)``, a pure integer sum.
        """
        if self.is_zero:
            return 0
        x = Fraction(x)
        a, q = x.numerator, x.denominator
        acc = self.coeffs[-1]
        qp = 1
        for c in reversed(self.coeffs[:-1]):
            qp *= q
            acc = acc * a + c * qp
        return (acc > 0) - (acc < 0)

    # -- derivative / content -------------------------------------------

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = _int_gcd(g, abs(c))
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide out the content; the leading coefficient is made positive."""
        if self.is_zero:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    # -- division -------------------------------------------------------

    def divmod_rational(self, other: "IntPolynomial"):
        """Quotient and remainder over the rationals.

        Returns two lists of Fractions (ascending).
        """
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        div = [Fraction(c) for c in other.coeffs]
        dd = len(div) - 1
        lead = div[-1]
        quo = [Fraction(0)] * max(len(rem) - dd, 0)
        while len(rem) - 1 >= dd and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dd:
                break
            k = len(rem) - 1 - dd
            f = rem[-1] / lead
            quo[k] = f
            for i in range(dd + 1):
                rem[k + i] -= f * div[i]
            rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
        return quo, rem

    def div_exact(self, other: "IntPolynomial") -> "IntPolynomial":
        """Exact polynomial division; raises if a remainder is left over.

        Used for the closed-form families, where divisibility is part of
        the formula: a nonzero remainder means the formula was misapplied.
        """
        quo, rem = self.divmod_rational(other)
        if rem:
            raise InternalInconsistencyError(
                f"polynomial division left a remainder: {rem}"
            )
        out = []
        for f in quo:
            if f.denominator != 1:
                raise InternalInconsistencyError(
                    f"polynomial quotient is not integral: {quo}"
                )
            out.append(f.numerator)
        return IntPolynomial(out)

    def gcd(self, other: "IntPolynomial") -> "IntPolynomial":
        """Primitive gcd with positive leading coefficient."""
        a, b = self.primitive(), other.primitive()
        while not b.is_zero:
            _, rem = a.divmod_rational(b)
            a, b = b, _rational_to_primitive(rem)
        return a.primitive() if not a.is_zero else a

    def square_free_part(self) -> "IntPolynomial":
        """The product of the distinct irreducible factors (primitive form)."""
        if self.degree <= 0:
            return self.primitive()
        g = self.gcd(self.derivative())
        if g.degree <= 0:
            return self.primitive()
        quo, rem = self.divmod_rational(g)
        if rem:
            raise InternalInconsistencyError("square-free reduction failed")
        return _rational_to_primitive(quo)

    # -- reciprocity ----------------------------------------------------

    def reversed_coeffs(self) -> "IntPolynomial":
        if self.is_zero:
            return self
        return IntPolynomial(tuple(reversed(self.coeffs)))

    @property
    def is_reciprocal(self) -> bool:
        return not self.is_zero and self.coeffs == tuple(reversed(self.coeffs))

    @property
    def is_anti_reciprocal(self) -> bool:
        return not self.is_zero and self.coeffs == tuple(-c for c in reversed(self.coeffs))

    # -- formatting -------------------------------------------------------

    def to_text(self) -> str:
        """Ascending coefficient list, e.g. ``"1 0 -2 -2 0 1"``."""
        return " ".join(str(c) for c in self.coeffs)

    def pretty(self, var: str = "X") -> str:
        """Human-readable descending form, e.g. ``X^5 - 2X^3 - 2X^2 + 1``."""
        if self.is_zero:
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            c = self[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                head = "" if mag == 1 else str(mag)
                body = f"{head}{var}" if e == 1 else f"{head}{var}^{e}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _rational_to_primitive(coeffs) -> IntPolynomial:
    """Scale a Fraction coefficient list by a positive rational to a primitive
    integer polynomial (sign of every coefficient is preserved)."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return IntPolynomial(())
    den = 1
    for f in coeffs:
        den = den * f.denominator // _int_gcd(den, f.denominator)
    ints = [int(f * den) for f in coeffs]
    g = 0
    for c in ints:
        g = _int_gcd(g, abs(c))
    return IntPolynomial(tuple(c // g for c in ints))


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------

_CHAIN_CACHE: dict[tuple[int, ...], tuple[IntPolynomial, ...]] = {}


def sturm_chain(poly: IntPolynomial) -> tuple[IntPolynomial, ...]:
    """Sturm chain of a square-free polynomial.

    Remainders are computed over the rationals and rescaled by positive
    constants, which leaves every sign evaluation unchanged.
    """
    key = poly.coeffs
    cached = _CHAIN_CACHE.get(key)
    if cached is not None:
        return cached
    chain = [poly.primitive()]
    d = poly.derivative().primitive()
    if not d.is_zero:
        chain.append(d)
        while True:
            _, rem = chain[-2].divmod_rational(chain[-1])
            nxt = _rational_to_primitive([-f for f in rem])
            if nxt.is_zero:
                break
            chain.append(nxt)
    result = tuple(chain)
    if len(_CHAIN_CACHE) > 4096:
        _CHAIN_CACHE.clear()
    _CHAIN_CACHE[key] = result
    return result


def _variations(signs) -> int:
    count = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev != 0 and s != prev:
            count += 1
        prev = s
    return count


def _variations_at(chain, x: Fraction) -> int:
    return _variations(p.sign_at(x) for p in chain)


def _variations_at_plus_infinity(chain) -> int:
    return _variations((1 if p.leading > 0 else -1) for p in chain)


def count_roots_halfopen(poly: IntPolynomial, a: Fraction, b: Fraction) -> int:
    """Number of real roots of a square-free polynomial in the interval (a, b]."""
    chain = sturm_chain(poly)
    return _variations_at(chain, a) - _variations_at(chain, b)


def count_roots_above(poly: IntPolynomial, a: Fraction) -> int:
    """Number of real roots of a square-free polynomial in (a, +oo)."""
    chain = sturm_chain(poly)
    return _variations_at(chain, a) - _variations_at_plus_infinity(chain)


def has_real_root_geq(poly_sf: IntPolynomial, c: Fraction) -> bool:
    """True iff a square-free polynomial has a real root >= c."""
    if poly_sf.sign_at(c) == 0:
        return True
    return count_roots_above(poly_sf, c) >= 1


def root_upper_bound(poly: IntPolynomial) -> Fraction:
    """A Cauchy-style rational bound above every real root."""
    lead = abs(poly.leading)
    biggest = max(abs(c) for c in poly.coeffs)
    return Fraction(1) + Fraction(biggest, lead)


# ---------------------------------------------------------------------------
# Certified enclosures
# ---------------------------------------------------------------------------


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class RootEnclosure:
    """A certified isolating interval for one simple real root.

    Invariants: ``defining`` is square-free and primitive, ``lo < hi``,
    the signs of ``defining`` at the two endpoints differ, and exactly one
    real root lies in the open interval.
    """

    defining: IntPolynomial
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("empty enclosure interval")
        slo = self.defining.sign_at(self.lo)
        shi = self.defining.sign_at(self.hi)
        if slo == 0 or shi == 0 or slo == shi:
            raise ValueError("enclosure endpoints do not bracket a sign change")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refined(self, width: Fraction) -> "RootEnclosure":
        """Shrink the interval below ``width`` by sign bisection."""
        lo, hi = self.lo, self.hi
        slo = self.defining.sign_at(lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            smid = self.defining.sign_at(mid)
            if smid == 0:
                # The root is exactly the rational midpoint; pin a thin
                # bracketing interval around it.
                delta = width / 4
                while (
                    self.defining.sign_at(mid - delta) == 0
                    or self.defining.sign_at(mid + delta) == 0
                ):
                    delta /= 3
                return RootEnclosure(self.defining, mid - delta, mid + delta)
            if smid == slo:
                lo = mid
            else:
                hi = mid
        return RootEnclosure(self.defining, lo, hi)

    def decimal(self, digits: int = 14) -> str:
        """Round-to-nearest decimal rendering at the requested precision."""
        scale = 10**digits
        half = Fraction(1, 2)
        enc = self
        while True:
            rlo = (enc.lo * scale + half).__floor__()
            rhi = (enc.hi * scale + half).__floor__()
            if rlo == rhi:
                break
            # The root may sit exactly on a rounding boundary.
            boundary = Fraction(2 * rhi - 1, 2 * scale)
            if enc.defining.sign_at(boundary) == 0:
                rlo = rhi  # ties round up
                break
            enc = enc.refined(enc.width / 16)
        negative = rlo < 0
        rlo = abs(rlo)
        whole, frac = divmod(rlo, scale)
        text = f"{whole}.{frac:0{digits}d}"
        return "-" + text if negative else text

    def contains(self, x: Fraction) -> bool:
        return self.lo < x < self.hi


def largest_real_root(
    poly: IntPolynomial,
    *,
    above: Fraction = Fraction(0),
    width: Fraction = DISPLAY_WIDTH,
) -> RootEnclosure | None:
    """Certified enclosure of the largest real root strictly above ``above``.

    Returns None when no such root exists.  ``poly`` need not be
    square-free; the square-free part is extracted first.
    """
    sf = poly.square_free_part()
    if sf.degree < 1:
        return None
    if count_roots_above(sf, above) == 0:
        return None
    lo = Fraction(above)
    hi = root_upper_bound(sf)
    # Shrink (lo, hi] until it holds exactly the largest root; no root
    # ever lies above hi.
    while count_roots_halfopen(sf, lo, hi) > 1:
        mid = (lo + hi) / 2
        if count_roots_halfopen(sf, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    shi = sf.sign_at(hi)
    if shi == 0:
        # The largest root is the rational point hi itself; bracket it.
        delta = (hi - lo) / 4
        while sf.sign_at(hi - delta) == 0 or sf.sign_at(hi + delta) == 0:
            delta /= 3
        return RootEnclosure(sf, hi - delta, hi + delta).refined(width)
    if sf.sign_at(lo) == 0:
        # lo sits exactly on a smaller root (the cutoff itself can be
        # one); walk it up into the root-free gap below the target.
        step = (hi - lo) / 2
        while True:
            cand = lo + step
            scand = sf.sign_at(cand)
            if scand != 0 and scand != shi:
                lo = cand
                break
            step /= 2
    return RootEnclosure(sf, lo, hi).refined(width)


def perron_root(poly: IntPolynomial, width: Fraction = DEDUP_WIDTH) -> RootEnclosure:
    """Certified enclosure of the largest real root, required to exceed 1.

    The input is reduced to its square-free part first; repeated factors
    and unit-circle factors such as X + 1 would otherwise break the
    sign-change certificate.
    """
    enc = largest_real_root(poly, above=Fraction(1), width=width)
    if enc is None:
        raise NoDominantRootError(
            f"no real root exceeding 1 in {poly.pretty()}"
        )
    return enc


def enclosure_of_rational(value: Fraction, width: Fraction = DISPLAY_WIDTH) -> RootEnclosure:
    """Wrap an exact rational as a degenerate one-root enclosure."""
    poly = IntPolynomial((-value.numerator, value.denominator)).primitive()
    half = width / 2
    return RootEnclosure(poly, value - half, value + half)


def compare_roots(a: RootEnclosure, b: RootEnclosure) -> Ordering:
    """Exact three-way comparison of two certified roots.

    Disjoint intervals are ordered directly.  Overlapping intervals are
    first tested for algebraic equality through the gcd of the defining
    polynomials (the roots are equal iff the gcd has a root in the
    intersection), and only then refined until they separate.
    """
    while True:
        if a.hi <= b.lo:
            return Ordering.LESS
        if b.hi <= a.lo:
            return Ordering.GREATER
        g = a.defining.gcd(b.defining)
        if g.degree >= 1:
            lo = max(a.lo, b.lo)
            hi = min(a.hi, b.hi)
            if count_roots_halfopen(g, lo, hi) >= 1:
                return Ordering.EQUAL
        a = a.refined(a.width / 16)
        b = b.refined(b.width / 16)
