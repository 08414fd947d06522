"""Exact plane geometry over the rationals and single quadratic extensions.

Coordinates are pairs of `fractions.Fraction` and every predicate returns
an exact sign.  Quantities attached to a quadratic event time (roots of a
collinearity polynomial of a moving vertex/edge pair) are carried as
a + b*sqrt(d) and compared without rounding.  There is no float fallback
anywhere: degeneracies must surface as typed outcomes, not tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Sequence

Point = tuple[Fraction, Fraction]
Segment = tuple[Point, Point]


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"float coordinate {x!r}; supply int, str or Fraction")
    return Fraction(x)


def point(x, y) -> Point:
    """Build an exact point; floats are refused to protect exactness."""
    return (_frac(x), _frac(y))


def sign_of(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of twice the signed area of the triangle (p, q, r)."""
    return sign_of((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]))


class SegmentRelation(Enum):
    DISJOINT = "disjoint"
    TRANSVERSAL_CROSS = "transversal_cross"
    SHARED_ENDPOINT_ONLY = "shared_endpoint_only"
    DEGENERATE = "degenerate"


def _on_closed_segment(pt: Point, seg: Segment) -> str | None:
    """Classify pt against the closed segment: 'endpoint', 'interior' or None.

    Assumes nothing; collinearity is checked here.
    """
    a, b = seg
    if orient(a, b, pt) != 0:
        return None
    d1 = (pt[0] - a[0]) * (b[0] - a[0]) + (pt[1] - a[1]) * (b[1] - a[1])
    d2 = (pt[0] - b[0]) * (a[0] - b[0]) + (pt[1] - b[1]) * (a[1] - b[1])
    if d1 < 0 or d2 < 0:
        return None
    if d1 == 0 or d2 == 0:
        return "endpoint"
    return "interior"


def segment_relation(s1: Segment, s2: Segment) -> SegmentRelation:
    """Exact classification of how two positive-length segments meet.

    DEGENERATE covers collinear overlap and an endpoint of one segment in
    the interior of the other; these are the cases downstream sign logic
    must never silently count.
    """
    (p, q), (r, s) = s1, s2
    if p == q or r == s:
        raise ValueError("zero-length segment")
    o1 = orient(p, q, r)
    o2 = orient(p, q, s)
    o3 = orient(r, s, p)
    o4 = orient(r, s, q)
    if o1 and o2 and o3 and o4:
        if o1 != o2 and o3 != o4:
            return SegmentRelation.TRANSVERSAL_CROSS
        return SegmentRelation.DISJOINT
    if o1 == 0 and o2 == 0:
        # Collinear segments: compare 1-d shadows along a non-constant axis.
        axis = 0 if p[0] != q[0] else 1
        a1, b1 = sorted((p[axis], q[axis]))
        a2, b2 = sorted((r[axis], s[axis]))
        lo, hi = max(a1, a2), min(b1, b2)
        if lo < hi:
            return SegmentRelation.DEGENERATE
        if lo == hi:
            return SegmentRelation.SHARED_ENDPOINT_ONLY
        return SegmentRelation.DISJOINT
    touches = []
    for pt, seg in ((r, s1), (s, s1), (p, s2), (q, s2)):
        where = _on_closed_segment(pt, seg)
        if where is not None:
            touches.append(where)
    if not touches:
        return SegmentRelation.DISJOINT
    if "interior" in touches:
        return SegmentRelation.DEGENERATE
    return SegmentRelation.SHARED_ENDPOINT_ONLY


def _rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadNum:
    """An element a + b*sqrt(d) of a real quadratic field, d >= 0 rational.

    Canonical form: b = 0 and d = 0 whenever the value is rational (in
    particular when d is a perfect square).  Arithmetic is closed within a
    single field; mixing two distinct irrational fields raises.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self):
        a, b, d = _frac(self.a), _frac(self.b), _frac(self.d)
        if d < 0:
            raise ValueError("negative discriminant")
        if b == 0 or d == 0:
            b, d = Fraction(0), Fraction(0)
        else:
            root = _rational_sqrt(d)
            if root is not None:
                a, b, d = a + b * root, Fraction(0), Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        if self.b == 0:
            return sign_of(self.a)
        if self.a == 0:
            return sign_of(self.b)
        sa, sb = sign_of(self.a), sign_of(self.b)
        if sa == sb:
            return sa
        # a and b*sqrt(d) pull in opposite directions: compare squares.
        diff = self.a * self.a - self.b * self.b * self.d
        if diff == 0:
            return 0
        return sa if diff > 0 else sb

    def _coerced(self, other) -> "QuadNum":
        if isinstance(other, QuadNum):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(Fraction(other))
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "QuadNum":
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        if self.b == 0:
            return QuadNum(self.a + o.a, o.b, o.d)
        if o.b == 0:
            return QuadNum(self.a + o.a, self.b, self.d)
        if self.d != o.d:
            raise ValueError("mixed quadratic fields")
        return QuadNum(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> "QuadNum":
        return QuadNum(-self.a, -self.b, self.d)

    def __sub__(self, other) -> "QuadNum":
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "QuadNum":
        return (-self) + other

    def __mul__(self, other) -> "QuadNum":
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        if self.b == 0:
            return QuadNum(self.a * o.a, self.a * o.b, o.d)
        if o.b == 0:
            return QuadNum(self.a * o.a, self.b * o.a, self.d)
        if self.d != o.d:
            raise ValueError("mixed quadratic fields")
        return QuadNum(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.d})"


@dataclass(frozen=True)
class QuadPoly:
    """c2*t**2 + c1*t + c0 with rational coefficients."""

    c2: Fraction
    c1: Fraction
    c0: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c2", _frac(self.c2))
        object.__setattr__(self, "c1", _frac(self.c1))
        object.__setattr__(self, "c0", _frac(self.c0))

    @property
    def is_zero(self) -> bool:
        return self.c2 == 0 and self.c1 == 0 and self.c0 == 0

    def __call__(self, t: Fraction) -> Fraction:
        return (self.c2 * t + self.c1) * t + self.c0

    def at(self, t: QuadNum) -> QuadNum:
        return (t * self.c2 + self.c1) * t + self.c0


def roots_in_open_unit_interval(p: QuadPoly) -> list[tuple[QuadNum, int]]:
    """Exact roots of p in (0, 1) as (root, multiplicity), ascending.

    Raises ValueError on the identically-zero polynomial: the caller owns
    that degeneracy.
    """
    if p.is_zero:
        raise ValueError("identically zero polynomial has no isolated roots")
    found: list[tuple[QuadNum, int]] = []
    if p.c2 == 0:
        if p.c1 != 0:
            found.append((QuadNum(Fraction(-p.c0, p.c1)), 1))
    else:
        disc = p.c1 * p.c1 - 4 * p.c2 * p.c0
        if disc == 0:
            found.append((QuadNum(Fraction(-p.c1, 2 * p.c2)), 2))
        elif disc > 0:
            centre = Fraction(-p.c1, 2 * p.c2)
            spread = Fraction(1, 2 * p.c2)
            r1 = QuadNum(centre, -spread, disc)
            r2 = QuadNum(centre, spread, disc)
            lo, hi = (r1, r2) if (r2 - r1).sign() > 0 else (r2, r1)
            found.extend([(lo, 1), (hi, 1)])
    return [(r, m) for (r, m) in found if r.sign() > 0 and (r - 1).sign() < 0]


def sign_at(coeffs: Sequence[Fraction], t0: QuadNum) -> int:
    """Exact sign of a rational polynomial (descending coefficients) at t0."""
    acc = QuadNum(Fraction(0))
    for c in coeffs:
        acc = acc * t0 + _frac(c)
    return acc.sign()


def _lin_mul(u0: Fraction, u1: Fraction, v0: Fraction, v1: Fraction):
    """(u0 + u1 t)(v0 + v1 t) -> quadratic coefficient triple (c2, c1, c0)."""
    return u1 * v1, u0 * v1 + u1 * v0, u0 * v0


def motion_collinearity_poly(
    v_start: Point, v_end: Point,
    a_start: Point, a_end: Point,
    b_start: Point, b_end: Point,
) -> QuadPoly:
    """Signed area of (v(t), a(t), b(t)) under linear interpolation.

    Roots in (0, 1) are the candidate times at which the vertex path v(t)
    meets the line through the moving edge (a(t), b(t)).
    """
    # Linear coordinate differences, written as (value at 0, slope).
    px, px1 = b_start[0] - a_start[0], (b_end[0] - a_end[0]) - (b_start[0] - a_start[0])
    ry, ry1 = b_start[1] - a_start[1], (b_end[1] - a_end[1]) - (b_start[1] - a_start[1])
    sx, sx1 = v_start[0] - a_start[0], (v_end[0] - a_end[0]) - (v_start[0] - a_start[0])
    qy, qy1 = v_start[1] - a_start[1], (v_end[1] - a_end[1]) - (v_start[1] - a_start[1])
    t2a, t1a, t0a = _lin_mul(px, px1, qy, qy1)
    t2b, t1b, t0b = _lin_mul(ry, ry1, sx, sx1)
    return QuadPoly(t2a - t2b, t1a - t1b, t0a - t0b)


def motion_betweenness_polys(
    v_start: Point, v_end: Point,
    a_start: Point, a_end: Point,
    b_start: Point, b_end: Point,
) -> tuple[QuadPoly, QuadPoly, QuadPoly]:
    """Quadratics (v-a).(b-a), (v-b).(a-b) and |b-a|^2 along the motion.

    At a collinearity root both dot products strictly positive means the
    vertex sits strictly between the edge endpoints.
    """
    px, px1 = b_start[0] - a_start[0], (b_end[0] - a_end[0]) - (b_start[0] - a_start[0])
    ry, ry1 = b_start[1] - a_start[1], (b_end[1] - a_end[1]) - (b_start[1] - a_start[1])
    sx, sx1 = v_start[0] - a_start[0], (v_end[0] - a_end[0]) - (v_start[0] - a_start[0])
    qy, qy1 = v_start[1] - a_start[1], (v_end[1] - a_end[1]) - (v_start[1] - a_start[1])

    def add3(u, v):
        return QuadPoly(u[0] + v[0], u[1] + v[1], u[2] + v[2])

    dot_va = add3(_lin_mul(sx, sx1, px, px1), _lin_mul(qy, qy1, ry, ry1))
    len2 = add3(_lin_mul(px, px1, px, px1), _lin_mul(ry, ry1, ry, ry1))
    # (v-b).(a-b) = |b-a|^2 - (v-a).(b-a)
    dot_vb = QuadPoly(len2.c2 - dot_va.c2, len2.c1 - dot_va.c1, len2.c0 - dot_va.c0)
    return dot_va, dot_vb, len2


# Rational points on the unit circle via the half-angle parametrization.
# t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)) is increasing in the angle on (-pi, pi)
# and misses only (-1, 0).

def unit_circle_point(t: Fraction) -> Point:
    t = _frac(t)
    den = 1 + t * t
    return (Fraction(1 - t * t, 1) / den, 2 * t / den)


def on_unit_circle(p: Point) -> bool:
    return p[0] * p[0] + p[1] * p[1] == 1


def inside_unit_circle(p: Point) -> bool:
    return p[0] * p[0] + p[1] * p[1] < 1


def unit_circle_param(p: Point) -> Fraction | None:
    """Inverse of unit_circle_point; None encodes the missing point (-1, 0)."""
    if not on_unit_circle(p):
        raise ValueError(f"{p} is not on the unit circle")
    if p[0] == -1:
        return None
    return p[1] / (1 + p[0])


def circle_sort_key(p: Point) -> tuple[int, Fraction]:
    """Sort key realizing the counterclockwise order of unit-circle points.

    Ascending keys sweep the angle from just above -pi around to +pi,
    with (-1, 0) greatest.
    """
    t = unit_circle_param(p)
    if t is None:
        return (1, Fraction(0))
    return (0, t)
