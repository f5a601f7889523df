"""Exact slope arithmetic on the one-vertex boundary torus.

A slope is a primitive integer pair (x, y) in a fixed (longitude, meridian)
basis, normalized so that x >= 0, and y = 1 when x = 0.  The x coordinate is
then the (nonnegative) intersection number with the meridian (0, 1).

The module also houses the Fibonacci slope sequence s_0 = (1,0), s_1 = (1,1),
s_{i+2} = s_i + s_{i+1}, elementary moves on slope triples (diagonal flips of
the one-vertex torus triangulation), and exact comparisons against powers of
the golden ratio, done in the ring Z[sqrt(5)] so no floating point is ever
trusted for a verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class Slope:
    x: int
    y: int

    def __post_init__(self):
        if self.x == 0 and self.y == 0:
            raise ValueError("slope (0,0) is not a curve class")
        if math.gcd(self.x, self.y) != 1:
            raise ValueError(f"slope ({self.x},{self.y}) is not primitive")
        if self.x < 0 or (self.x == 0 and self.y < 0):
            raise ValueError(f"slope ({self.x},{self.y}) is not normalized")

    def __str__(self):
        return f"({self.x},{self.y})"

    def to_json(self):
        return [self.x, self.y]


def normalize_slope(x, y):
    """Primitive, sign-normalized slope for an integer homology class."""
    if x == 0 and y == 0:
        raise ValueError("zero class has no slope")
    g = math.gcd(x, y)
    x, y = x // g, y // g
    if x < 0 or (x == 0 and y < 0):
        x, y = -x, -y
    return Slope(x, y)


def intersection(a: Slope, b: Slope) -> int:
    """Geometric intersection number |a.x * b.y - a.y * b.x|."""
    return abs(a.x * b.y - a.y * b.x)


def mediant(a: Slope, b: Slope) -> Slope:
    """Farey mediant of two once-intersecting slopes."""
    if intersection(a, b) != 1:
        raise ValueError(f"mediant undefined: {a} and {b} do not intersect once")
    return normalize_slope(a.x + b.x, a.y + b.y)


@dataclass(frozen=True)
class SlopeTriple:
    """The three boundary edge slopes of a one-vertex torus triangulation.

    Pairwise intersection numbers are 1, and one slope is (up to sign) the
    sum of the other two, i.e. the triple spans a triangle of the Farey
    tessellation.
    """

    slopes: frozenset

    def __init__(self, slopes):
        slopes = frozenset(slopes)
        if len(slopes) != 3:
            raise ValueError("a slope triple needs three distinct slopes")
        a, b, c = sorted(slopes)
        for u, v in ((a, b), (a, c), (b, c)):
            if intersection(u, v) != 1:
                raise ValueError(f"{u} and {v} do not intersect once")
        if not (mediant(a, b) in (c,) or mediant(a, c) in (b,) or mediant(b, c) in (a,)):
            # one slope must be the mediant of the other two
            raise ValueError(f"{sorted(slopes)} is not a Farey triangle")
        object.__setattr__(self, "slopes", slopes)

    def __iter__(self):
        return iter(sorted(self.slopes))

    def __contains__(self, s):
        return s in self.slopes

    def others(self, s: Slope):
        if s not in self.slopes:
            raise ValueError(f"{s} is not in the triple")
        return tuple(sorted(self.slopes - {s}))

    def __str__(self):
        return "{" + ", ".join(str(s) for s in self) + "}"


def elementary_move(t: SlopeTriple, removed: Slope) -> SlopeTriple:
    """Flip the removed edge of a one-vertex torus triangulation.

    Removing one edge of the triangulation merges its two triangles into a
    square; the move inserts the other diagonal of that square.  In slope
    terms the two diagonals are the sum and the difference of the two kept
    slopes, and the inserted one is whichever of those the removed slope is
    not.  Removing the mediant of the kept pair therefore backtracks along
    the Farey tree rather than reinserting the removed slope.
    """
    a, b = t.others(removed)
    total = normalize_slope(a.x + b.x, a.y + b.y)
    diff = normalize_slope(a.x - b.x, a.y - b.y)
    inserted = diff if removed == total else total
    if removed not in (total, diff):
        raise ValueError(f"{removed} is not a diagonal of the square spanned by {a}, {b}")
    return SlopeTriple({a, b, inserted})


def fib(n: int) -> int:
    """Fibonacci numbers with fib(0) = 0, fib(1) = 1, any integer index."""
    if n < 0:
        f = fib(-n)
        return -f if n % 2 == 0 else f
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def lucas(n: int) -> int:
    """Lucas numbers, lucas(0) = 2, lucas(1) = 1, any integer index."""
    if n < 0:
        v = lucas(-n)
        return v if n % 2 == 0 else -v
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def slope_seq(i: int) -> Slope:
    """The i-th slope of the layered family: s_i = (fib(i+1), fib(i))."""
    if i < 0:
        raise ValueError("slope sequence starts at index 0")
    return Slope(fib(i + 1), fib(i))


def base_triple() -> SlopeTriple:
    return SlopeTriple({slope_seq(0), slope_seq(1), slope_seq(2)})


def binet_check(i: int) -> bool:
    """Does the recursion value fib(i) agree with the rounded Binet form?

    Floating point stays exact for Fibonacci numbers below 2**53, i.e. up
    to index 78; larger indices are refused rather than silently rounded.
    """
    if i < 0:
        raise ValueError("index must be nonnegative")
    if i > 78:
        raise ValueError("rounded Binet form exceeds double precision beyond index 78")
    sqrt5 = math.sqrt(5.0)
    phi = (1.0 + sqrt5) / 2.0
    psi = (1.0 - sqrt5) / 2.0
    return round((phi ** i - psi ** i) / sqrt5) == fib(i)


def golden_power_cmp(value, k: int) -> int:
    """Exact sign of (value - phi**k) for a rational value and integer k.

    Uses phi**k = (lucas(k) + fib(k)*sqrt(5)) / 2 and compares by squaring,
    so the verdict is exact integer arithmetic throughout.
    """
    value = Fraction(value)
    # value - phi**k  has the sign of  a - b*sqrt(5)
    a = 2 * value - lucas(k)
    b = fib(k)
    if b >= 0:
        if a <= 0:
            return 0 if a == 0 and b == 0 else -1
        cmp = a * a - 5 * b * b
    else:
        if a >= 0:
            return 1
        cmp = 5 * b * b - a * a
    return (cmp > 0) - (cmp < 0)


def at_least_golden_power(value, k: int) -> bool:
    """Exact test value >= phi**k."""
    return golden_power_cmp(value, k) >= 0
