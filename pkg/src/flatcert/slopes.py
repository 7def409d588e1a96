"""Exact slope arithmetic for essential arcs on a one-holed torus.

Arcs are coordinatized by reduced fractions p/q (plus the slope at infinity,
stored as 1/0): two arcs can be made disjoint exactly when the cross
determinant |p*s - q*r| of their slopes is at most 1.  Twisted copies of an
arc in the spotted surface are tracked by an integer twist count whose unit
(full or half turns around the spot) is carried in the type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator


class UnitError(ValueError):
    """An operation received a twist count in the wrong unit."""


@total_ordering
@dataclass(frozen=True)
class Slope:
    """A reduced fraction p/q with q >= 0; the slope at infinity is 1/0.

    Instances must be canonical (use :func:`canonicalize`); equal slopes
    compare equal bitwise.  Ordering is the Stern-Brocot order described in
    :func:`stern_brocot_key`, not numeric order.
    """

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 0:
            raise ValueError(f"slope {self.p}/{self.q} not canonical: q < 0")
        if self.q == 0:
            if self.p != 1:
                raise ValueError(f"slope {self.p}/0 not canonical: infinity is 1/0")
        elif math.gcd(abs(self.p), self.q) != 1:
            raise ValueError(f"slope {self.p}/{self.q} not canonical: not reduced")

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def height(self) -> int:
        """max(|p|, q), the enumeration size of the slope."""
        return max(abs(self.p), self.q)

    def __lt__(self, other: "Slope") -> bool:
        return stern_brocot_key(self) < stern_brocot_key(other)

    def __str__(self) -> str:
        return format_slope(self)


INFINITY = Slope(1, 0)


def canonicalize(p: int, q: int) -> Slope:
    """Reduce (p, q) to the unique canonical slope; rejects (0, 0)."""
    if p == 0 and q == 0:
        raise ValueError("slope (0, 0) is undefined")
    if q == 0:
        return INFINITY
    if q < 0:
        p, q = -p, -q
    g = math.gcd(abs(p), q)
    return Slope(p // g, q // g)


def pairing(a: Slope, b: Slope) -> int:
    """|a.p*b.q - a.q*b.p|: symmetric, zero exactly on equal slopes."""
    return abs(a.p * b.q - a.q * b.p)


def disjoint(a: Slope, b: Slope) -> bool:
    """Whether the arcs can be realized disjointly (pairing at most 1).

    Equal slopes count as disjoint; graph adjacency additionally requires
    distinctness.
    """
    return pairing(a, b) <= 1


@lru_cache(maxsize=None)
def stern_brocot_key(s: Slope) -> tuple[int, Fraction]:
    """Sort key realizing the mediant-tree order on slopes.

    Infinity sorts first.  A rational sorts by its depth in the mediant tree
    of all rationals rooted at 0/1 (the sum of its continued-fraction
    quotients), with numeric order breaking ties within a depth.  This is the
    breadth-first order of the tree and is used everywhere a deterministic
    choice among slopes is needed.
    """
    if s.q == 0:
        return (-1, Fraction(0))
    a, b = abs(s.p), s.q
    depth = 0
    while b:
        depth += a // b
        a, b = b, a % b
    return (depth, Fraction(s.p, s.q))


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with a*s + b*t = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    return old_r, old_s, old_t


def farey_neighbors(a: Slope, height_cap: int) -> list[Slope]:
    """All slopes b != a with pairing(a, b) = 1 and height(b) <= height_cap.

    Solutions of the two linear Diophantine families p*y - q*x = +-1 are
    enumerated directly, so the cost is proportional to the output size.
    Returned in Stern-Brocot order.
    """
    if height_cap < 1:
        raise ValueError("height_cap must be >= 1")
    cap = height_cap
    if a.is_infinity:
        found = {canonicalize(n, 1) for n in range(-cap, cap + 1)}
    else:
        p, q = a.p, a.q
        g, s, t = _egcd(p, q)
        assert g == 1
        found = set()
        for eps in (1, -1):
            # base solution of p*y - q*x = eps, family (x0 + k*p, y0 + k*q)
            x0, y0 = -t * eps, s * eps
            k_lo = -((cap + y0) // q)
            k_hi = (cap - y0) // q
            for k in range(k_lo, k_hi + 1):
                x, y = x0 + k * p, y0 + k * q
                if abs(x) <= cap:
                    found.add(canonicalize(x, y))
    return sorted(found, key=stern_brocot_key)


class TwistUnit(Enum):
    """Unit of the twist count on a spotted arc: full or half turns."""

    FULL = "full"
    HALF = "half"


@dataclass(frozen=True)
class SpottedArc:
    """An arc in the spotted surface: base slope plus a twist count.

    The unit records whether twists are counted in full pushes of the spot
    (disk model) or half twists across the marked boundary point (sphere
    model); operations never mix the two.
    """

    base: Slope
    twist: int
    unit: TwistUnit

    def __str__(self) -> str:
        return format_spotted_arc(self)


def half_twist(x: SpottedArc) -> SpottedArc:
    """Slide one endpoint across the marked point: twist + 1, half units only."""
    if x.unit is not TwistUnit.HALF:
        raise UnitError("half_twist is defined on half-unit arcs only")
    return SpottedArc(x.base, x.twist + 1, x.unit)


def point_push(x: SpottedArc, n: int) -> SpottedArc:
    """Push the spot n full turns: +n full twists, or +2n half twists."""
    if x.unit is TwistUnit.FULL:
        return SpottedArc(x.base, x.twist + n, x.unit)
    return SpottedArc(x.base, x.twist + 2 * n, x.unit)


def spot_forget(x: SpottedArc) -> Slope:
    """Forget the spot: the base slope, invariant under all twisting."""
    return x.base


@dataclass(frozen=True)
class ArcSystem:
    """A nonempty set of pairwise disjoint slopes (a disk boundary trace)."""

    arcs: frozenset[Slope]

    def __post_init__(self) -> None:
        if not isinstance(self.arcs, frozenset):
            object.__setattr__(self, "arcs", frozenset(self.arcs))
        if not self.arcs:
            raise ValueError("arc system must be nonempty")
        items = sorted(self.arcs, key=stern_brocot_key)
        for i, a in enumerate(items):
            for b in items[i + 1 :]:
                if not disjoint(a, b):
                    raise ValueError(f"arcs {a} and {b} are not disjoint")

    @classmethod
    def of(cls, arcs: Iterable[Slope]) -> "ArcSystem":
        return cls(frozenset(arcs))

    def __iter__(self) -> Iterator[Slope]:
        return iter(sorted(self.arcs, key=stern_brocot_key))

    def __len__(self) -> int:
        return len(self.arcs)


# --- text formats ----------------------------------------------------------
#
# Slope            "p/q"            ("inf" for 1/0)
# SpottedArc       "p/q@k:full"     or "p/q@k:half"


def format_slope(s: Slope) -> str:
    return "inf" if s.q == 0 else f"{s.p}/{s.q}"


def parse_slope(text: str) -> Slope:
    t = text.strip()
    if t == "inf":
        return INFINITY
    try:
        if "/" in t:
            num, den = t.split("/", 1)
            return canonicalize(int(num), int(den))
        return canonicalize(int(t), 1)
    except ValueError as exc:
        raise ValueError(f"not a slope: {text!r}") from exc


def format_spotted_arc(x: SpottedArc) -> str:
    return f"{format_slope(x.base)}@{x.twist}:{x.unit.value}"


def parse_spotted_arc(text: str) -> SpottedArc:
    t = text.strip()
    base_part, sep, rest = t.rpartition("@")
    if not sep or ":" not in rest:
        raise ValueError(f"not a spotted arc: {text!r}")
    twist_part, unit_part = rest.split(":", 1)
    try:
        unit = TwistUnit(unit_part)
        return SpottedArc(parse_slope(base_part), int(twist_part), unit)
    except ValueError as exc:
        raise ValueError(f"not a spotted arc: {text!r}") from exc
