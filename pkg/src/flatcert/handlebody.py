"""Twist-decorated disk model for a spotted genus-2 handlebody.

Disks meeting the fiber curve twice correspond to arcs on the one-holed
torus base, so the unspotted model is the Farey graph.  Pushing the spot
around the annulus between the two lifts of the fiber curve adds an integer
twist coordinate; the resulting graph on (arc, twists) pairs carries the
product metric max(arc distance, twist gap), which is what the certifier
checks.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import engine
from .engine import Distance, AtLeast, ImplicitGraph
from .fareygraph import FareyGraph
from .slopes import (
    ArcSystem,
    Slope,
    disjoint,
    farey_neighbors,
    format_slope,
    parse_slope,
    stern_brocot_key,
)


@dataclass(frozen=True)
class IBundleDisk:
    """Disk in the unspotted handlebody: the thickening of an arc."""

    arc: Slope


@dataclass(frozen=True)
class SpottedDisk:
    """Disk in the spotted handlebody: an arc disk pushed k full twists."""

    arc: Slope
    twists: int

    def __str__(self) -> str:
        return format_spotted_disk(self)


def ibundle_over_arc(arc: Slope) -> IBundleDisk:
    """The disk traced out by thickening an arc; a bijection onto arc disks."""
    return IBundleDisk(arc)


def embed_disk(d: IBundleDisk) -> SpottedDisk:
    """Embed an unspotted disk as the untwisted spotted disk over its arc."""
    return SpottedDisk(d.arc, 0)


def push_disk(x: SpottedDisk, n: int) -> SpottedDisk:
    """Push the spot n full turns; a graph automorphism shifting twists by n."""
    return SpottedDisk(x.arc, x.twists + n)


def base_arc(x: SpottedDisk) -> Slope:
    """Retract a spotted disk to its arc; kills all twisting."""
    return x.arc


def twist_coordinate(x: SpottedDisk) -> int:
    """The twist count of a spotted disk (exact in this model)."""
    return x.twists


def disk_coordinates(x: SpottedDisk) -> tuple[Slope, int]:
    """(arc, twists): a bijection onto pairs, inverse of disk_from_coordinates."""
    return (base_arc(x), twist_coordinate(x))


def disk_from_coordinates(arc: Slope, twists: int) -> SpottedDisk:
    return SpottedDisk(arc, twists)


def leading_arc(system: ArcSystem) -> Slope:
    """Deterministic choice of a component of a disk's boundary trace.

    Takes the Stern-Brocot-least slope; a singleton system yields its
    element, and any two admissible choices from one system are disjoint
    because the system is.
    """
    return min(system.arcs, key=stern_brocot_key)


def annular_intersection(k: int, ell: int) -> int:
    """Essential intersections between the k- and ell-fold twists of one disk.

    Equals max(2|k - ell| - 2, 0): twist gaps of at most one are
    realizable disjointly, and each further turn adds two crossings in the
    annulus around the spot.
    """
    return max(2 * abs(k - ell) - 2, 0)


class SpottedDiskGraph(ImplicitGraph[SpottedDisk]):
    """The union of all twisted copies of the arc-disk family, as a graph.

    (a, k) ~ (b, l) iff the vertices are distinct, the arcs are disjoint,
    and |k - l| <= 1.  Arc heights are capped like in FareyGraph; twists
    are unbounded.  ``twist_gap`` widens the twist rule and exists only so
    the verification suite can prove it would catch a wrong rule.
    """

    def __init__(self, height_cap: int, *, twist_gap: int = 1):
        if height_cap < 1:
            raise ValueError("height_cap must be >= 1")
        if twist_gap < 1:
            raise ValueError("twist_gap must be >= 1")
        super().__init__(name="omega(g=2)")
        self.height_cap = height_cap
        self.twist_gap = twist_gap

    def contains(self, v: SpottedDisk) -> bool:
        return isinstance(v, SpottedDisk) and v.arc.height() <= self.height_cap

    def _compute_neighbors(self, v: SpottedDisk) -> list[SpottedDisk]:
        bases = [v.arc] + farey_neighbors(v.arc, self.height_cap)
        gap = self.twist_gap
        out = [
            SpottedDisk(b, v.twists + dk)
            for b in bases
            for dk in range(-gap, gap + 1)
        ]
        out.remove(v)
        out.sort(key=self.sort_key)
        return out

    def adjacent(self, u: SpottedDisk, v: SpottedDisk) -> bool:
        return (
            u != v
            and disjoint(u.arc, v.arc)
            and abs(u.twists - v.twists) <= self.twist_gap
            and self.contains(u)
            and self.contains(v)
        )

    def serialize_vertex(self, v: SpottedDisk) -> str:
        return format_spotted_disk(v)

    def parse_vertex(self, text: str) -> SpottedDisk:
        return parse_spotted_disk(text)

    def sort_key(self, v: SpottedDisk):
        return (stern_brocot_key(v.arc), v.twists)


def spotted_disk_distance(
    g: SpottedDiskGraph,
    x: SpottedDisk,
    y: SpottedDisk,
    cap: int,
    *,
    max_visited: int = engine.DEFAULT_MAX_VISITED,
) -> Distance:
    """Exact BFS distance in the spotted-disk graph."""
    return engine.bfs_distance(g, x, y, cap, max_visited=max_visited)


def l1_distance(
    farey: FareyGraph,
    x: SpottedDisk,
    y: SpottedDisk,
    cap: int,
    *,
    max_visited: int = engine.DEFAULT_MAX_VISITED,
) -> Distance:
    """Arc distance plus twist gap: the l1 product metric on coordinates.

    Compares two-sidedly with the graph metric: d <= l1 <= 2 d.
    """
    gap = abs(x.twists - y.twists)
    d = engine.bfs_distance(farey, x.arc, y.arc, cap, max_visited=max_visited)
    if isinstance(d, AtLeast):
        return AtLeast(d.bound + gap)
    return d + gap


# --- text format: SpottedDisk is "p/q@k" ------------------------------------


def format_spotted_disk(x: SpottedDisk) -> str:
    return f"{format_slope(x.arc)}@{x.twists}"


def parse_spotted_disk(text: str) -> SpottedDisk:
    t = text.strip()
    arc_part, sep, twist_part = t.rpartition("@")
    if not sep:
        raise ValueError(f"not a spotted disk: {text!r}")
    try:
        return SpottedDisk(parse_slope(arc_part), int(twist_part))
    except ValueError as exc:
        raise ValueError(f"not a spotted disk: {text!r}") from exc
