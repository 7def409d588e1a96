"""The Farey graph as an implicit graph: the arc graph of a one-holed torus.

Vertices are canonical slopes, edges join slopes with cross determinant 1.
Every vertex has infinite degree, so the graph carries an explicit height
cap: it is the subgraph induced on slopes of height at most the cap.
"""

from __future__ import annotations

from .engine import ImplicitGraph
from .slopes import (
    Slope,
    farey_neighbors,
    format_slope,
    pairing,
    parse_slope,
    stern_brocot_key,
)


class FareyGraph(ImplicitGraph[Slope]):
    """Slopes of height <= height_cap, joined when their pairing is 1."""

    def __init__(self, height_cap: int):
        if height_cap < 1:
            raise ValueError("height_cap must be >= 1")
        super().__init__(name="farey")
        self.height_cap = height_cap

    def contains(self, v: Slope) -> bool:
        return isinstance(v, Slope) and v.height() <= self.height_cap

    def _compute_neighbors(self, v: Slope) -> list[Slope]:
        return farey_neighbors(v, self.height_cap)

    def adjacent(self, u: Slope, v: Slope) -> bool:
        return (
            u != v
            and pairing(u, v) == 1
            and self.contains(u)
            and self.contains(v)
        )

    def serialize_vertex(self, v: Slope) -> str:
        return format_slope(v)

    def parse_vertex(self, text: str) -> Slope:
        return parse_slope(text)

    def sort_key(self, v: Slope):
        return stern_brocot_key(v)
