"""Certified flat grids in the twist-decorated disk and sphere graph models.

The certifier extends a disjoint seed pair of slopes to a BFS-verified
geodesic ray in the Farey graph, crosses it with a twist interval, and pins
every pairwise distance on the resulting grid between an explicit witness
path (upper bound) and the coordinate-projection lower bound
max(arc distance, twist gap).  When the two meet, the grid carries the
max-metric exactly, which makes the embedding (1, 0)-quasi-isometric for
the max metric and (2, 0) for the l1 product metric.

Certificates are plain data and serialize to byte-identical JSON given the
same inputs (schema id "flatcert/1").
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from . import engine
from .engine import ImplicitGraph
from .fareygraph import FareyGraph
from .handlebody import SpottedDisk, SpottedDiskGraph
from .slopes import Slope, disjoint, format_slope
from .spheres import SphereGraph, SpottedSphere

PREAMBLE = (
    "Exact distances in the height-capped model graph named below. Every grid "
    "entry is pinned by an explicit witness path whose length matches the "
    "coordinate lower bound max(arc distance, twist gap); spot checks "
    "recompute a sample of entries by direct BFS. All claims concern this "
    "capped model graph."
)

MODELS = ("omega", "sphere")


class CertificationError(Exception):
    """A grid distance failed to match the max-metric value."""


class RayExtensionError(Exception):
    """The geodesic ray could not be extended within the height cap."""

    def __init__(self, ray: Sequence[Slope], wanted: int):
        self.ray = list(ray)
        self.wanted = wanted
        super().__init__(
            f"ray extension failed at length {len(self.ray) - 1} of {wanted}; "
            f"longest certified ray: {' '.join(format_slope(s) for s in self.ray)}"
        )


@dataclass(frozen=True)
class GridEntry:
    """One certified pairwise distance on the grid.

    ``distance`` equals len(witness) - 1 and ``lower_bound``; the witness
    vertices are serialized in the model graph's text format.
    """

    source: tuple[int, int]
    target: tuple[int, int]
    distance: int
    lower_bound: int
    witness: tuple[str, ...]


@dataclass(frozen=True)
class SpotCheck:
    """Direct BFS recomputation of one grid entry."""

    source: str
    target: str
    expected: int
    bfs: int


@dataclass(frozen=True)
class FlatCertificate:
    """Self-verifying record of an exact max-metric grid in a model graph."""

    schema: str
    model: str
    preamble: str
    grid_size: int
    seed_pair: tuple[str, str]
    height_cap: int
    distance_cap: int
    rng_seed: int
    ray: tuple[str, ...]
    arc_distances: tuple[tuple[int, ...], ...]
    entries: tuple[GridEntry, ...]
    linf_constants: tuple[int, int]
    l1_constants: tuple[int, int]
    spot_checks: tuple[SpotCheck, ...]
    stats: dict

    def to_json(self) -> str:
        payload = {
            "schema": self.schema,
            "model": self.model,
            "preamble": self.preamble,
            "grid_size": self.grid_size,
            "seed_pair": list(self.seed_pair),
            "height_cap": self.height_cap,
            "distance_cap": self.distance_cap,
            "rng_seed": self.rng_seed,
            "ray": list(self.ray),
            "arc_distances": [list(row) for row in self.arc_distances],
            "entries": [
                {
                    "from": list(e.source),
                    "to": list(e.target),
                    "distance": e.distance,
                    "lower_bound": e.lower_bound,
                    "witness": list(e.witness),
                }
                for e in self.entries
            ],
            "linf_constants": list(self.linf_constants),
            "l1_constants": list(self.l1_constants),
            "spot_checks": [
                {
                    "from": c.source,
                    "to": c.target,
                    "expected": c.expected,
                    "bfs": c.bfs,
                }
                for c in self.spot_checks
            ],
            "stats": self.stats,
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _model_graph(model: str, height_cap: int) -> tuple[ImplicitGraph, Callable]:
    if model == "omega":
        return SpottedDiskGraph(height_cap), SpottedDisk
    if model == "sphere":
        return SphereGraph(height_cap), SpottedSphere
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def extend_geodesic_ray(
    farey: FareyGraph,
    seed_pair: tuple[Slope, Slope],
    length: int,
    *,
    max_visited: int = engine.DEFAULT_MAX_VISITED,
) -> list[Slope]:
    """Greedily extend a disjoint seed pair to a BFS-certified geodesic ray.

    Each new vertex is the Stern-Brocot-least neighbor of the current tip
    whose distance from the ray start, recomputed by BFS, is one more than
    the tip's.  Together with adjacency of consecutive vertices this pins
    d(ray[i], ray[j]) = |i - j| for all i, j by the triangle inequality.
    """
    start, second = seed_pair
    if start == second or not disjoint(start, second):
        raise ValueError("seed pair must be two distinct disjoint slopes")
    for s in seed_pair:
        if not farey.contains(s):
            raise ValueError(f"seed slope {s} exceeds height cap {farey.height_cap}")
    from_start = engine.ball(farey, start, length, max_visited=max_visited)
    ray = [start, second]
    while len(ray) <= length:
        wanted = len(ray)
        for candidate in farey.neighbors(ray[-1]):
            if from_start.get(candidate) == wanted:
                ray.append(candidate)
                break
        else:
            raise RayExtensionError(ray, length)
    return ray


def _staircase(
    make: Callable,
    ray: Sequence[Slope],
    source: tuple[int, int],
    target: tuple[int, int],
) -> list:
    """Witness path moving one ray step and/or one twist step at a time."""
    i, j = source
    i2, j2 = target
    path = [make(ray[i], j)]
    while (i, j) != (i2, j2):
        i += (i2 > i) - (i2 < i)
        j += (j2 > j) - (j2 < j)
        path.append(make(ray[i], j))
    return path


def certify_flat(
    n: int,
    seed_pair: tuple[Slope, Slope],
    *,
    model: str = "omega",
    distance_cap: int = 16,
    height_cap: int = 128,
    rng_seed: int = 0,
    spot_check_count: int = 5,
    max_visited: int = engine.DEFAULT_MAX_VISITED,
) -> FlatCertificate:
    """Certify an exact (n+1) x (n+1) max-metric grid in a model graph.

    The grid points are (ray[i], j) for 0 <= i, j <= n over a BFS-certified
    geodesic ray through ``seed_pair``.  Raises RayExtensionError when the
    ray cannot be extended under the height cap, and CertificationError if
    any pairwise distance fails to equal max(|di|, |dj|).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > distance_cap:
        raise ValueError("n must not exceed the distance cap")
    farey = FareyGraph(height_cap)
    graph, make = _model_graph(model, height_cap)

    ray = extend_geodesic_ray(farey, seed_pair, n, max_visited=max_visited)

    # Exact all-pairs arc distances along the ray, one BFS ball per vertex.
    balls = []
    explored = 0
    for s in ray:
        b = engine.ball(farey, s, n, max_visited=max_visited)
        explored += len(b)
        balls.append(b)
    matrix = []
    for i, b in enumerate(balls):
        row = []
        for j, t in enumerate(ray):
            d = 0 if i == j else b.get(t)
            if d is None or d != abs(i - j):
                raise CertificationError(
                    f"ray is not geodesic: d({ray[i]}, {t}) != {abs(i - j)}"
                )
            row.append(d)
        matrix.append(tuple(row))

    # Pin every grid pair: witness staircase above, projection bound below.
    coords = [(i, j) for i in range(n + 1) for j in range(n + 1)]
    entries = []
    for a in range(len(coords)):
        i, j = coords[a]
        for b in range(a + 1, len(coords)):
            i2, j2 = coords[b]
            expected = max(abs(i - i2), abs(j - j2))
            lower = max(matrix[i][i2], abs(j - j2))
            witness = _staircase(make, ray, (i, j), (i2, j2))
            for u, v in zip(witness, witness[1:]):
                if not graph.adjacent(u, v):
                    raise CertificationError(
                        f"witness step {graph.serialize_vertex(u)} -> "
                        f"{graph.serialize_vertex(v)} is not an edge"
                    )
            upper = len(witness) - 1
            if not (lower == upper == expected):
                raise CertificationError(
                    f"grid pair {(i, j)} {(i2, j2)}: lower {lower}, "
                    f"upper {upper}, expected {expected}"
                )
            l1 = abs(i - i2) + abs(j - j2)
            if not (l1 <= 2 * expected and expected <= l1):
                raise CertificationError(
                    f"l1 comparison failed on {(i, j)} {(i2, j2)}"
                )
            entries.append(
                GridEntry(
                    source=(i, j),
                    target=(i2, j2),
                    distance=expected,
                    lower_bound=lower,
                    witness=tuple(graph.serialize_vertex(v) for v in witness),
                )
            )

    # Recompute a seeded sample of short entries by direct BFS.
    rng = random.Random(rng_seed)
    short = [e for e in entries if e.distance <= 2]
    chosen = rng.sample(short, min(spot_check_count, len(short)))
    checks = []
    for e in sorted(chosen, key=lambda e: (e.source, e.target)):
        u = make(ray[e.source[0]], e.source[1])
        v = make(ray[e.target[0]], e.target[1])
        d = engine.bfs_distance(graph, u, v, e.distance, max_visited=max_visited)
        if d != e.distance:
            raise CertificationError(
                f"spot check {graph.serialize_vertex(u)} -> "
                f"{graph.serialize_vertex(v)}: BFS {d} != {e.distance}"
            )
        checks.append(
            SpotCheck(
                source=graph.serialize_vertex(u),
                target=graph.serialize_vertex(v),
                expected=e.distance,
                bfs=d,
            )
        )

    return FlatCertificate(
        schema="flatcert/1",
        model=graph.name,
        preamble=PREAMBLE,
        grid_size=n,
        seed_pair=(format_slope(seed_pair[0]), format_slope(seed_pair[1])),
        height_cap=height_cap,
        distance_cap=distance_cap,
        rng_seed=rng_seed,
        ray=tuple(format_slope(s) for s in ray),
        arc_distances=tuple(matrix),
        entries=tuple(entries),
        linf_constants=(1, 0),
        l1_constants=(2, 0),
        spot_checks=tuple(checks),
        stats={
            "farey_balls": len(ray) + 1,
            "farey_vertices_explored": explored,
            "grid_pairs": len(entries),
            "spot_checks": len(checks),
        },
    )
