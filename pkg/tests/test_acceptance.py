"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report.  Every check is exact (integer equality); the stated time budgets
are asserted as well.
"""

import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager

from flatcert import (
    INFINITY,
    AtLeast,
    FareyGraph,
    SphereGraph,
    SpottedDisk,
    SpottedDiskGraph,
    annular_intersection,
    ball,
    base_arc,
    bfs_distance,
    bidirectional_distance,
    certify_flat,
    embed_disk,
    geodesic,
    ibundle_over_arc,
    intersection_circles,
    push_disk,
    run_suite,
    sphere_over_arc,
    sphere_spot_forget,
    spot_forget,
    stern_brocot_key,
    twist_coordinate,
)
from util import S, random_half_arc, random_slope


@contextmanager
def criterion(number, description, budget_seconds):
    start = time.monotonic()
    try:
        yield
    except Exception:
        print(f"FAIL criterion {number}: {description}")
        raise
    elapsed = time.monotonic() - start
    print(f"PASS criterion {number}: {description} ({elapsed:.2f}s)")
    assert elapsed < budget_seconds


def _twisted_ball_tables(graph, farey, center, radius, twist_of):
    """Exhaustive distance data for a ball, via per-arc BFS tables.

    The adjacency oracle is twist-translation invariant by construction
    (checked structurally below), so d((a, k), (b, l)) = d((a, 0), (b, l-k));
    one BFS ball per arc therefore covers every pair exactly.
    """
    members = sorted(ball(graph, center, radius), key=graph.sort_key)
    arcs = sorted({v.arc for v in members}, key=stern_brocot_key)
    make = type(center)

    # Structural check of translation invariance of the oracle.
    shift = 3
    for a in arcs:
        base = graph.neighbors(make(a, 0))
        shifted = graph.neighbors(make(a, shift))
        assert [make(w.arc, twist_of(w) + shift) for w in base] == list(shifted)

    pair_radius = 2 * radius
    model_tables = {a: ball(graph, make(a, 0), pair_radius + 1) for a in arcs}
    arc_tables = {a: ball(farey, a, pair_radius) for a in arcs}
    return members, model_tables, arc_tables, make


def test_criterion_1_annular_intersection_table():
    with criterion(1, "annular intersection table exact for |k| in [2, 10]", 1.0):
        assert annular_intersection(0, 3) == 4
        assert annular_intersection(0, 1) == 0
        for k in range(2, 11):
            got = (
                annular_intersection(k, -1),
                annular_intersection(k, 0),
                annular_intersection(k, 1),
            )
            assert got == (2 * k, 2 * k - 2, 2 * k - 4)
        for k in range(-10, -1):
            got = (
                annular_intersection(k, -1),
                annular_intersection(k, 0),
                annular_intersection(k, 1),
            )
            assert got == (-2 * k - 4, -2 * k - 2, -2 * k)


def test_criterion_2_sphere_circle_counts():
    with criterion(2, "sphere circle counts are k - 1 for k in [1, 10]", 1.0):
        for k in range(1, 11):
            assert intersection_circles(0, k) == k - 1


def test_criterion_3_product_metric_on_radius5_ball():
    with criterion(
        3, "graph distance = max(arc distance, twist gap) on the radius-5 ball", 60.0
    ):
        graph = SpottedDiskGraph(5)
        farey = FareyGraph(5)
        center = SpottedDisk(S(0, 1), 0)
        members, model_tables, arc_tables, make = _twisted_ball_tables(
            graph, farey, center, 5, lambda v: v.twists
        )
        assert len(members) > 300
        checked = 0
        for idx, x in enumerate(members):
            for y in members[idx + 1 :]:
                delta = y.twists - x.twists
                got = model_tables[x.arc].get(make(y.arc, delta))
                expected = max(arc_tables[x.arc][y.arc], abs(delta))
                assert got == expected, (x, y)
                checked += 1
        assert checked == len(members) * (len(members) - 1) // 2

        # Direct BFS cross-check on 100 seeded pairs, no translation trick.
        rng = random.Random(0)
        for _ in range(100):
            x, y = rng.sample(members, 2)
            expected = max(arc_tables[x.arc][y.arc], abs(x.twists - y.twists))
            assert bfs_distance(graph, x, y, 12) == expected


def test_criterion_4_quasi_isometry_bounds_on_radius5_ball():
    with criterion(
        4, "coordinate map is a (2, 0)-quasi-isometry on the radius-5 ball", 60.0
    ):
        graph = SpottedDiskGraph(5)
        farey = FareyGraph(5)
        center = SpottedDisk(S(0, 1), 0)
        members, model_tables, arc_tables, make = _twisted_ball_tables(
            graph, farey, center, 5, lambda v: v.twists
        )
        for idx, x in enumerate(members):
            for y in members[idx + 1 :]:
                delta = y.twists - x.twists
                d_model = model_tables[x.arc][make(y.arc, delta)]
                l1 = arc_tables[x.arc][y.arc] + abs(delta)
                assert l1 <= 2 * d_model
                assert d_model <= l1
        # Edges map to coordinate pairs at l1 distance at most 2.
        for x in members[:120]:
            for w in graph.neighbors(x):
                l1 = (0 if w.arc == x.arc else 1) + abs(w.twists - x.twists)
                assert l1 <= 2


def test_criterion_5_retraction_identities():
    with criterion(5, "retraction and twist-count identities on 1000 random inputs", 5.0):
        rng = random.Random(101)
        for _ in range(1000):
            arc = random_slope(rng)
            disk = ibundle_over_arc(arc)
            embedded = embed_disk(disk)
            assert base_arc(embedded) == arc
            assert -2 <= twist_coordinate(embedded) <= 2
            x = SpottedDisk(random_slope(rng), rng.randint(-20, 20))
            n = rng.randint(-10, 10)
            assert base_arc(push_disk(x, n)) == base_arc(x)
            k = rng.randint(-10, 10)
            assert abs(twist_coordinate(push_disk(x, k)) - (twist_coordinate(x) + k)) <= 2


def test_criterion_6_flat_certificate():
    with criterion(
        6, "certify-flat --n 6: exact max-metric grid, (2, 0) vs l1, deterministic", 120.0
    ):
        cert = certify_flat(6, (S(0, 1), INFINITY), model="omega", height_cap=128)
        assert len(cert.entries) == 49 * 48 // 2
        for e in cert.entries:
            (i, j), (i2, j2) = e.source, e.target
            assert e.distance == max(abs(i - i2), abs(j - j2))
        assert cert.linf_constants == (1, 0)
        assert cert.l1_constants == (2, 0)

        cmd = [
            sys.executable, "-m", "flatcert.cli",
            "certify-flat", "--n", "6", "--seed", "0/1,1/0",
        ]
        first = subprocess.run(cmd, capture_output=True, text=True, check=True)
        second = subprocess.run(cmd, capture_output=True, text=True, check=True)
        assert first.stdout == second.stdout
        assert first.stdout == cert.to_json()
        payload = json.loads(first.stdout)
        assert payload["schema"] == "flatcert/1"


def test_criterion_7_spot_forget_diagram_commutes():
    with criterion(7, "spot removal commutes with doubling on 1000 random arcs", 5.0):
        rng = random.Random(202)
        for _ in range(1000):
            x = random_half_arc(rng)
            assert sphere_spot_forget(sphere_over_arc(x)) == spot_forget(x)


def test_criterion_8_sphere_product_metric_radius4():
    with criterion(
        8, "sphere-model distance = max(arc distance, twist gap) on the radius-4 ball", 60.0
    ):
        graph = SphereGraph(4)
        farey = FareyGraph(4)
        center = graph.parse_vertex("0/1@0:sph")
        members, model_tables, arc_tables, make = _twisted_ball_tables(
            graph, farey, center, 4, lambda v: v.half_twists
        )
        assert len(members) > 150
        for idx, x in enumerate(members):
            for y in members[idx + 1 :]:
                delta = y.half_twists - x.half_twists
                got = model_tables[x.arc].get(make(y.arc, delta))
                expected = max(arc_tables[x.arc][y.arc], abs(delta))
                assert got == expected, (x, y)


def test_criterion_9_engine_self_consistency():
    with criterion(
        9, "bidirectional BFS, plain BFS and geodesics agree on 100 random pairs", 30.0
    ):
        farey = FareyGraph(16)
        rng = random.Random(303)
        for _ in range(100):
            u, v = random_slope(rng, 16), random_slope(rng, 16)
            uni = bfs_distance(farey, u, v, 8)
            assert bidirectional_distance(farey, u, v, 8) == uni
            if not isinstance(uni, AtLeast):
                path = geodesic(farey, u, v, 8)
                assert len(path) - 1 == uni
                assert all(farey.adjacent(a, b) for a, b in zip(path, path[1:]))


def test_criterion_10_negative_controls():
    with criterion(
        10, "failure injection breaks exactly the targeted checks", 120.0
    ):
        clean = run_suite("omega")
        assert clean.passed

        widened = run_suite("omega", inject="omega-twist-gap-2")
        assert not widened.passed
        assert "product-metric" in {r.group for r in widened.results if not r.passed}

        no_offset = run_suite("omega", inject="annular-no-offset")
        assert not no_offset.passed
        assert {r.group for r in no_offset.results if not r.passed} == {"annular-table"}
