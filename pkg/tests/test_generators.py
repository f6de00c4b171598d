from collections import Counter

import pytest

from coarseplane.errors import FaceNotInCore, NotHyperbolicParameters
from coarseplane.generators import (
    GeneratorSpec,
    core_faces,
    default_schedule,
    dyadic_square_size,
    gen_bowditch_g1,
    gen_bowditch_g2,
    gen_composite,
    gen_dyadic,
    gen_dyadic_square,
    gen_grid,
    gen_tessellation,
    generate,
)
from coarseplane.metric import core_radius
from coarseplane.planar import degree_stats


def test_grid_sizes():
    for n in (2, 3, 10):
        g = gen_grid(n)
        assert len(g.vertices) == n * n
        assert g.num_edges == 2 * n * (n - 1)
        assert len(g.bounded_faces()) == (n - 1) ** 2


def test_tessellation_ball_sizes():
    assert [len(gen_tessellation(4, 5, r).vertices) for r in (1, 2, 3)] == [11, 51, 201]
    t = gen_tessellation(4, 5, 3)
    assert Counter(core_radius(t).values()) == {0: 150, 1: 40, 2: 10, 3: 1}
    t = gen_tessellation(3, 7, 3)
    assert len(t.vertices) == 85
    assert Counter(core_radius(t).values()) == {0: 56, 1: 21, 2: 7, 3: 1}


def test_tessellation_regularity():
    t = gen_tessellation(3, 7, 3)
    assert all(t.degree(v) == 7 for v in t.vertices if v not in t.rim)
    assert {f.length for f in t.bounded_faces()} == {3}


def test_tessellation_requires_hyperbolic_parameters():
    with pytest.raises(NotHyperbolicParameters):
        gen_tessellation(4, 4, 2)


def test_spoke_face_lengths():
    base = gen_tessellation(4, 5, 3)
    sched = default_schedule(base, [2, 3, 4, 5, 6], seed=0)
    assert sched == default_schedule(base, [2, 3, 4, 5, 6], seed=0)
    g1 = gen_bowditch_g1(base, sched)
    lengths = [w["spoke_face_length"] for w in g1.meta["witnesses"]]
    assert lengths == [2 * n + 1 for _, n in sched]
    g2 = gen_bowditch_g2(base, sched)
    assert degree_stats(g2).max_codegree == 4
    assert g2.num_edges > g1.num_edges


def test_spokes_reject_bad_faces():
    base = gen_tessellation(4, 5, 3)
    with pytest.raises(FaceNotInCore):
        gen_bowditch_g1(base, [(base.outer_face, 2)])


def test_dyadic_family():
    d = gen_dyadic(1, 1)
    assert [f.length for f in d.bounded_faces()] == [5]
    for a in (1, 2, 3):
        h = gen_dyadic_square(a)
        assert len(h.vertices) == dyadic_square_size(a)
        assert {f.length for f in h.bounded_faces()} <= {5}


def test_composite_attachments():
    c = gen_composite(6)
    assert len(c.vertices) == 1567
    assert [cp["n"] for cp in c.meta["copies"]] == list(range(1, 7))


def test_generate_dispatch_and_determinism():
    spec = GeneratorSpec("g2", {"ns": [2, 3]}, seed=5)
    assert generate(spec).dumps() == generate(spec).dumps()
    g = generate(GeneratorSpec("grid", {"n": 4}))
    assert [set(g.faces[f].vertices) for f in core_faces(g)] == [{5, 6, 9, 10}]
