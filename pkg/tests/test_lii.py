from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coarseplane.errors import DegreeBelowTwo, EverythingIsADecoration, ViolationFound
from coarseplane.generators import gen_grid, gen_tessellation, grid_vertex
from coarseplane.isoperimetry import cheeger_lower
from coarseplane.lii import (
    boundary_cycle_of_faces,
    disk_from_cycle,
    eliminate_decorations,
    face_ball_cycles,
    faces_inside_ratio,
    find_decorations,
    hyperbolicity_certificate,
    lii_check,
    quasi_isometry_check,
    sample_cycles,
)
from coarseplane.planar import PlanarMap

from conftest import cycle_map, decorated_grid, insert_in_face


def block_ring(n, i0, j0, m):
    """Perimeter of the m x m block of faces with top-left vertex (i0, j0)."""
    v = lambda i, j: grid_vertex(n, i0 + i, j0 + j)
    return ([v(0, j) for j in range(m + 1)] + [v(i, m) for i in range(1, m + 1)]
            + [v(m, j) for j in range(m - 1, -1, -1)] + [v(i, 0) for i in range(m - 1, 0, -1)])


def with_pendant(n=7):
    g = gen_grid(n)
    rot = {v: list(r) for v, r in g.rotation.items()}
    v = grid_vertex(n, 3, 3)
    rot[v].append(999)
    rot[999] = [v]
    return g, PlanarMap(rot, g.rim)


def with_chord(n=7):
    """Path of length 3 across a face between diagonal corners."""
    g = gen_grid(n)
    rot = {v: list(r) for v, r in g.rotation.items()}
    a, c = grid_vertex(n, 2, 2), grid_vertex(n, 3, 3)
    face = next(f for f in g.faces_at(a) if c in g.faces[f].vertices)
    insert_in_face(rot, g, a, face, 900)
    insert_in_face(rot, g, c, face, 901)
    rot[900], rot[901] = [a, 901], [900, c]
    return PlanarMap(rot, g.rim), a, c


def test_find_decorations_examples(t37):
    _, m = with_pendant()
    assert [(d.vertices, len(d.boundary)) for d in find_decorations(m)] == [((999,), 1)]
    m, a, c = with_chord()
    decos = find_decorations(m)
    assert [(d.vertices, d.boundary) for d in decos] == [((900, 901), (a, c))]
    assert find_decorations(t37) == []


def test_pendant_elimination_restores_grid():
    g, m = with_pendant()
    out = eliminate_decorations(m)
    assert out.pmap.rotation == g.rotation


def test_chord_becomes_edge():
    m, a, c = with_chord()
    out = eliminate_decorations(m).pmap
    assert out.has_edge(a, c) and 900 not in out.vertices
    assert sorted(f.length for f in out.bounded_faces()).count(3) == 2


def test_nested_decorations_and_idempotence():
    m = decorated_grid()
    out = eliminate_decorations(m)
    assert {1000, 1001, 1002, 1003}.isdisjoint(out.pmap.vertices)
    assert min(out.pmap.degree(v) for v in out.pmap.vertices if v not in out.pmap.rim) >= 3
    again = eliminate_decorations(out.pmap)
    assert again.removed == [] and again.pmap.dumps() == out.pmap.dumps()


def test_everything_is_a_decoration():
    # with a single rim vertex the rest of the cycle hangs off it
    c = cycle_map(5)
    with pytest.raises(EverythingIsADecoration):
        eliminate_decorations(PlanarMap(c.rotation, rim=[0]))


def test_quasi_isometry():
    g = gen_grid(7)
    rep = quasi_isometry_check(g, eliminate_decorations(g), Fraction(1))
    assert rep.max_stretch == 1
    m, _, _ = with_chord(9)
    elim = eliminate_decorations(m)
    c = cheeger_lower(m, 8).ratio
    rep = quasi_isometry_check(m, elim, c)
    assert rep.pairs > 0 and rep.max_decoration <= 2 / c
    with pytest.raises(ViolationFound):
        quasi_isometry_check(m, elim, Fraction(5))


def test_disk_examples():
    n = 9
    g = gen_grid(n)
    face = next(f for f in g.bounded_faces() if not set(f.vertices) & g.rim)
    assert disk_from_cycle(g, face.vertices).bounded_faces == 1
    d = disk_from_cycle(g, block_ring(n, 2, 2, 2))
    assert (len(d.pmap.vertices), d.pmap.num_edges, d.bounded_faces) == (9, 12, 4)
    _, m = with_pendant(9)
    with pytest.raises(DegreeBelowTwo):
        disk_from_cycle(m, block_ring(9, 2, 2, 2))


def test_lii_examples():
    hexagon = disk_from_cycle(cycle_map(6), list(range(6)))
    assert lii_check(hexagon, 1, 6).holds
    n = 9
    g = gen_grid(n)
    d = disk_from_cycle(g, block_ring(n, 2, 2, 4))
    res = lii_check(d, 1, 4)
    assert (res.bounded_faces, res.perimeter, res.holds) == (16, 16, True)
    assert not lii_check(d, Fraction(9, 10), 4).holds
    assert not lii_check(d, 100, 3).holds


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.fractions(0, 3), st.integers(1, 6), st.fractions(0, 2), st.integers(0, 2))
def test_lii_monotone(m, k, D, dk, dD):
    n = 9
    d = disk_from_cycle(gen_grid(n), block_ring(n, 1, 1, m))
    if lii_check(d, k, D).holds:
        assert lii_check(d, k + dk, D + dD).holds


def test_faces_inside_ratio():
    n = 12
    g = gen_grid(n)
    face = next(f for f in g.bounded_faces() if not set(f.vertices) & g.rim)
    assert faces_inside_ratio(g, [face.vertices])[0] == Fraction(1, 4)
    _, table = faces_inside_ratio(g, [block_ring(n, 1, 1, m) for m in range(2, 9)])
    assert [r.ratio for r in table] == [Fraction(m, 4) for m in range(2, 9)]


def test_tessellation_ratio_stays_bounded():
    ratios = []
    for r in (3, 4, 5):
        t = gen_tessellation(3, 7, r)
        hulls, _ = sample_cycles(t)
        ratios.append(faces_inside_ratio(t, hulls)[0])
    assert max(ratios) == ratios[0] == Fraction(1, 3)


def test_face_union_boundary():
    n = 6
    g = gen_grid(n)
    faces = [f.id for f in g.bounded_faces() if set(f.vertices) <= set(range(0, 3 * n))]
    cyc = boundary_cycle_of_faces(g, faces)
    assert cyc is not None and len(cyc) == 2 * (5 + 2)
    assert face_ball_cycles(gen_grid(11))


def test_certificates(t37):
    cert = hyperbolicity_certificate(t37, 8)
    assert cert.verdict == "certified" and cert.c_prime > 0
    js = cert.to_json()
    assert list(js) == ["c_prime", "k_hat", "per_cycle", "verdict"]
    assert hyperbolicity_certificate(gen_grid(10), 8).verdict == "refused"
    face = next(f for f in t37.bounded_faces() if 0 in f.vertices)
    single = hyperbolicity_certificate(t37, 8, cycles=[face.vertices])
    assert single.per_cycle[0].faces == 1 and single.verdict == "certified"
