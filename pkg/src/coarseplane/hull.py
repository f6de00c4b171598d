"""Closest geodesics to a cycle and the geodetic hull of a face.

Regions are read combinatorially. For two x-y paths ``A`` and ``B`` the
region bounded by ``A u B`` is the set of faces separated from the outer face
an odd number of times by the edges in exactly one of them; this agrees with
the Jordan interior when ``A u B`` is a simple cycle and stays meaningful when
the paths share vertices or edges.

``B`` is *between* ``A`` and ``C`` when region(A, B) is contained in
region(A, C). Given a cycle and two of its vertices, the outside x-y
geodesics split into two side classes; within one class, ``g <= h`` when
``g`` is between the designated arc and ``h``. The class is a finite lattice
and its least element is the closest geodesic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

from .errors import (
    EmptySideClass,
    GeodesicEntersCycle,
    HullLeavesCore,
    NotACycle,
    NotInS1,
    ValidationError,
)
from .metric import DEFAULT_GEODESIC_CAP, GeodesicPath, enumerate_geodesics, is_certified_pair, is_geodetic_cycle
from .planar import PlanarMap, cycle_edges, cycle_interior, edge_key, path_edges

S1, S2, NEITHER = "S1", "S2", "neither"


def region(pmap: PlanarMap, a: Sequence[int], b: Sequence[int]) -> frozenset[int]:
    """Faces enclosed by two paths with common endpoints."""
    ea, eb = set(path_edges(a)), set(path_edges(b))
    return pmap.face_parity(ea ^ eb)


def between(pmap: PlanarMap, b: Sequence[int], a: Sequence[int], c: Sequence[int]) -> bool:
    return region(pmap, a, b) <= region(pmap, a, c)


@dataclass(frozen=True)
class ArcFrame:
    """A cycle with two marked vertices and a designated arc.

    ``arc`` runs from x to y along the designated side, ``other`` from y back
    to x along the complementary side.
    """

    cycle: tuple[int, ...]
    x: int
    y: int
    arc: tuple[int, ...]
    other: tuple[int, ...]
    inside: frozenset[int]
    strict_edges: frozenset

    def flipped(self) -> "ArcFrame":
        return ArcFrame(self.cycle, self.x, self.y, self.other[::-1], self.arc[::-1],
                        self.inside, self.strict_edges)


def arc_frame(pmap: PlanarMap, cycle: Sequence[int], x: int, y: int) -> ArcFrame:
    """Frame whose designated arc follows the cycle order from x to y."""
    cyc = tuple(cycle)
    if x == y or x not in cyc or y not in cyc:
        raise NotACycle(f"{x} and {y} must be distinct vertices of the cycle")
    reg = cycle_interior(pmap, cyc)
    n = len(cyc)
    i, j = cyc.index(x), cyc.index(y)
    arc = tuple(cyc[(i + t) % n] for t in range((j - i) % n + 1))
    other = tuple(cyc[(j + t) % n] for t in range((i - j) % n + 1))
    return ArcFrame(cyc, x, y, arc, other, reg.interior_faces, reg.strict_edges)


def lies_outside(frame: ArcFrame, path: Sequence[int]) -> bool:
    return not any(e in frame.strict_edges for e in path_edges(path))


@dataclass(frozen=True)
class SideClass:
    cycle: tuple[int, ...]
    x: int
    y: int
    arc: tuple[int, ...]
    side: str


def _side(pmap: PlanarMap, frame: ArcFrame, g: Sequence[int]) -> str:
    in1 = between(pmap, frame.arc, frame.other[::-1], g)
    in2 = between(pmap, frame.other[::-1], frame.arc, g)
    if in1 and not in2:
        return S1
    if in2 and not in1:
        return S2
    return NEITHER


def classify_side(pmap: PlanarMap, cycle: Sequence[int], x: int, y: int,
                  geodesic: Sequence[int]) -> SideClass:
    frame = arc_frame(pmap, cycle, x, y)
    g = tuple(geodesic)
    if g[0] != x or g[-1] != y:
        raise ValidationError("geodesic must run from x to y")
    if not lies_outside(frame, g):
        raise GeodesicEntersCycle(f"{list(g)} has an edge strictly inside the cycle")
    return SideClass(frame.cycle, x, y, frame.arc, _side(pmap, frame, g))


def in_first_class(pmap: PlanarMap, frame: ArcFrame, g: Sequence[int]) -> bool:
    return lies_outside(frame, g) and _side(pmap, frame, g) == S1


def precedes(pmap: PlanarMap, frame: ArcFrame, g: Sequence[int], h: Sequence[int]) -> bool:
    """``g <= h``: g lies between the designated arc and h."""
    return between(pmap, g, frame.arc, h)


def _closed_side(pmap: PlanarMap, frame: ArcFrame, h: Sequence[int]):
    """Membership test for edges inside the closed region bounded by arc u h."""
    reg = region(pmap, frame.arc, h)
    on = set(path_edges(frame.arc)) | set(path_edges(h))

    def inside(e):
        return e in on or pmap.dart_face[e] in reg

    return inside


def meet(pmap: PlanarMap, frame: ArcFrame, g: Sequence[int], h: Sequence[int],
         check: bool = True) -> tuple[int, ...]:
    """Greatest lower bound of two members of the first side class.

    The two geodesics meet at the same positions (position = distance from x).
    Between consecutive meeting points they bound a simple cycle; the meet
    keeps whichever of the two segments lies inside the region bounded by the
    arc and the other geodesic.
    """
    g, h = tuple(g), tuple(h)
    if check:
        for p in (g, h):
            if not in_first_class(pmap, frame, p):
                raise NotInS1(f"{list(p)} is not in the side class of arc {list(frame.arc)}")
    if g == h:
        return g
    if len(g) != len(h):
        raise NotInS1("paths of different lengths cannot both be geodesics")
    cuts = [i for i in range(len(g)) if g[i] == h[i]]
    inside_h = _closed_side(pmap, frame, h)
    inside_g = _closed_side(pmap, frame, g)
    out = [g[0]]
    for a, b in zip(cuts, cuts[1:]):
        seg_g, seg_h = g[a:b + 1], h[a:b + 1]
        if seg_g == seg_h:
            out += seg_g[1:]
        elif all(inside_h(e) for e in path_edges(seg_g)):
            out += seg_g[1:]
        elif all(inside_g(e) for e in path_edges(seg_h)):
            out += seg_h[1:]
        else:
            raise ValidationError(
                f"segments {list(seg_g)} and {list(seg_h)} are not nested; "
                "are both paths geodesics on the same side?")
    return tuple(out)


def side_members(pmap: PlanarMap, frame: ArcFrame,
                 geodesics: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    return [tuple(g) for g in geodesics if in_first_class(pmap, frame, g)]


def least_member(pmap: PlanarMap, frame: ArcFrame, members: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Fold of meets over the side class."""
    if not members:
        raise EmptySideClass(f"no outside geodesic on the side of arc {list(frame.arc)}")
    return reduce(lambda a, b: meet(pmap, frame, a, b, check=False), members)


def composite_crossings(pmap: PlanarMap, frame: ArcFrame, gamma: Sequence[int],
                        paths: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """Paths outside the cycle that cross the closed curve arc u gamma."""
    reg = region(pmap, frame.arc, gamma)
    on_vertices = set(frame.arc) | set(gamma)
    strict = pmap.edges_strictly_inside(reg)
    deep = pmap.vertices_strictly_inside(reg, on_vertices)
    out = []
    for p in paths:
        p = tuple(p)
        if not lies_outside(frame, p):
            continue
        if p[0] in deep or p[-1] in deep:
            continue
        if any(e in strict for e in path_edges(p)):
            out.append(p)
    return out


def closest_geodesic(pmap: PlanarMap, cycle: Sequence[int], x: int, y: int, side: str = S1,
                     cap: int = DEFAULT_GEODESIC_CAP) -> GeodesicPath:
    """Least element of the requested side class.

    The result is checked against every enumerated member (it precedes all of
    them) and against crossings by every enumerated outside x-y geodesic.
    """
    frame = arc_frame(pmap, cycle, x, y)
    if side == S2:
        frame = frame.flipped()
    elif side != S1:
        raise ValueError(f"side must be {S1!r} or {S2!r}")
    geos = [g.vertices for g in enumerate_geodesics(pmap, x, y, cap)]
    members = side_members(pmap, frame, geos)
    gamma = least_member(pmap, frame, members)
    for m in members:
        if not precedes(pmap, frame, gamma, m):
            raise ValidationError(f"fold of meets is not below {list(m)}")
    crossing = composite_crossings(pmap, frame, gamma, geos)
    if crossing:
        raise ValidationError(f"geodesic {list(crossing[0])} crosses the composite cycle")
    return GeodesicPath(gamma, is_certified_pair(pmap, x, y))


# -- geodetic hull -------------------------------------------------------------

@dataclass
class HullStep:
    x: int
    y: int
    discarded: tuple[int, ...]
    inserted: tuple[int, ...]
    side: str
    pinched: bool = False


@dataclass
class HullTrace:
    face: int
    cycles: list[tuple[int, ...]] = field(default_factory=list)
    steps: list[HullStep] = field(default_factory=list)
    terminal_geodetic: bool = False
    certified: bool = True

    @property
    def terminal(self) -> tuple[int, ...]:
        return self.cycles[-1]

    def to_json(self) -> dict:
        return {
            "face": self.face,
            "cycles": [list(c) for c in self.cycles],
            "steps": [{"x": s.x, "y": s.y, "inserted": list(s.inserted)} for s in self.steps],
            "geodetic": self.terminal_geodetic,
            "certified": self.certified,
        }


def _enclosing_simple_cycle(pmap: PlanarMap, walk: list[int], face: int) -> tuple[list[int], bool]:
    """Split a closed walk at repeated vertices, keeping the piece around ``face``."""
    pinched = False
    while len(set(walk)) != len(walk):
        pinched = True
        first = {}
        for q, v in enumerate(walk):
            if v in first:
                p = first[v]
                break
            first[v] = q
        inner, outer = walk[p:q], walk[:p] + walk[q:]
        keep = None
        for piece in (inner, outer):
            if len(piece) >= 3 and face in pmap.face_parity(cycle_edges(piece)):
                keep = piece
        if keep is None:
            raise ValidationError("face escaped the closed walk while splitting")
        walk = keep
    return walk, pinched


def certified_cycle(pmap: PlanarMap, cycle: Sequence[int]) -> bool:
    """No rim vertex on the cycle and every pair of its vertices certified."""
    if set(cycle) & pmap.rim:
        return False
    return all(is_certified_pair(pmap, a, b)
               for i, a in enumerate(cycle) for b in cycle[i + 1:])


def geodetic_hull(pmap: PlanarMap, face: int, cap: int = DEFAULT_GEODESIC_CAP,
                  strict: bool = False) -> HullTrace:
    """Shrink-wrap a bounded face into a geodetic cycle.

    Each step takes the first pair of the current cycle with both arcs longer
    than their distance, and replaces one arc by the closest geodesic on the
    side that keeps the face enclosed. Cycle lengths strictly decrease.
    """
    if not 0 <= face < len(pmap.faces):
        raise ValidationError(f"no face with id {face}")
    rec = pmap.faces[face]
    if not rec.bounded:
        raise ValidationError(f"face {face} is the outer face")
    if not rec.is_simple():
        raise NotACycle(f"face {face} is not bounded by a simple cycle")
    cyc = list(rec.vertices)
    trace = HullTrace(face, [tuple(cyc)])
    touched = bool(set(cyc) & pmap.rim)
    while True:
        chk = is_geodetic_cycle(pmap, cyc)
        if chk:
            break
        x, y = chk.witness
        frame = arc_frame(pmap, cyc, x, y)
        geos = [g.vertices for g in enumerate_geodesics(pmap, x, y, cap)]
        side = S1
        members = side_members(pmap, frame, geos)
        if not members:
            frame, side = frame.flipped(), S2
            members = side_members(pmap, frame, geos)
        if not members:
            raise EmptySideClass(f"no outside {x}-{y} geodesic on either side of {cyc}")
        gamma = least_member(pmap, frame, members)
        walk, pinched = _enclosing_simple_cycle(pmap, list(frame.other) + list(gamma[1:-1]), face)
        if len(walk) >= len(cyc) or face not in pmap.face_parity(cycle_edges(walk)):
            raise ValidationError("hull step failed to shrink around the face")
        if set(gamma) & pmap.rim:
            touched = True
            if strict:
                raise HullLeavesCore(f"closest {x}-{y} geodesic touches the rim")
        trace.steps.append(HullStep(x, y, frame.arc, gamma, side, pinched))
        cyc = walk
        trace.cycles.append(tuple(cyc))
    trace.terminal_geodetic = True
    trace.certified = not touched and certified_cycle(pmap, cyc)
    return trace


def hull_interior(pmap: PlanarMap, trace: HullTrace) -> set[int]:
    """Vertices on or strictly inside the terminal hull cycle."""
    reg = cycle_interior(pmap, trace.terminal)
    return set(reg.all_vertices)
