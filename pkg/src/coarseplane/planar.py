"""Plane graphs as rotation systems.

A map is stored as a counterclockwise cyclic order of neighbours at every
vertex. Darts are ordered pairs ``(u, v)``; the twin of ``(u, v)`` is
``(v, u)``. Faces are traced with the successor rule

    next((u, v)) = (v, rot_next(v, u))

so every face lies to the right of its darts: bounded faces are walked
clockwise and the outer face counterclockwise.

Windows of infinite graphs carry a ``rim`` (vertices standing in for the
part of the graph beyond the window) and a designated unbounded outer face.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    AsymmetricAdjacency,
    CycleTouchesOuterFace,
    LoopOrMultiEdge,
    NonPlanarTrace,
    NotACycle,
    ValidationError,
)

Dart = tuple[int, int]
Edge = tuple[int, int]

FORMAT = "planar-map-v1"


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [edge_key(a, b) for a, b in zip(path, path[1:])]


def cycle_edges(cycle: Sequence[int]) -> list[Edge]:
    n = len(cycle)
    return [edge_key(cycle[i], cycle[(i + 1) % n]) for i in range(n)]


@dataclass(frozen=True)
class FaceRecord:
    id: int
    walk: tuple[Dart, ...]
    bounded: bool

    @property
    def length(self) -> int:
        return len(self.walk)

    @property
    def vertices(self) -> tuple[int, ...]:
        """Origins of the walk darts, in walk order (may repeat)."""
        return tuple(d[0] for d in self.walk)

    def is_simple(self) -> bool:
        vs = self.vertices
        return len(vs) >= 3 and len(set(vs)) == len(vs)


@dataclass(frozen=True)
class CycleRegion:
    cycle: tuple[int, ...]
    interior_faces: frozenset[int]
    interior_vertices: frozenset[int]
    boundary_vertices: frozenset[int]
    strict_edges: frozenset[Edge] = field(default_factory=frozenset)

    @property
    def all_vertices(self) -> frozenset[int]:
        return self.interior_vertices | self.boundary_vertices


@dataclass(frozen=True)
class DegreeStats:
    max_degree: int
    max_codegree: int | None
    degree_histogram: dict[int, int]
    codegree_histogram: dict[int, int]


class PlanarMap:
    """Immutable combinatorial embedding.

    Parameters
    ----------
    rotation : mapping of vertex id to its neighbours in counterclockwise order.
    rim : vertices flagged as window boundary.
    outer_face_dart : any dart of the face to designate as unbounded. When
        omitted the face meeting the most rim vertices is chosen (ties: longer
        walk, then smaller face id).
    meta : free-form JSON-serialisable metadata carried through I/O.
    """

    def __init__(
        self,
        rotation: Mapping[int, Sequence[int]],
        rim: Iterable[int] = (),
        outer_face_dart: Dart | None = None,
        meta: dict | None = None,
    ):
        self.rotation: dict[int, tuple[int, ...]] = {
            int(v): tuple(int(w) for w in nbrs) for v, nbrs in sorted(rotation.items())
        }
        self.vertices: tuple[int, ...] = tuple(self.rotation)
        self.rim: frozenset[int] = frozenset(int(v) for v in rim)
        self.meta: dict = dict(meta or {})
        self._validate_adjacency()
        self._pos = {
            v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in self.rotation.items()
        }
        self._trace(outer_face_dart)
        self._check_euler()
        self._cache: dict = {}

    # -- construction -----------------------------------------------------

    def _validate_adjacency(self) -> None:
        for v in self.rim:
            if v not in self.rotation:
                raise ValidationError(f"rim vertex {v} is not a vertex")
        for v, nbrs in self.rotation.items():
            if v in nbrs:
                raise LoopOrMultiEdge(f"loop at vertex {v}")
            if len(set(nbrs)) != len(nbrs):
                raise LoopOrMultiEdge(f"parallel edges at vertex {v}: {list(nbrs)}")
            for w in nbrs:
                if w not in self.rotation:
                    raise AsymmetricAdjacency(f"{v} lists unknown neighbour {w}")
                if v not in self.rotation[w]:
                    raise AsymmetricAdjacency(f"{v} lists {w} but {w} does not list {v}")

    def _trace(self, outer_face_dart: Dart | None) -> None:
        dart_face: dict[Dart, int] = {}
        walks: list[tuple[Dart, ...]] = []
        for v in self.vertices:
            for w in self.rotation[v]:
                if (v, w) in dart_face:
                    continue
                fid = len(walks)
                walk = []
                d = (v, w)
                while d not in dart_face:
                    dart_face[d] = fid
                    walk.append(d)
                    d = self.face_next(d)
                if d != (v, w):
                    raise NonPlanarTrace(f"face walk from {(v, w)} does not close")
                walks.append(tuple(walk))
        self.dart_face = dart_face
        if outer_face_dart is not None:
            od = (int(outer_face_dart[0]), int(outer_face_dart[1]))
            if od not in dart_face:
                raise ValidationError(f"outer_face_dart {list(od)} is not a dart")
            outer = dart_face[od]
        elif walks:
            def score(i):
                rim_hits = len({d[0] for d in walks[i]} & self.rim)
                return (-rim_hits, -len(walks[i]), i)

            outer = min(range(len(walks)), key=score)
        else:
            outer = None
        self.outer_face: int | None = outer
        self.faces: tuple[FaceRecord, ...] = tuple(
            FaceRecord(i, w, i != outer) for i, w in enumerate(walks)
        )

    def _check_euler(self) -> None:
        for comp in self.components():
            if len(comp) == 1:
                continue
            e = sum(len(self.rotation[v]) for v in comp) // 2
            f = len({self.dart_face[(v, w)] for v in comp for w in self.rotation[v]})
            if len(comp) - e + f != 2:
                raise NonPlanarTrace(
                    f"Euler check failed on component of {len(comp)} vertices: "
                    f"V - E + F = {len(comp)} - {e} + {f} != 2"
                )

    # -- basic queries ----------------------------------------------------

    def __repr__(self):
        return (f"PlanarMap(V={len(self.vertices)}, E={self.num_edges}, "
                f"F={len(self.faces)}, rim={len(self.rim)})")

    def __contains__(self, v) -> bool:
        return v in self.rotation

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._pos and v in self._pos[u]

    @property
    def num_edges(self) -> int:
        return sum(len(n) for n in self.rotation.values()) // 2

    def edges(self) -> list[Edge]:
        return [(v, w) for v in self.vertices for w in self.rotation[v] if v < w]

    def darts(self) -> list[Dart]:
        return [(v, w) for v in self.vertices for w in self.rotation[v]]

    def rot_next(self, v: int, u: int) -> int:
        """Counterclockwise successor of neighbour ``u`` around ``v``."""
        nbrs = self.rotation[v]
        return nbrs[(self._pos[v][u] + 1) % len(nbrs)]

    def rot_prev(self, v: int, u: int) -> int:
        nbrs = self.rotation[v]
        return nbrs[(self._pos[v][u] - 1) % len(nbrs)]

    def face_next(self, d: Dart) -> Dart:
        u, v = d
        return (v, self.rot_next(v, u))

    def face_of(self, d: Dart) -> int:
        return self.dart_face[d]

    def bounded_faces(self) -> list[FaceRecord]:
        return [f for f in self.faces if f.bounded]

    def faces_at(self, v: int) -> set[int]:
        return {self.dart_face[(v, w)] for w in self.rotation[v]}

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.rotation[v]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def outer_walk_vertices(self) -> set[int]:
        if self.outer_face is None:
            return set()
        return set(self.faces[self.outer_face].vertices)

    # -- regions ----------------------------------------------------------

    def face_parity(self, edges: Iterable[Edge]) -> frozenset[int]:
        """Faces separated from the outer face an odd number of times by ``edges``.

        ``edges`` must be an even subgraph (a sum of cycles). For a simple
        cycle the result is the set of faces strictly inside it.
        """
        cut = set(edges)
        for e in cut:
            if not self.has_edge(*e):
                raise NotACycle(f"{e} is not an edge")
        parity: dict[int, int] = {}
        starts = [self.outer_face] if self.outer_face is not None else []
        starts += [f.id for f in self.faces]
        for start in starts:
            if start in parity:
                continue
            parity[start] = 0
            queue = deque([start])
            while queue:
                f = queue.popleft()
                for u, v in self.faces[f].walk:
                    g = self.dart_face[(v, u)]
                    p = parity[f] ^ (edge_key(u, v) in cut)
                    if g not in parity:
                        parity[g] = p
                        queue.append(g)
                    elif parity[g] != p:
                        raise NotACycle("edge set is not a sum of cycles")
        return frozenset(f for f, p in parity.items() if p)

    def vertices_strictly_inside(self, region: frozenset[int], boundary: set[int]) -> set[int]:
        out = set()
        for v in self.vertices:
            if v in boundary or not self.rotation[v]:
                continue
            if self.dart_face[(v, self.rotation[v][0])] in region:
                out.add(v)
        return out

    def edges_strictly_inside(self, region: frozenset[int]) -> set[Edge]:
        return {
            (u, v) for (u, v) in self.edges()
            if self.dart_face[(u, v)] in region and self.dart_face[(v, u)] in region
        }

    # -- identity / io ----------------------------------------------------

    def to_dict(self) -> dict:
        out = {
            "format": FORMAT,
            "vertices": [{"id": v, "nbrs": list(self.rotation[v])} for v in self.vertices],
            "rim": sorted(self.rim),
        }
        if self.outer_face is not None:
            out["outer_face_dart"] = list(self.faces[self.outer_face].walk[0])
        out["meta"] = self.meta
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    def digest(self) -> str:
        payload = {k: v for k, v in self.to_dict().items() if k != "meta"}
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()

    def with_meta(self, **meta) -> "PlanarMap":
        od = self.faces[self.outer_face].walk[0] if self.outer_face is not None else None
        return PlanarMap(self.rotation, self.rim, od, {**self.meta, **meta})

    def restrict(self, keep_edges: Iterable[Edge], keep_vertices: Iterable[int] = (),
                 outer_face_dart: Dart | None = None, rim: Iterable[int] = ()) -> "PlanarMap":
        """Sub-map on the given edges, inheriting the rotation order."""
        keep = set(keep_edges)
        verts = set(keep_vertices) | {v for e in keep for v in e}
        rot = {
            v: [w for w in self.rotation[v] if edge_key(v, w) in keep] for v in sorted(verts)
        }
        return PlanarMap(rot, rim, outer_face_dart)


def build_map(rotation: Mapping[int, Sequence[int]], rim: Iterable[int] = (),
              outer_face_dart: Dart | None = None, meta: dict | None = None) -> PlanarMap:
    return PlanarMap(rotation, rim, outer_face_dart, meta)


def from_dict(data: dict) -> PlanarMap:
    if data.get("format") != FORMAT:
        raise ValidationError(f"expected format {FORMAT!r}, got {data.get('format')!r}")
    rotation = {}
    for entry in data["vertices"]:
        vid = entry["id"]
        if not isinstance(vid, int) or isinstance(vid, bool):
            raise ValidationError(f"vertex id {vid!r} is not an integer")
        if vid in rotation:
            raise ValidationError(f"duplicate vertex id {vid}")
        nbrs = entry["nbrs"]
        if not all(isinstance(w, int) and not isinstance(w, bool) for w in nbrs):
            raise ValidationError(f"non-integer neighbour at vertex {vid}")
        rotation[vid] = nbrs
    od = data.get("outer_face_dart")
    return PlanarMap(rotation, data.get("rim", []), tuple(od) if od else None, data.get("meta"))


def loads(text: str) -> PlanarMap:
    return from_dict(json.loads(text))


def load(path) -> PlanarMap:
    with open(path) as fh:
        return loads(fh.read())


def save(pmap: PlanarMap, path) -> None:
    with open(path, "w") as fh:
        fh.write(pmap.dumps())


def trace_faces(pmap: PlanarMap) -> list[FaceRecord]:
    return list(pmap.faces)


def degree_stats(pmap: PlanarMap) -> DegreeStats:
    degs = Counter(pmap.degree(v) for v in pmap.vertices)
    codegs = Counter(f.length for f in pmap.faces if f.bounded)
    return DegreeStats(
        max_degree=max(degs, default=0),
        max_codegree=max(codegs) if codegs else None,
        degree_histogram=dict(sorted(degs.items())),
        codegree_histogram=dict(sorted(codegs.items())),
    )


def validate_cycle(pmap: PlanarMap, cycle: Sequence[int]) -> tuple[int, ...]:
    cyc = tuple(cycle)
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise NotACycle(f"not a simple cycle: {list(cyc)}")
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        if not pmap.has_edge(a, b):
            raise NotACycle(f"{a}-{b} is not an edge")
    return cyc


def cycle_interior(pmap: PlanarMap, cycle: Sequence[int],
                   forbid_outer_boundary: bool = False) -> CycleRegion:
    """Faces and vertices strictly inside a simple cycle (dual reachability).

    With ``forbid_outer_boundary`` a cycle all of whose edges lie on the outer
    face is rejected: its interior is the whole window, which callers treating
    the outer face as infinity cannot fill.
    """
    cyc = validate_cycle(pmap, cycle)
    key = ("interior", cyc if cyc[0] == min(cyc) else None)
    cached = pmap._cache.get(key) if key[1] is not None else None
    if cached is None:
        edges = cycle_edges(cyc)
        faces = pmap.face_parity(edges)
        boundary = set(cyc)
        cached = CycleRegion(
            cycle=cyc,
            interior_faces=faces,
            interior_vertices=frozenset(pmap.vertices_strictly_inside(faces, boundary)),
            boundary_vertices=frozenset(boundary),
            strict_edges=frozenset(pmap.edges_strictly_inside(faces)),
        )
        if key[1] is not None:
            pmap._cache[key] = cached
    if forbid_outer_boundary and pmap.outer_face is not None:
        outer = pmap.outer_face
        if all(outer in (pmap.dart_face[(a, b)], pmap.dart_face[(b, a)])
               for a, b in cycle_edges(cyc)):
            raise CycleTouchesOuterFace(f"cycle {list(cyc)} is the outer face boundary")
    return cached


def enclosing_face(pmap: PlanarMap, sub: PlanarMap) -> int:
    """Face of ``sub`` that contains the outer face of ``pmap``."""
    host = {}
    for d in sub.darts():
        host.setdefault(pmap.dart_face[d], sub.dart_face[d])
    kept = {edge_key(*d) for d in sub.darts()}
    start = pmap.outer_face
    seen, queue = {start}, deque([start])
    while queue:
        f = queue.popleft()
        if f in host:
            return host[f]
        for u, v in pmap.faces[f].walk:
            g = pmap.dart_face[(v, u)]
            if edge_key(u, v) not in kept and g not in seen:
                seen.add(g)
                queue.append(g)
    raise ValidationError("sub-map does not meet the outer face")


def path_crosses_cycle(pmap: PlanarMap, path: Sequence[int], region: CycleRegion) -> bool:
    if not path:
        return False
    if path[0] in region.interior_vertices or path[-1] in region.interior_vertices:
        return False
    return any(e in region.strict_edges for e in path_edges(path))
