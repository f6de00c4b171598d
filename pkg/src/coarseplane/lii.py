"""Decorations, combinatorial disks and linear isoperimetric checks.

A decoration is a maximal rim-free connected induced subgraph whose vertex
boundary has at most two vertices. Eliminating decorations (delete them, and
join the two attachment vertices when there are two) forces minimum degree 3
away from the rim without changing the coarse geometry.

The hyperbolicity certificate then runs the counting chain: for a cycle C
with strict interior S, ``c'|S| <= |dS| <= |C|`` and ``F <= D(G)(|S| + |C|)``
give ``F <= ((1 + c') D(G) / c') |C|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import networkx as nx

from .errors import (
    CheegerNonpositive,
    CoarsePlaneError,
    DegreeBelowTwo,
    EverythingIsADecoration,
    NonPlanarTrace,
    ValidationError,
    ViolationFound,
)
from .hull import geodetic_hull
from .isoperimetry import DEFAULT_ENUM_BUDGET, cheeger_lower, vertex_boundary
from .metric import DEFAULT_GEODESIC_CAP, bfs, certified_partners, core_radius
from .planar import PlanarMap, cycle_edges, cycle_interior, edge_key, enclosing_face


@dataclass(frozen=True)
class Decoration:
    vertices: tuple[int, ...]
    boundary: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)


def _nx_graph(pmap: PlanarMap) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(pmap.vertices)
    g.add_edges_from(pmap.edges())
    return g


def _rim_free_components(g: nx.Graph, removed: Sequence[int], rim: frozenset[int]):
    h = g.subgraph(v for v in g if v not in removed)
    for comp in nx.connected_components(h):
        if not (comp & rim):
            yield comp


def find_decorations(pmap: PlanarMap) -> list[Decoration]:
    """All maximal rim-free decorations, sorted by smallest vertex.

    Candidates are rim-free components of G - v, and of G - {v, w} for the
    cut vertices w of G - v. Maximality keeps candidates not strictly
    contained in another one.
    """
    g = _nx_graph(pmap)
    found: dict[frozenset, tuple[int, ...]] = {}
    for v in pmap.vertices:
        for comp in _rim_free_components(g, (v,), pmap.rim):
            found[frozenset(comp)] = ()
        g_v = g.subgraph(u for u in g if u != v)
        for w in sorted(nx.articulation_points(g_v)):
            for comp in _rim_free_components(g, (v, w), pmap.rim):
                found.setdefault(frozenset(comp), ())
    cands = sorted(found, key=len, reverse=True)
    maximal: list[frozenset] = []
    for c in cands:
        if not any(c < m for m in maximal):
            maximal.append(c)
    out = []
    for c in maximal:
        boundary = tuple(sorted(vertex_boundary(pmap, c)))
        if 1 <= len(boundary) <= 2:
            out.append(Decoration(tuple(sorted(c)), boundary))
    return sorted(out, key=lambda d: d.vertices)


def _attachment_slots(rotation: dict[int, list[int]], v: int, deco: set[int]) -> list[int]:
    """Rotation positions at ``v`` where a run of decoration neighbours begins."""
    nbrs = rotation[v]
    n = len(nbrs)
    return [i for i in range(n) if nbrs[i] in deco and nbrs[(i - 1) % n] not in deco]


def _remove_decoration(pmap: PlanarMap, deco: Decoration) -> PlanarMap:
    h = set(deco.vertices)
    rotation = {v: list(nbrs) for v, nbrs in pmap.rotation.items() if v not in h}
    if len(deco.boundary) == 1 or pmap.has_edge(*deco.boundary):
        for v in deco.boundary:
            rotation[v] = [w for w in rotation[v] if w not in h]
        return PlanarMap(rotation, pmap.rim, meta=pmap.meta)
    v, w = deco.boundary
    options = []
    for i, j in product(_attachment_slots(rotation, v, h), _attachment_slots(rotation, w, h)):
        rot = dict(rotation)
        rot[v] = _splice(rotation[v], i, w, h)
        rot[w] = _splice(rotation[w], j, v, h)
        options.append(rot)
    for rot in options:
        try:
            return PlanarMap(rot, pmap.rim, meta=pmap.meta)
        except NonPlanarTrace:
            continue
    raise NonPlanarTrace(f"no planar slot for replacement edge {v}-{w}")


def _splice(nbrs: list[int], slot: int, new: int, deco: set[int]) -> list[int]:
    out = []
    for i, u in enumerate(nbrs):
        if i == slot:
            out.append(new)
        elif u not in deco:
            out.append(u)
    return out


@dataclass
class Elimination:
    """Result of removing decorations until none remain."""

    pmap: PlanarMap
    correspondence: dict[int, int]
    removed: list[Decoration] = field(default_factory=list)
    rounds: int = 0


def eliminate_decorations(pmap: PlanarMap) -> Elimination:
    """Delete decorations (adding the shortcut edge for two-vertex boundaries) to a fixpoint.

    Within a round, overlapping decorations are deferred to the next round,
    where maximality is recomputed on the new map.
    """
    cur, removed, rounds = pmap, [], 0
    while True:
        decos = find_decorations(cur)
        if not decos:
            break
        rounds += 1
        used: set[int] = set()
        for d in decos:
            if used & (set(d.vertices) | set(d.boundary)):
                continue
            used |= set(d.vertices) | set(d.boundary)
            cur = _remove_decoration(cur, d)
            removed.append(d)
        if not (set(cur.vertices) - cur.rim):
            raise EverythingIsADecoration("no non-rim vertex survives decoration elimination")
    if not (set(cur.vertices) - cur.rim):
        raise EverythingIsADecoration("window has no non-rim vertex")
    return Elimination(cur, {v: v for v in cur.vertices}, removed, rounds)


@dataclass(frozen=True)
class QIReport:
    pairs: int
    max_stretch: Fraction
    size_bound: Fraction
    max_decoration: int


def quasi_isometry_check(g: PlanarMap, elim: Elimination, c: Fraction,
                         samples: Iterable[tuple[int, int]] | None = None) -> QIReport:
    """Check d_G' <= d_G <= (2/c) d_G' on certified pairs and decoration sizes <= 2/c."""
    if c <= 0:
        raise CheegerNonpositive("quasi-isometry bound needs a positive Cheeger constant")
    gp, corr = elim.pmap, elim.correspondence
    bound = Fraction(2) / c
    for d in elim.removed:
        if d.size > bound:
            raise ViolationFound(f"decoration of size {d.size} exceeds 2/c = {bound}", d.vertices)
    if samples is None:
        partners = certified_partners(g)
        samples = [(x, y) for x in sorted(partners) for y in sorted(partners[x])
                   if x < y and x in corr and y in corr]
    stretch, count = Fraction(1), 0
    for x, y in samples:
        dg = bfs(g, x).get(y)
        dp = bfs(gp, corr[x]).get(corr[y])
        if dg is None or dp is None:
            raise ViolationFound(f"pair {x},{y} disconnected", (x, y))
        if not dp <= dg <= bound * dp:
            raise ViolationFound(f"pair {x},{y}: d_G'={dp}, d_G={dg}, 2/c={bound}", (x, y))
        count += 1
        if dp:
            stretch = max(stretch, Fraction(dg, dp))
    biggest = max((d.size for d in elim.removed), default=0)
    return QIReport(count, stretch, bound, biggest)


# -- disks ------------------------------------------------------------------

@dataclass(frozen=True)
class CombinatorialDisk:
    pmap: PlanarMap
    boundary_cycle: tuple[int, ...]

    @property
    def bounded_faces(self) -> int:
        return len(self.pmap.bounded_faces())

    @property
    def max_face_length(self) -> int:
        return max((f.length for f in self.pmap.bounded_faces()), default=0)


def disk_from_cycle(pmap: PlanarMap, cycle: Sequence[int]) -> CombinatorialDisk:
    """The plane graph formed by a cycle and everything strictly inside it.

    Chords of the cycle that run outside it are not part of the disk.
    """
    reg = cycle_interior(pmap, cycle)
    if reg.all_vertices & pmap.rim:
        raise ValidationError("cycle or its interior meets the rim")
    keep = set(cycle_edges(reg.cycle)) | reg.strict_edges
    sub = pmap.restrict(keep)
    outer = enclosing_face(pmap, sub)
    disk = pmap.restrict(keep, outer_face_dart=sub.faces[outer].walk[0])
    low = [v for v in disk.vertices if disk.degree(v) < 2]
    if low:
        raise DegreeBelowTwo(f"vertices {low} have degree below 2 inside the cycle")
    return CombinatorialDisk(disk, reg.cycle)


@dataclass(frozen=True)
class LIIResult:
    holds: bool
    bounded_faces: int
    max_face_length: int
    perimeter: int


def lii_check(disk: CombinatorialDisk, k: Fraction | int, D: int) -> LIIResult:
    f, longest, perim = disk.bounded_faces, disk.max_face_length, len(disk.boundary_cycle)
    holds = longest <= D and f <= Fraction(k) * perim
    return LIIResult(holds, f, longest, perim)


@dataclass(frozen=True)
class CycleRatio:
    cycle: tuple[int, ...]
    faces: int

    @property
    def length(self) -> int:
        return len(self.cycle)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.faces, len(self.cycle))


def faces_inside_ratio(pmap: PlanarMap, cycles: Iterable[Sequence[int]]) -> tuple[Fraction, list[CycleRatio]]:
    table = [CycleRatio(tuple(c), len(cycle_interior(pmap, c).interior_faces)) for c in cycles]
    if not table:
        raise ValidationError("no cycles to measure")
    return max(r.ratio for r in table), table


# -- cycle samples --------------------------------------------------------------

def boundary_cycle_of_faces(pmap: PlanarMap, faces: Iterable[int]) -> tuple[int, ...] | None:
    """Ordered boundary of a union of faces, or None unless it is one simple cycle."""
    fs = set(faces)
    edges = {edge_key(u, v) for f in fs for u, v in pmap.faces[f].walk
             if pmap.dart_face[(v, u)] not in fs}
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if not adj or any(len(n) != 2 for n in adj.values()):
        return None
    start = min(adj)
    cyc, prev, cur = [start], None, start
    while True:
        a, b = adj[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        cyc.append(nxt)
        prev, cur = cur, nxt
    return tuple(cyc) if len(cyc) == len(adj) else None


def face_ball_cycles(pmap: PlanarMap, center: int | None = None, depth: int = 1) -> list[tuple[int, ...]]:
    """Boundaries of the unions of faces meeting balls around a deep vertex.

    Only simple cycles that stay ``depth`` away from the rim are returned.
    """
    rd = core_radius(pmap)
    if center is None:
        center = min(pmap.vertices, key=lambda v: (-rd[v], v))
    dist = bfs(pmap, center)
    out, r = [], 0
    while True:
        ball = {v for v, d in dist.items() if d <= r}
        faces = {f for v in ball for f in pmap.faces_at(v)}
        if pmap.outer_face in faces:
            break
        cyc = boundary_cycle_of_faces(pmap, faces)
        if cyc is None or min(rd[v] for v in cyc) < depth:
            break
        out.append(cyc)
        r += 1
    return out


def sample_cycles(pmap: PlanarMap, cap: int = DEFAULT_GEODESIC_CAP) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Default certificate sample: (hull cycles of core faces, all other cycles).

    The second list holds core face boundaries and face-ball cycles. Hulls
    that touch the rim or fail to build are left out.
    """
    from .generators import core_faces

    hulls, seen = [], set()
    for f in core_faces(pmap):
        try:
            cyc = geodetic_hull(pmap, f, cap).terminal
        except CoarsePlaneError:
            continue
        key = frozenset(cycle_edges(cyc))
        if not (set(cyc) & pmap.rim) and key not in seen:
            seen.add(key)
            hulls.append(cyc)
    rest = []
    extra = [pmap.faces[f].vertices for f in core_faces(pmap)] + face_ball_cycles(pmap)
    for cyc in extra:
        key = frozenset(cycle_edges(cyc))
        if key not in seen:
            seen.add(key)
            rest.append(tuple(cyc))
    return hulls, rest


# -- certificate -------------------------------------------------------------------

@dataclass(frozen=True)
class CycleCheck:
    length: int
    faces: int
    interior: int
    interior_boundary: int
    isoperimetric_ok: bool
    counting_ok: bool

    def to_json(self) -> dict:
        return {"len": self.length, "faces": self.faces}


@dataclass(frozen=True)
class Certificate:
    c_prime: Fraction
    k_hat: Fraction
    k_hat_hulls: Fraction
    bound: Fraction
    max_degree: int
    per_cycle: tuple[CycleCheck, ...]
    verdict: str

    def to_json(self) -> dict:
        return {
            "c_prime": {"num": self.c_prime.numerator, "den": self.c_prime.denominator},
            "k_hat": {"num": self.k_hat.numerator, "den": self.k_hat.denominator},
            "per_cycle": [c.to_json() for c in self.per_cycle],
            "verdict": self.verdict,
        }


def hyperbolicity_certificate(pmap: PlanarMap, size_cap: int, budget: int = DEFAULT_ENUM_BUDGET,
                              cycles: Sequence[Sequence[int]] | None = None,
                              geodesic_cap: int = DEFAULT_GEODESIC_CAP) -> Certificate:
    """Run the counting chain on the decoration-free map.

    The verdict is ``certified`` when every sampled cycle satisfies both
    ``|dS| >= c'|S|`` for its strict interior S and
    ``F <= ((1 + c') D(G) / c') |C|``; otherwise ``refused``.
    """
    elim = eliminate_decorations(pmap)
    gp = elim.pmap
    try:
        c = cheeger_lower(gp, size_cap, budget).ratio
    except ValidationError as exc:
        raise CheegerNonpositive(f"no core to measure: {exc}") from exc
    if c <= 0:
        raise CheegerNonpositive("Cheeger lower bound is zero")
    dmax = max(pmap.degree(v) for v in pmap.vertices)
    if cycles is None:
        hulls, rest = sample_cycles(gp, geodesic_cap)
        cycles = hulls + rest
    else:
        hulls = list(cycles)
    cycles = [tuple(cy) for cy in cycles
              if not (cycle_interior(gp, cy).all_vertices & gp.rim)]
    if not cycles:
        raise ValidationError("no rim-free cycle to certify")
    bound = (1 + c) * dmax / c
    checks = []
    for cy in cycles:
        reg = cycle_interior(gp, cy)
        s = reg.interior_vertices
        ds = len(vertex_boundary(gp, s))
        f = len(reg.interior_faces)
        checks.append(CycleCheck(len(cy), f, len(s), ds, ds >= c * len(s), f <= bound * len(cy)))
    k_hat, _ = faces_inside_ratio(gp, cycles)
    hull_set = [cy for cy in hulls if cy in cycles] or cycles
    k_hulls, _ = faces_inside_ratio(gp, hull_set)
    ok = all(ch.isoperimetric_ok and ch.counting_ok for ch in checks)
    return Certificate(c, k_hat, k_hulls, bound, dmax, tuple(checks),
                       "certified" if ok else "refused")
