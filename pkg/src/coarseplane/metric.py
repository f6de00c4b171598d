"""Graph metric on windows: distances, geodesics, geodetic cycles, thin triangles.

Window distances can undercut the distances of an infinite graph only by
running through the rim. A pair ``(x, y)`` is *certified* when
``d(x, y) < min(rim_distance(x), rim_distance(y))``; every geodesic between a
certified pair stays off the rim, so its length is the same in any extension
of the window.
"""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass, field
from functools import partial
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import CapExceeded, Disconnected
from .parallel import ordered_map, thread_count
from .planar import PlanarMap

DEFAULT_GEODESIC_CAP = 10**6
INF = math.inf


@dataclass(frozen=True)
class GeodesicPath:
    vertices: tuple[int, ...]
    certified: bool = False

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class CoreCertificate:
    vertex: int
    rim_distance: float


@dataclass(frozen=True)
class GeodeticCheck:
    is_geodetic: bool
    witness: tuple[int, int] | None = None

    def __bool__(self):
        return self.is_geodetic


@dataclass
class DeltaResult:
    delta: int
    scope: str
    exact: bool
    triangles: int
    witness: dict | None = field(default=None)

    def to_json(self) -> dict:
        return {"delta": self.delta, "scope": self.scope, "exact": self.exact,
                "triangles": self.triangles, "witness": self.witness}


# -- distances -------------------------------------------------------------

def bfs(pmap: PlanarMap, source: int) -> dict[int, int]:
    cache = pmap._cache.setdefault("bfs", {})
    hit = cache.get(source)
    if hit is not None:
        return hit
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in pmap.rotation[v]:
            if w not in dist:
                dist[w] = dv
                queue.append(w)
    cache[source] = dist
    return dist


def distance(pmap: PlanarMap, x: int, y: int) -> int:
    d = bfs(pmap, x).get(y)
    if d is None:
        raise Disconnected(f"{x} and {y} lie in different components")
    return d


def vertex_index(pmap: PlanarMap) -> dict[int, int]:
    idx = pmap._cache.get("index")
    if idx is None:
        idx = pmap._cache["index"] = {v: i for i, v in enumerate(pmap.vertices)}
    return idx


def distance_matrix(pmap: PlanarMap) -> np.ndarray:
    """All-pairs hop distances indexed by ``vertex_index``; -1 when unreachable."""
    mat = pmap._cache.get("apsp")
    if mat is None:
        idx = vertex_index(pmap)
        rows, cols = [], []
        for u, v in pmap.edges():
            rows += [idx[u], idx[v]]
            cols += [idx[v], idx[u]]
        n = len(idx)
        adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        raw = shortest_path(adj, method="D", unweighted=True, directed=False)
        mat = np.where(np.isinf(raw), -1, raw).astype(np.int32)
        pmap._cache["apsp"] = mat
    return mat


def core_radius(pmap: PlanarMap) -> dict[int, float]:
    """Multi-source BFS distance from the rim (``inf`` everywhere for rimless maps)."""
    cached = pmap._cache.get("core_radius")
    if cached is not None:
        return cached
    dist: dict[int, float] = {v: 0 for v in sorted(pmap.rim)}
    queue = deque(dist)
    while queue:
        v = queue.popleft()
        for w in pmap.rotation[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    out = {v: dist.get(v, INF) for v in pmap.vertices}
    pmap._cache["core_radius"] = out
    return out


def core_certificates(pmap: PlanarMap) -> list[CoreCertificate]:
    return [CoreCertificate(v, r) for v, r in core_radius(pmap).items()]


def is_certified_pair(pmap: PlanarMap, x: int, y: int) -> bool:
    rd = core_radius(pmap)
    d = bfs(pmap, x).get(y)
    return d is not None and d < min(rd[x], rd[y])


def certified_partners(pmap: PlanarMap) -> dict[int, set[int]]:
    """For each vertex, the vertices it forms a certified pair with."""
    cached = pmap._cache.get("certified")
    if cached is not None:
        return cached
    rd = core_radius(pmap)
    out: dict[int, set[int]] = {}
    for x in pmap.vertices:
        limit = rd[x]
        partners = set()
        if limit > 0:
            for y, d in bfs(pmap, x).items():
                if y != x and d < limit and d < rd[y]:
                    partners.add(y)
        out[x] = partners
    pmap._cache["certified"] = out
    return out


# -- geodesics -------------------------------------------------------------

def interval(pmap: PlanarMap, x: int, y: int) -> list[int]:
    """Vertices on some x-y geodesic, sorted by distance from x."""
    dx, dy = bfs(pmap, x), bfs(pmap, y)
    if y not in dx:
        raise Disconnected(f"{x} and {y} lie in different components")
    total = dx[y]
    verts = [v for v, d in dx.items() if d <= total and d + dy.get(v, total + 1) == total]
    verts.sort(key=lambda v: (dx[v], v))
    return verts


def count_geodesics(pmap: PlanarMap, x: int, y: int) -> int:
    dx = bfs(pmap, x)
    verts = interval(pmap, x, y)
    on = set(verts)
    count = {x: 1}
    for v in verts[1:]:
        count[v] = sum(count[w] for w in pmap.rotation[v] if w in on and dx[w] == dx[v] - 1)
    return count[y]


def enumerate_geodesics(pmap: PlanarMap, x: int, y: int,
                        cap: int = DEFAULT_GEODESIC_CAP) -> list[GeodesicPath]:
    """All x-y geodesics in lexicographic order of their vertex sequences."""
    total = count_geodesics(pmap, x, y)
    if total > cap:
        raise CapExceeded(f"{total} geodesics between {x} and {y} exceed cap {cap}", total)
    dy = bfs(pmap, y)
    certified = is_certified_pair(pmap, x, y)
    out = []
    stack = [(x,)]
    while stack:
        path = stack.pop()
        v = path[-1]
        if v == y:
            out.append(GeodesicPath(path, certified))
            continue
        nxt = sorted(w for w in pmap.rotation[v] if dy.get(w, -1) == dy[v] - 1)
        for w in reversed(nxt):
            stack.append(path + (w,))
    return out


def first_geodesic(pmap: PlanarMap, x: int, y: int) -> list[int]:
    """Lexicographically first x-y geodesic, without enumerating the rest."""
    dy = bfs(pmap, y)
    if x not in dy:
        raise Disconnected(f"{x} and {y} lie in different components")
    path = [x]
    while path[-1] != y:
        v = path[-1]
        path.append(min(w for w in pmap.rotation[v] if dy.get(w, -1) == dy[v] - 1))
    return path


def geodesic_through(pmap: PlanarMap, x: int, p: int, y: int) -> list[int]:
    return first_geodesic(pmap, x, p) + first_geodesic(pmap, p, y)[1:]


def is_geodesic(pmap: PlanarMap, path: Sequence[int]) -> bool:
    if any(not pmap.has_edge(a, b) for a, b in zip(path, path[1:])):
        return False
    return len(path) - 1 == distance(pmap, path[0], path[-1])


def is_geodetic_cycle(pmap: PlanarMap, cycle: Sequence[int]) -> GeodeticCheck:
    """Check that one of the two arcs between any two cycle vertices is a geodesic.

    The scan runs over index pairs ``i < j`` in cycle order and reports the
    first pair for which both arcs are longer than the distance.
    """
    n = len(cycle)
    for i in range(n):
        di = bfs(pmap, cycle[i])
        for j in range(i + 1, n):
            arc = j - i
            if min(arc, n - arc) > di[cycle[j]]:
                return GeodeticCheck(False, (cycle[i], cycle[j]))
    return GeodeticCheck(True, None)


# -- thin triangles --------------------------------------------------------

class _TriangleKernel:
    """Per-pair tables ``M[p] = max over x-y geodesics g of d(p, g)``.

    The maximum over geodesics of the distance from a fixed point is a
    bottleneck path problem on the geodesic DAG, solved by one backward pass.
    """

    def __init__(self, pmap: PlanarMap):
        self.pmap = pmap
        self.idx = vertex_index(pmap)
        self.D = distance_matrix(pmap)
        self._tables: dict[tuple[int, int], tuple[np.ndarray, list[int]]] = {}

    def table(self, a: int, b: int):
        key = (a, b) if a < b else (b, a)
        hit = self._tables.get(key)
        if hit is not None:
            return hit
        a, b = key
        pmap, idx, D = self.pmap, self.idx, self.D
        verts = interval(pmap, a, b)
        da = D[idx[a]]
        on = set(verts)
        best: dict[int, np.ndarray] = {}
        for v in reversed(verts):
            col = D[:, idx[v]]
            succ = [best[w] for w in pmap.rotation[v] if w in on and da[idx[w]] == da[idx[v]] + 1]
            if succ:
                best[v] = np.minimum(col, np.maximum.reduce(succ) if len(succ) > 1 else succ[0])
            else:
                best[v] = col
        hit = (best[a], verts)
        self._tables[key] = hit
        return hit

    def triangle(self, x: int, y: int, z: int):
        """Thinness of the fattest geodesic triangle on (x, y, z) and its witness."""
        idx = self.idx
        best = (-1, None)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            _, side = self.table(a, b)
            m1, _ = self.table(b, c)
            m2, _ = self.table(c, a)
            cols = np.fromiter((idx[v] for v in side), dtype=np.int64, count=len(side))
            vals = np.minimum(m1[cols], m2[cols])
            k = int(np.argmax(vals))
            if vals[k] > best[0]:
                best = (int(vals[k]), (a, b, c, side[k]))
        return best

    def witness_path(self, a: int, b: int, p: int) -> list[int]:
        """An a-b geodesic realising ``max d(p, g)``."""
        pmap, idx, D = self.pmap, self.idx, self.D
        key = (a, b) if a < b else (b, a)
        s, t = key
        verts = interval(pmap, s, t)
        on = set(verts)
        ds = D[idx[s]]
        val: dict[int, int] = {}
        for v in reversed(verts):
            succ = [val[w] for w in pmap.rotation[v] if w in on and ds[idx[w]] == ds[idx[v]] + 1]
            own = int(D[idx[p], idx[v]])
            val[v] = min(own, max(succ)) if succ else own
        path = [s]
        while path[-1] != t:
            v = path[-1]
            nxt = sorted(w for w in pmap.rotation[v] if w in on and ds[idx[w]] == ds[idx[v]] + 1)
            path.append(max(nxt, key=lambda w: (val[w], -w)))
        return path if key == (a, b) else path[::-1]


def scope_triangles(pmap: PlanarMap, scope: str | Iterable[int] = "certified") -> list[tuple[int, int, int]]:
    """Vertex triples whose three pairs are all in scope.

    ``"certified"``: every pair certified. ``"all"``: every triple of one
    component. An iterable restricts to triples of those vertices (advisory).
    """
    if scope == "certified":
        partners = certified_partners(pmap)
        out = []
        for x in pmap.vertices:
            px = sorted(y for y in partners[x] if y > x)
            for i, y in enumerate(px):
                py = partners[y]
                for z in px[i + 1:]:
                    if z in py:
                        out.append((x, y, z))
        return out
    verts = sorted(pmap.vertices if scope == "all" else set(scope))
    comp_of = {}
    for ci, comp in enumerate(pmap.components()):
        for v in comp:
            comp_of[v] = ci
    n = len(verts)
    return [
        (verts[i], verts[j], verts[k])
        for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)
        if comp_of[verts[i]] == comp_of[verts[j]] == comp_of[verts[k]]
    ]


def _delta_chunk(pmap: PlanarMap, triples: Sequence[tuple[int, int, int]]):
    """First triangle of maximal thinness defect within a chunk."""
    kernel = _TriangleKernel(pmap)
    best, arg = -1, None
    for x, y, z in triples:
        val, where = kernel.triangle(x, y, z)
        if val > best:
            best, arg = val, where
    return best, arg


def thin_triangle_delta(pmap: PlanarMap, scope: str | Iterable[int] = "certified",
                        mode: str = "exact", seed: int = 0, trials: int = 1000) -> DeltaResult:
    """Smallest delta making every geodesic triangle over the scope delta-thin.

    All geodesic choices for every side are considered, and points are
    vertices. ``mode="sampled"`` evaluates ``trials`` triangles drawn with
    ``random.Random(seed)`` and returns a lower bound of the exact value.
    """
    triples = scope_triangles(pmap, scope)
    label = scope if isinstance(scope, str) else "subset"
    if mode == "sampled" and triples:
        rng = random.Random(seed)
        triples = [triples[rng.randrange(len(triples))] for _ in range(trials)]
    elif mode != "exact" and mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    workers = thread_count()
    size = max(1, -(-len(triples) // (4 * workers)))
    chunks = [triples[i:i + size] for i in range(0, len(triples), size)]
    best, arg = -1, None
    for val, where in ordered_map(partial(_delta_chunk, pmap), chunks, workers):
        if val > best:
            best, arg = val, where
    kernel = _TriangleKernel(pmap)
    witness = None
    if arg is not None:
        a, b, c, p = arg
        side = geodesic_through(pmap, a, p, b)
        witness = {
            "triangle": [a, b, c],
            "point": p,
            "distance": best,
            "side": side,
            "others": [kernel.witness_path(b, c, p), kernel.witness_path(c, a, p)],
        }
    best = max(best, 0)
    return DeltaResult(best, label, mode == "exact", len(triples), witness)
