"""Deterministic windows of the example graphs.

Families: the square grid, {p,q} tessellation balls, the spoke constructions
``g1``/``g2`` grafted into faces of a base window, the dyadic graph, its
squares ``H(a)``, and the composite graph with squares hung off the baseline.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import FaceNotInCore, NotHyperbolicParameters, ValidationError
from .planar import PlanarMap

FAMILIES = ("grid", "tessellation", "g1", "g2", "dyadic", "dyadic_square", "composite")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0


def _sort_ccw(v, nbrs, angle):
    return sorted(nbrs, key=lambda w: angle(v, w) % (2 * math.pi))


def _outer_dart(rotation, angle, v, outward):
    """Dart at ``v`` whose face contains the direction ``outward``."""
    nbrs = rotation[v]
    rel = [((angle(v, w) - outward) % (2 * math.pi), w) for w in nbrs]
    return (v, min(rel)[1])


def embed_straight_line(adj: dict[int, Sequence[int]], pos: dict[int, tuple[float, float]],
                        rim=(), meta=None) -> PlanarMap:
    """Rotation system of a straight-line drawing."""
    def angle(v, w):
        return math.atan2(pos[w][1] - pos[v][1], pos[w][0] - pos[v][0])

    rotation = {v: _sort_ccw(v, adj[v], angle) for v in sorted(adj)}
    low = min(rotation, key=lambda v: (pos[v][1], pos[v][0], v))
    od = _outer_dart(rotation, angle, low, -math.pi / 2) if rotation[low] else None
    return PlanarMap(rotation, rim, od, meta)


# -- grid --------------------------------------------------------------------

def gen_grid(n: int) -> PlanarMap:
    if n < 2:
        raise ValidationError("grid needs n >= 2")
    adj, pos = {}, {}
    for i in range(n):
        for j in range(n):
            v = i * n + j
            pos[v] = (j, i)
            adj[v] = [(i + di) * n + j + dj for di, dj in ((0, 1), (1, 0), (0, -1), (-1, 0))
                      if 0 <= i + di < n and 0 <= j + dj < n]
    rim = [i * n + j for i in range(n) for j in range(n) if i in (0, n - 1) or j in (0, n - 1)]
    return embed_straight_line(adj, pos, rim, {"family": "grid", "params": {"n": n}})


def grid_vertex(n: int, i: int, j: int) -> int:
    return i * n + j


# -- {p,q} tessellations -------------------------------------------------------

def _mobius_to_origin(a: complex):
    return lambda z: (z - a) / (1 - a.conjugate() * z)


def _mobius_from_origin(a: complex):
    return lambda z: (z + a) / (1 + a.conjugate() * z)


def gen_tessellation(p: int, q: int, r: int) -> PlanarMap:
    """Ball of ``r`` face layers around a vertex of the {p,q} tiling.

    Layer 1 is the q faces at the centre vertex; layer k+1 adds every face
    meeting a vertex of layer k. Rim = vertices with a missing incident face.
    The tiling is realised in the Poincare disk; rotations are read off in the
    frame that moves each vertex to the origin, where geodesics are straight.
    """
    if (p - 2) * (q - 2) <= 4:
        raise NotHyperbolicParameters(f"{{{p},{q}}} is not hyperbolic")
    if r < 1:
        raise ValidationError("radius must be >= 1")
    R = math.acosh(1 / (math.tan(math.pi / p) * math.tan(math.pi / q)))
    rad = math.tanh(R / 2)
    corner = complex(rad, 0)
    to0 = _mobius_to_origin(corner)
    base = [to0(rad * cmath.exp(2j * math.pi * k / p)) for k in range(p)]
    base_center = to0(0j)

    def key(z: complex):
        return (round(z.real, 9), round(z.imag, 9))

    vid: dict = {}
    vpos: list[complex] = []

    def vertex(z):
        k = key(z)
        if k not in vid:
            vid[k] = len(vpos)
            vpos.append(z)
        return vid[k]

    faces: dict = {}
    order: list = []

    def add_face(center, poly):
        k = key(center)
        if k in faces:
            return False
        faces[k] = [vertex(z) for z in poly]
        order.append(k)
        return True

    def faces_around(vz: complex, center, poly):
        """Rotate one face about vertex ``vz`` to get all q faces there."""
        to, back = _mobius_to_origin(vz), _mobius_from_origin(vz)
        rot = cmath.exp(2j * math.pi / q)
        out = []
        c, pl = center, poly
        for _ in range(q):
            out.append((c, pl))
            c = back(rot * to(c))
            pl = [back(rot * to(z)) for z in pl]
        return out

    geom: dict = {}
    for c, pl in faces_around(0j, base_center, base):
        if add_face(c, pl):
            geom[key(c)] = (c, pl)
    done: set[int] = set()
    for _ in range(r - 1):
        window = list(order)
        for k in window:
            c, pl = geom[k]
            for z in pl:
                v = vertex(z)
                if v in done:
                    continue
                done.add(v)
                for c2, pl2 in faces_around(z, c, pl):
                    if add_face(c2, pl2):
                        geom[key(c2)] = (c2, pl2)
    adj: dict[int, set[int]] = {v: set() for v in range(len(vpos))}
    incident = {v: 0 for v in range(len(vpos))}
    for k in order:
        cyc = faces[k]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            adj[a].add(b)
            adj[b].add(a)
        for v in cyc:
            incident[v] += 1
    rim = [v for v in adj if incident[v] < q]

    def angle(v, w):
        return cmath.phase(_mobius_to_origin(vpos[v])(vpos[w]))

    rotation = {v: _sort_ccw(v, adj[v], angle) for v in adj}
    far = max(rotation, key=lambda v: (abs(vpos[v]), -v))
    od = _outer_dart(rotation, angle, far, cmath.phase(-_mobius_to_origin(vpos[far])(0j)))
    meta = {"family": "tessellation", "params": {"p": p, "q": q, "r": r}}
    return PlanarMap(rotation, rim, od, meta)


# -- spoke constructions ----------------------------------------------------------

def core_faces(pmap: PlanarMap) -> list[int]:
    """Bounded faces with a simple boundary and no rim vertex."""
    return [f.id for f in pmap.faces
            if f.bounded and f.is_simple() and not (set(f.vertices) & pmap.rim)]


def default_schedule(base: PlanarMap, ns: Sequence[int], seed: int = 0) -> list[tuple[int, int]]:
    eligible = core_faces(base)
    if len(eligible) < len(ns):
        raise FaceNotInCore(f"window has {len(eligible)} core faces, schedule needs {len(ns)}")
    chosen = random.Random(seed).sample(eligible, len(ns))
    return list(zip(chosen, ns))


def _spokes(base: PlanarMap, schedule, closing: bool, family: str) -> PlanarMap:
    rotation = {v: list(nbrs) for v, nbrs in base.rotation.items()}
    next_id = max(base.vertices) + 1
    witnesses = []
    eligible = set(core_faces(base))
    faces = [fid for fid, _ in schedule]
    if len(set(faces)) != len(faces):
        raise FaceNotInCore("schedule repeats a face")
    for fid, n in schedule:
        if fid not in eligible:
            raise FaceNotInCore(f"face {fid} is not a bounded core face")
        if n < 1:
            raise ValidationError("spoke length must be >= 1")
        walk = list(base.faces[fid].vertices)
        s = walk.index(min(walk))
        f = walk[s:] + walk[:s]
        k = len(f)
        hub = next_id
        next_id += 1
        # spoke i: hub, then n-1 new vertices, then f[i]
        P = []
        for i in range(k):
            inner = list(range(next_id, next_id + n - 1))
            next_id += n - 1
            P.append([hub] + inner + [f[i]])
        rung = [[False] * k for _ in range(n)]
        for i in range(k):
            if i + 1 < k or closing:
                for j in range(1, n):
                    rung[j][i] = True  # P_i[j] -- P_{i+1}[j]
        # f walks clockwise around the face interior, so ccw at the hub is reversed
        rotation[hub] = [P[i][1] for i in reversed(range(k))]
        for i in range(k):
            for j in range(1, n):
                v = P[i][j]
                nb = [P[i][j + 1]]
                if rung[j][(i - 1) % k] and (i > 0 or closing):
                    nb.append(P[(i - 1) % k][j])
                nb.append(P[i][j - 1])
                if rung[j][i]:
                    nb.append(P[(i + 1) % k][j])
                rotation[v] = nb
            prev = f[(i - 1) % k]
            at = rotation[f[i]].index(prev)
            rotation[f[i]].insert(at + 1, P[i][n - 1])
        interior = sorted({v for path in P for v in path[:-1]})
        witnesses.append({"face": fid, "n": n, "boundary": f, "hub": hub, "interior": interior})
    od = base.faces[base.outer_face].walk[0]
    meta = {"family": family, "base": base.meta, "schedule": [list(e) for e in schedule],
            "witnesses": witnesses}
    out = PlanarMap(rotation, base.rim, od, meta)
    for w in witnesses:
        hub, f = w["hub"], w["boundary"]
        # the face left of the first spoke leaving the hub: P_1 .. f_1 f_k .. P_k
        first = rotation[hub][-1]
        w["spoke_face_length"] = out.faces[out.face_of((first, hub))].length
    return out


def gen_bowditch_g1(base: PlanarMap, schedule: Sequence[tuple[int, int]]) -> PlanarMap:
    """Graft a hub with spokes of length n into each scheduled face; rungs join
    consecutive spokes except the last and first, leaving one long face."""
    return _spokes(base, schedule, closing=False, family="g1")


def gen_bowditch_g2(base: PlanarMap, schedule: Sequence[tuple[int, int]]) -> PlanarMap:
    """As :func:`gen_bowditch_g1`, with the closing rungs between last and first spoke."""
    return _spokes(base, schedule, closing=True, family="g2")


# -- dyadic graph ---------------------------------------------------------------

def _dyadic_block(levels: int, width: int, x0: int = 0, sign: int = 1, start: int = 0,
                  reuse_base: dict | None = None):
    """Vertices ``(i / 2**m, m)`` for ``0 <= m <= levels`` and ``0 <= i/2**m <= width``."""
    ids: dict[tuple[int, int], int] = {}
    pos: dict[int, tuple[float, float]] = {}
    nxt = start
    for m in range(levels + 1):
        for i in range(width * 2**m + 1):
            if m == 0 and reuse_base is not None:
                ids[(i, m)] = reuse_base[i]
                continue
            ids[(i, m)] = nxt
            pos[nxt] = (x0 + i / 2**m, sign * m)
            nxt += 1
    edges = []
    for (i, m), v in ids.items():
        if (i + 1, m) in ids:
            edges.append((v, ids[(i + 1, m)]))
        if (2 * i, m + 1) in ids:
            edges.append((v, ids[(2 * i, m + 1)]))
    return ids, pos, edges, nxt


def gen_dyadic(levels: int, width: int) -> PlanarMap:
    if levels < 1 or width < 1:
        raise ValidationError("dyadic window needs levels >= 1 and width >= 1")
    ids, pos, edges, _ = _dyadic_block(levels, width)
    adj: dict[int, list[int]] = {v: [] for v in pos}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    rim = [v for (i, m), v in ids.items() if i == 0 or i == width * 2**m or m == levels]
    meta = {"family": "dyadic", "params": {"levels": levels, "width": width}}
    return embed_straight_line(adj, pos, rim, meta)


def dyadic_vertex(i: int, level: int, width: int) -> int:
    """Id of ``(i / 2**level, level)`` in :func:`gen_dyadic` output."""
    return sum(width * 2**m + 1 for m in range(level)) + i


def gen_dyadic_square(a: int) -> PlanarMap:
    """``H(a)``: the dyadic graph induced on the square ``[0, a] x [0, a]``; finite, no rim."""
    if a < 1:
        raise ValidationError("H(a) needs a >= 1")
    m = gen_dyadic(a, a)
    od = m.faces[m.outer_face].walk[0]
    return PlanarMap(m.rotation, (), od, {"family": "dyadic_square", "params": {"a": a}})


def dyadic_square_size(a: int) -> int:
    return sum(a * 2**m + 1 for m in range(a + 1))


def gen_composite(N: int, levels: int = 2) -> PlanarMap:
    """Dyadic window with a mirrored copy of ``H(n)`` hung below ``[n^2, n^2 + n]``.

    ``(n^2 + k, 0)`` of the base is identified with ``(k, 0)`` of the copy.
    """
    if N < 1:
        raise ValidationError("composite needs N >= 1")
    width = N * N + N + 1
    ids, pos, edges, nxt = _dyadic_block(levels, width)
    base_rim = {v for (i, m), v in ids.items() if i == 0 or i == width * 2**m or m == levels}
    copies = []
    for n in range(1, N + 1):
        attach = [ids[(n * n + k, 0)] for k in range(n + 1)]
        cids, cpos, cedges, nxt = _dyadic_block(n, n, x0=n * n, sign=-1, start=nxt,
                                                reuse_base=attach)
        pos.update(cpos)
        shared = set(attach)
        edges += [e for e in cedges if not (e[0] in shared and e[1] in shared)]
        copies.append({"n": n, "attachment": attach, "vertices": sorted(set(cids.values()))})
    adj: dict[int, list[int]] = {v: [] for v in pos}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    meta = {"family": "composite", "params": {"N": N, "levels": levels}, "copies": copies}
    return embed_straight_line(adj, pos, sorted(base_rim), meta)


# -- dispatch -------------------------------------------------------------------

def generate(spec: GeneratorSpec) -> PlanarMap:
    fam, prm = spec.family, dict(spec.params)
    if fam == "grid":
        return gen_grid(prm["n"])
    if fam == "tessellation":
        return gen_tessellation(prm["p"], prm["q"], prm["r"])
    if fam in ("g1", "g2"):
        base = gen_tessellation(prm.get("p", 4), prm.get("q", 5), prm.get("r", 3))
        schedule = prm.get("schedule") or default_schedule(base, prm.get("ns", [1, 2, 3]), spec.seed)
        fn = gen_bowditch_g1 if fam == "g1" else gen_bowditch_g2
        return fn(base, [tuple(e) for e in schedule])
    if fam == "dyadic":
        return gen_dyadic(prm["levels"], prm["width"])
    if fam == "dyadic_square":
        return gen_dyadic_square(prm["a"])
    if fam == "composite":
        return gen_composite(prm["N"], prm.get("levels", 2))
    raise ValidationError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")
