"""Vertex isoperimetry on windows.

Subsets are drawn from the deep core (rim distance >= 2) so that their vertex
boundary never contains a rim vertex. Ratios are exact ``Fraction`` values.

Connected subsets are enumerated with an ESU-style extension scheme over
Python-int bitmasks: every connected subset is produced exactly once, rooted
at its smallest vertex. Work is partitioned by root and merged in root order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Iterable, Iterator, Sequence

from .errors import NotConnected, SearchBudgetExceeded, TouchesRim, ValidationError
from .metric import core_radius
from .parallel import ordered_map
from .planar import Dart, PlanarMap, degree_stats, edge_key, enclosing_face

DEFAULT_ENUM_BUDGET = 10**7


def vertex_boundary(pmap: PlanarMap, subset: Iterable[int]) -> set[int]:
    s = set(subset)
    return {w for v in s for w in pmap.rotation[v] if w not in s}


def core_vertices(pmap: PlanarMap, depth: int = 2) -> list[int]:
    rd = core_radius(pmap)
    return [v for v in pmap.vertices if rd[v] >= depth]


def is_connected_subset(pmap: PlanarMap, subset: Iterable[int]) -> bool:
    s = set(subset)
    if not s:
        return False
    start = min(s)
    seen, queue = {start}, deque([start])
    while queue:
        v = queue.popleft()
        for w in pmap.rotation[v]:
            if w in s and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == s


def induced_components(pmap: PlanarMap, subset: Iterable[int]) -> list[list[int]]:
    s, out = set(subset), []
    while s:
        start = min(s)
        comp, queue = {start}, deque([start])
        while queue:
            v = queue.popleft()
            for w in pmap.rotation[v]:
                if w in s and w not in comp:
                    comp.add(w)
                    queue.append(w)
        s -= comp
        out.append(sorted(comp))
    return out


# -- enumeration ---------------------------------------------------------------

@dataclass(frozen=True)
class _Masks:
    order: tuple[int, ...]      # bit index -> vertex id
    nbr: tuple[int, ...]        # neighbour mask per bit (whole map)
    allowed: int                # core vertices


def _masks(pmap: PlanarMap, depth: int) -> _Masks:
    order = pmap.vertices
    idx = {v: i for i, v in enumerate(order)}
    nbr = tuple(sum(1 << idx[w] for w in pmap.rotation[v]) for v in order)
    allowed = sum(1 << idx[v] for v in core_vertices(pmap, depth))
    return _Masks(order, nbr, allowed)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass
class _RootSummary:
    count: int = 0
    best: tuple | None = None                      # (ratio, size, members)
    profile: dict[int, tuple[int, int]] = field(default_factory=dict)  # b -> (s, mask)


def _enumerate_root(root: int, masks: _Masks, cap: int, budget: int) -> _RootSummary:
    """Summarise all connected core subsets whose smallest bit is ``root``."""
    nbr, allowed = masks.nbr, masks.allowed
    above = allowed & ~((1 << (root + 1)) - 1)
    out = _RootSummary()

    def visit(sub: int, closed: int, size: int):
        out.count += 1
        if out.count > budget:
            raise SearchBudgetExceeded("connected-subset enumeration budget exhausted", out.count)
        b = (closed & ~sub).bit_count()
        ratio = Fraction(b, size)
        members = tuple(_bits(sub))
        key = (ratio, size, members)
        if out.best is None or key < out.best:
            out.best = key
        prev = out.profile.get(b)
        if prev is None or size > prev[0] or (size == prev[0] and sub < prev[1]):
            out.profile[b] = (size, sub)

    def extend(sub: int, closed: int, size: int, ext: int):
        visit(sub, closed, size)
        if size == cap:
            return
        while ext:
            low = ext & -ext
            w = low.bit_length() - 1
            ext ^= low
            fresh = nbr[w] & above & ~closed
            extend(sub | low, closed | nbr[w] | low, size + 1, ext | fresh)

    start = 1 << root
    extend(start, start | nbr[root], 1, nbr[root] & above)
    return out


def connected_subsets(pmap: PlanarMap, size_cap: int, depth: int = 2,
                      budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[tuple[int, ...]]:
    """Yield every connected core subset of size <= ``size_cap`` (sorted tuples)."""
    if size_cap < 1:
        raise ValueError("size_cap must be >= 1")
    masks = _masks(pmap, depth)
    nbr, allowed, order = masks.nbr, masks.allowed, masks.order
    count = 0
    for root in _bits(allowed):
        above = allowed & ~((1 << (root + 1)) - 1)
        stack = [(1 << root, (1 << root) | nbr[root], 1, nbr[root] & above)]
        while stack:
            sub, closed, size, ext = stack.pop()
            count += 1
            if count > budget:
                raise SearchBudgetExceeded("connected-subset enumeration budget exhausted", count)
            yield tuple(order[i] for i in _bits(sub))
            if size == size_cap:
                continue
            children = []
            while ext:
                low = ext & -ext
                w = low.bit_length() - 1
                ext ^= low
                children.append((sub | low, closed | nbr[w] | low, size + 1,
                                 ext | (nbr[w] & above & ~closed)))
            stack.extend(reversed(children))


@dataclass(frozen=True)
class CheegerResult:
    ratio: Fraction
    witness: tuple[int, ...]
    disconnected_bound: Fraction
    max_degree: int
    subsets: int

    def to_json(self) -> dict:
        return {"num": self.ratio.numerator, "den": self.ratio.denominator,
                "witness": list(self.witness)}


@dataclass(frozen=True)
class ProfilePoint:
    b: int
    s: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class IsoProfile:
    """Pareto frontier of (boundary size, max interior size).

    Only points where the interior size strictly exceeds every point with a
    smaller boundary are kept, so ``s`` increases along ``points`` and every
    point has a witness with exactly that boundary and size.
    """

    points: tuple[ProfilePoint, ...]
    size_cap: int
    exhaustive: bool

    def bound(self, b: int) -> int:
        """Largest recorded interior size with boundary at most ``b`` (0 if none)."""
        best = 0
        for p in self.points:
            if p.b <= b:
                best = max(best, p.s)
        return best

    def to_json(self) -> list[dict]:
        return [{"b": p.b, "s": p.s} for p in self.points]


@dataclass(frozen=True)
class IsoReport:
    cheeger: CheegerResult
    profile: IsoProfile

    def to_json(self) -> dict:
        return {"cheeger": self.cheeger.to_json(), "profile": self.profile.to_json(),
                "exhaustive": self.profile.exhaustive}


def isoperimetry(pmap: PlanarMap, size_cap: int, budget: int = DEFAULT_ENUM_BUDGET,
                 depth: int = 2, workers: int | None = None) -> IsoReport:
    """Exact Cheeger minimum and iso-profile over connected core subsets.

    Each root partition may use up to ``budget`` states; the merged total is
    checked against the same budget afterwards, so the outcome does not depend
    on how partitions were scheduled.
    """
    if size_cap < 1:
        raise ValueError("size_cap must be >= 1")
    masks = _masks(pmap, depth)
    roots = list(_bits(masks.allowed))
    if not roots:
        raise ValidationError("window has no core vertices at the requested depth")
    parts = ordered_map(partial(_enumerate_root, masks=masks, cap=size_cap, budget=budget),
                        roots, workers)
    total = sum(p.count for p in parts)
    if total > budget:
        raise SearchBudgetExceeded("connected-subset enumeration budget exhausted", total)
    best = min(p.best for p in parts)
    per_b: dict[int, tuple[int, int]] = {}
    for p in parts:
        for b, (s, mask) in p.profile.items():
            cur = per_b.get(b)
            if cur is None or s > cur[0] or (s == cur[0] and mask < cur[1]):
                per_b[b] = (s, mask)
    points, top = [], 0
    for b in sorted(per_b):
        s, mask = per_b[b]
        if s > top:
            points.append(ProfilePoint(b, s, tuple(masks.order[i] for i in _bits(mask))))
            top = s
    dmax = max(pmap.degree(v) for v in pmap.vertices)
    ratio, _, members = best
    cheeger = CheegerResult(ratio, tuple(masks.order[i] for i in members),
                            ratio / dmax if dmax else ratio, dmax, total)
    # exhaustive means no size was cut short: the cap exceeds the core
    exhaustive = size_cap >= len(roots)
    return IsoReport(cheeger, IsoProfile(tuple(points), size_cap, exhaustive))


def cheeger_lower(pmap: PlanarMap, size_cap: int, budget: int = DEFAULT_ENUM_BUDGET,
                  depth: int = 2) -> CheegerResult:
    return isoperimetry(pmap, size_cap, budget, depth).cheeger


def iso_profile(pmap: PlanarMap, size_cap: int, budget: int = DEFAULT_ENUM_BUDGET,
                depth: int = 2) -> IsoProfile:
    return isoperimetry(pmap, size_cap, budget, depth).profile


# -- boundary walk -------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryWalkResult:
    subset: tuple[int, ...]
    walk: tuple[Dart, ...]
    boundary_hits: int           # walk positions at boundary vertices
    distinct_hits: int           # distinct boundary vertices on the walk
    subwalks: tuple[int, ...]    # lengths between consecutive boundary hits
    codegree: int

    @property
    def length(self) -> int:
        return len(self.walk)

    def satisfies_bound(self) -> bool:
        return (all(k < self.codegree for k in self.subwalks)
                and self.distinct_hits * self.codegree > self.length)


def boundary_walk(pmap: PlanarMap, subset: Iterable[int]) -> BoundaryWalkResult:
    """Outer walk of S plus its incident edges, split at boundary vertices.

    Each piece between consecutive boundary vertices must follow a single
    bounded face of the full map, so its length is below the codegree.
    """
    s = set(subset)
    if not s:
        raise NotConnected("empty subset")
    if not is_connected_subset(pmap, s):
        raise NotConnected(f"{sorted(s)} is not connected")
    boundary = vertex_boundary(pmap, s)
    if (s | boundary) & pmap.rim:
        raise TouchesRim("subset or its boundary meets the rim")
    codegree = degree_stats(pmap).max_codegree
    if codegree is None:
        raise ValidationError("window has no bounded face")
    h_edges = {edge_key(v, w) for v in s for w in pmap.rotation[v]}
    h = pmap.restrict(h_edges)
    walk = list(h.faces[enclosing_face(pmap, h)].walk)
    first = next((i for i, (u, _) in enumerate(walk) if u in boundary), None)
    if first is None:
        raise ValidationError("outer walk misses the boundary")
    walk = walk[first:] + walk[:first]
    cuts = [i for i, (u, _) in enumerate(walk) if u in boundary] + [len(walk)]
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        piece = walk[a:b]
        for d, e in zip(piece, piece[1:]):
            if pmap.face_next(d) != e:
                raise ValidationError(f"subwalk {piece} is not facial in the window")
        if not pmap.faces[pmap.dart_face[piece[0]]].bounded:
            raise ValidationError(f"subwalk {piece} follows the unbounded face")
        pieces.append(len(piece))
    hits = len(cuts) - 1
    distinct = len({u for u, _ in walk if u in boundary})
    return BoundaryWalkResult(tuple(sorted(s)), tuple(walk), hits, distinct, tuple(pieces), codegree)


# -- disconnected reduction ------------------------------------------------------

@dataclass(frozen=True)
class ReductionRow:
    subset: tuple[int, ...]
    boundary: int
    component_boundary_sum: int
    component_size_sum: int
    holds: bool


def reduction_check(pmap: PlanarMap, samples: Sequence[Iterable[int]], c: Fraction) -> list[ReductionRow]:
    """Check |dS| >= (1/D) sum |dS_i| >= (c/D) sum |S_i| for each sample."""
    dmax = max(pmap.degree(v) for v in pmap.vertices)
    rows = []
    for sample in samples:
        s = sorted(set(sample))
        comps = induced_components(pmap, s)
        b = len(vertex_boundary(pmap, s))
        bsum = sum(len(vertex_boundary(pmap, comp)) for comp in comps)
        ssum = sum(len(comp) for comp in comps)
        holds = Fraction(b) >= Fraction(bsum, dmax) >= c * ssum / dmax
        rows.append(ReductionRow(tuple(s), b, bsum, ssum, holds))
    return rows
