"""DOT and SVG renderings. Coordinates are for display only."""

from __future__ import annotations

import math

import numpy as np
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import spsolve

from .planar import PlanarMap


def to_dot(pmap: PlanarMap) -> str:
    lines = ["graph window {", "  node [shape=circle, width=0.2, label=\"\"];"]
    for v in pmap.vertices:
        attrs = f"xlabel=\"{v}\""
        if v in pmap.rim:
            attrs += ", color=gray"
        lines.append(f"  {v} [{attrs}];")
    for u, v in pmap.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tutte_layout(pmap: PlanarMap) -> dict[int, tuple[float, float]]:
    """Pin the outer walk on a unit circle; every other vertex sits at the mean of its neighbours."""
    outer = []
    if pmap.outer_face is not None:
        for u, _ in pmap.faces[pmap.outer_face].walk:
            if u not in outer:
                outer.append(u)
    pos: dict[int, tuple[float, float]] = {}
    for i, v in enumerate(outer):
        t = 2 * math.pi * i / len(outer)
        pos[v] = (math.cos(t), math.sin(t))
    free = [v for v in pmap.vertices if v not in pos]
    if free:
        idx = {v: i for i, v in enumerate(free)}
        a = lil_matrix((len(free), len(free)))
        rhs = np.zeros((len(free), 2))
        for v in free:
            i = idx[v]
            a[i, i] = max(pmap.degree(v), 1)
            for w in pmap.rotation[v]:
                if w in idx:
                    a[i, idx[w]] -= 1
                else:
                    rhs[i] += pos[w]
        sol = spsolve(a.tocsr(), rhs)
        sol = np.nan_to_num(np.atleast_2d(sol))
        for v in free:
            pos[v] = (float(sol[idx[v], 0]), float(sol[idx[v], 1]))
    return pos


def to_svg(pmap: PlanarMap, size: int = 600) -> str:
    pos = tutte_layout(pmap)
    half = size / 2
    scale = 0.95 * half

    def xy(v):
        x, y = pos[v]
        return f"{half + scale * x:.3f}", f"{half - scale * y:.3f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           '<g stroke="black" stroke-width="0.6">']
    for u, v in pmap.edges():
        (x1, y1), (x2, y2) = xy(u), xy(v)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
    out.append("</g>")
    out.append('<g stroke="none">')
    for v in pmap.vertices:
        x, y = xy(v)
        fill = "gray" if v in pmap.rim else "black"
        out.append(f'<circle cx="{x}" cy="{y}" r="1.5" fill="{fill}"><title>{v}</title></circle>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
