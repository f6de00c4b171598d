"""End-to-end analysis of a window: measurements plus three implication checks.

Verdicts use a fixed vocabulary. ``certified`` means every check the window
can support passed; ``refused`` means a check failed; ``hypothesis-failed``
means the implication's premise was not established on this window;
``advisory`` means the checks passed but a premise could not be verified on
a finite window, so nothing is claimed.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .errors import CheegerNonpositive, CoarsePlaneError, EverythingIsADecoration
from .hull import HullTrace, certified_cycle, geodetic_hull
from .isoperimetry import (
    DEFAULT_ENUM_BUDGET,
    IsoReport,
    boundary_walk,
    connected_subsets,
    isoperimetry,
    vertex_boundary,
)
from .lii import Certificate, hyperbolicity_certificate
from .metric import DEFAULT_GEODESIC_CAP, DeltaResult, core_radius, thin_triangle_delta
from .planar import PlanarMap, cycle_interior, degree_stats

CERTIFIED, REFUSED, HYPOTHESIS_FAILED, ADVISORY = "certified", "refused", "hypothesis-failed", "advisory"
REPORT_FORMAT = "report-v1"


@dataclass(frozen=True)
class Caps:
    size_cap: int = 8
    enum_budget: int = DEFAULT_ENUM_BUDGET
    geodesic_cap: int = DEFAULT_GEODESIC_CAP
    seed: int = 0
    # windows larger than this get a sampled (lower-bound) window delta
    exact_delta_vertices: int = 300
    delta_trials: int = 20000
    walk_limit: int = 5000

    def __post_init__(self):
        for name in ("size_cap", "enum_budget", "geodesic_cap", "exact_delta_vertices",
                     "delta_trials", "walk_limit"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


def frac(x: Fraction | int) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


@dataclass
class Verdict:
    verdict: str
    notes: list[str] = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "notes": list(self.notes), "counts": dict(self.counts)}


class Measurements:
    """Shared, memoised sub-measurements of one window."""

    def __init__(self, pmap: PlanarMap, caps: Caps):
        self.pmap, self.caps = pmap, caps
        self._memo: dict = {}

    def _get(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    @property
    def stats(self):
        return self._get("stats", lambda: degree_stats(self.pmap))

    @property
    def delta(self) -> DeltaResult:
        return self._get("delta", lambda: thin_triangle_delta(self.pmap, "certified"))

    @property
    def window_delta(self) -> DeltaResult:
        def run():
            if len(self.pmap.vertices) <= self.caps.exact_delta_vertices:
                return thin_triangle_delta(self.pmap, "all")
            return thin_triangle_delta(self.pmap, "all", mode="sampled",
                                       seed=self.caps.seed, trials=self.caps.delta_trials)
        return self._get("window_delta", run)

    @property
    def iso(self) -> IsoReport | None:
        def run():
            try:
                return isoperimetry(self.pmap, self.caps.size_cap, self.caps.enum_budget)
            except CoarsePlaneError as exc:
                if exc.exit_code == 3:
                    raise
                return None
        return self._get("iso", run)

    @property
    def hulls(self) -> dict[int, HullTrace | str]:
        def run():
            from .generators import core_faces
            out: dict[int, HullTrace | str] = {}
            for f in core_faces(self.pmap):
                try:
                    out[f] = geodetic_hull(self.pmap, f, self.caps.geodesic_cap)
                except CoarsePlaneError as exc:
                    if exc.exit_code == 3:
                        raise
                    out[f] = type(exc).__name__
            return out
        return self._get("hulls", run)

    @property
    def certificate(self) -> Certificate | str:
        def run():
            try:
                return hyperbolicity_certificate(self.pmap, self.caps.size_cap, self.caps.enum_budget,
                                                 geodesic_cap=self.caps.geodesic_cap)
            except (CheegerNonpositive, EverythingIsADecoration) as exc:
                return f"{type(exc).__name__}: {exc}"
        return self._get("certificate", run)


def check_implication_1(m: Measurements) -> Verdict:
    """Non-amenable with bounded codegree implies hyperbolic."""
    if m.stats.max_codegree is None:
        return Verdict(HYPOTHESIS_FAILED, ["window has no bounded face"])
    cert = m.certificate
    if isinstance(cert, str):
        return Verdict(REFUSED, [cert])
    failed = [c for c in cert.per_cycle if not (c.isoperimetric_ok and c.counting_ok)]
    notes = [f"c' = {cert.c_prime}, counting bound {cert.bound} per cycle vertex"]
    if failed:
        worst = max(failed, key=lambda c: (c.length, c.faces))
        notes.append(f"{len(failed)} cycle(s) fail the chain; e.g. |C|={worst.length}, F={worst.faces}, "
                     f"|S|={worst.interior}, |dS|={worst.interior_boundary}")
    return Verdict(cert.verdict, notes, {"cycles": len(cert.per_cycle), "failed": len(failed)})


def _hyperbolic_proxy(m: Measurements) -> bool:
    cert = m.certificate
    return not isinstance(cert, str) and cert.verdict == CERTIFIED


def check_implication_2(m: Measurements) -> Verdict:
    """Hyperbolic and weakly non-amenable implies bounded codegree."""
    if not _hyperbolic_proxy(m):
        return Verdict(HYPOTHESIS_FAILED, ["hyperbolicity not certified on this window"])
    iso = m.iso
    if iso is None:
        return Verdict(HYPOTHESIS_FAILED, ["no isoperimetric profile (empty core)"])
    pmap, delta = m.pmap, m.window_delta.delta
    dmax = m.stats.max_degree
    rd = core_radius(pmap)
    failures, checked, out_of_domain, broken = [], 0, 0, 0
    for f, tr in m.hulls.items():
        if isinstance(tr, str):
            broken += 1
            continue
        cyc = tr.terminal
        if tr.certified and len(cyc) > 6 * delta:
            failures.append(f"face {f}: hull length {len(cyc)} > 6*{delta}")
        s = set(cycle_interior(pmap, cyc).all_vertices)
        if pmap.faces[f].length > len(s):
            failures.append(f"face {f}: length {pmap.faces[f].length} exceeds hull interior {len(s)}")
        b = len(vertex_boundary(pmap, s))
        if tr.certified and b > 6 * delta * dmax:
            failures.append(f"face {f}: hull boundary {b} > 6*delta*D(G)")
        if len(s) <= iso.profile.size_cap and all(rd[v] >= 2 for v in s):
            checked += 1
            if len(s) > iso.profile.bound(b):
                failures.append(f"face {f}: hull interior {len(s)} above profile f({b})")
        else:
            out_of_domain += 1
    counts = {"hulls": len(m.hulls), "profile_checked": checked,
              "profile_out_of_domain": out_of_domain, "hull_errors": broken}
    notes = [f"window delta {delta} ({m.window_delta.scope}, exact={m.window_delta.exact})"]
    if failures:
        return Verdict(REFUSED, notes + failures[:10], counts)
    if out_of_domain or broken or not m.window_delta.exact:
        return Verdict(ADVISORY, notes + ["some checks fall outside the measured profile or delta is a lower bound"], counts)
    return Verdict(CERTIFIED, notes, counts)


def check_implication_3(m: Measurements) -> Verdict:
    """Hyperbolic with bounded codegree implies non-amenable."""
    if not _hyperbolic_proxy(m):
        return Verdict(HYPOTHESIS_FAILED, ["hyperbolicity not certified on this window"])
    codeg = m.stats.max_codegree
    if codeg is None:
        return Verdict(HYPOTHESIS_FAILED, ["window has no bounded face"])
    pmap, cert = m.pmap, m.certificate
    k_hat = cert.k_hat_hulls
    floor = 1 / (k_hat * codeg * codeg)
    notes = [f"k_hat = {k_hat}, codegree = {codeg}, bound 1/(k D*^2) = {floor}"]
    outer = pmap.faces[pmap.outer_face]
    if set(outer.vertices) - pmap.rim:
        notes.append("no unbounded face precondition unverifiable: outer face meets non-rim vertices")
        advisory = True
    else:
        advisory = False
    failures, walks, total = [], 0, 0
    subsets = list(connected_subsets(pmap, m.caps.size_cap, budget=m.caps.enum_budget))
    walk_all = len(subsets) <= m.caps.walk_limit
    iso = m.iso
    witnesses = set()
    if iso is not None:
        witnesses.add(iso.cheeger.witness)
        witnesses.update(p.witness for p in iso.profile.points)
    for s in subsets:
        total += 1
        b = len(vertex_boundary(pmap, s))
        if Fraction(b, len(s)) < floor:
            failures.append(f"S={list(s)}: |dS|/|S| = {Fraction(b, len(s))} < {floor}")
        if walk_all or s in witnesses:
            try:
                res = boundary_walk(pmap, s)
            except CoarsePlaneError as exc:
                notes.append(f"boundary walk skipped for {list(s)}: {exc}")
                advisory = True
                continue
            walks += 1
            if not res.satisfies_bound():
                failures.append(f"S={list(s)}: boundary walk has {res.distinct_hits} hits on length {res.length}")
    counts = {"subsets": total, "boundary_walks": walks}
    if failures:
        return Verdict(REFUSED, notes + failures[:10], counts)
    return Verdict(ADVISORY if advisory else CERTIFIED, notes, counts)


def _hull_summary(m: Measurements) -> dict:
    traces = [t for t in m.hulls.values() if not isinstance(t, str)]
    return {
        "faces": len(m.hulls),
        "errors": len(m.hulls) - len(traces),
        "max_terminal_length": max((len(t.terminal) for t in traces), default=0),
        "max_steps": max((len(t.steps) for t in traces), default=0),
        "certified": sum(t.certified for t in traces),
        "certified_geodetic_faces": sum(1 for t in traces if certified_cycle(m.pmap, t.terminal)),
    }


def analyze(pmap: PlanarMap, caps: Caps = Caps()) -> dict:
    """Build the report-v1 dictionary (insertion order is the serialised order)."""
    m = Measurements(pmap, caps)
    st = m.stats
    iso = m.iso
    cert = m.certificate
    report = {
        "format": REPORT_FORMAT,
        "input": {"digest": pmap.digest(), "vertices": len(pmap.vertices),
                  "edges": pmap.num_edges, "faces": len(pmap.faces), "rim": len(pmap.rim)},
        "caps": asdict(caps),
        "degree_stats": {
            "max_degree": st.max_degree,
            "codegree": st.max_codegree,
            "degree_histogram": {str(k): v for k, v in st.degree_histogram.items()},
            "codegree_histogram": {str(k): v for k, v in st.codegree_histogram.items()},
        },
        "delta": {**m.delta.to_json(), "advisory": False},
        "window_delta": {**m.window_delta.to_json(), "advisory": True},
        "cheeger": None if iso is None else {
            **frac(iso.cheeger.ratio), "cap": caps.size_cap, "scope": "core",
            "witness": list(iso.cheeger.witness),
            "disconnected_bound": frac(iso.cheeger.disconnected_bound),
            "subsets": iso.cheeger.subsets,
        },
        "profile": None if iso is None else {
            "points": iso.profile.to_json(), "exhaustive": iso.profile.exhaustive,
        },
        "hulls": _hull_summary(m),
        "k_hat": None if isinstance(cert, str) else frac(cert.k_hat_hulls),
        "certificate": cert if isinstance(cert, str) else cert.to_json(),
        "implications": {
            "1": check_implication_1(m).to_json(),
            "2": check_implication_2(m).to_json(),
            "3": check_implication_3(m).to_json(),
        },
    }
    return report
