"""Hull lengths against the window thin-triangle constant on the standard windows."""

import argparse
from collections import Counter

from coarseplane.generators import core_faces, default_schedule, gen_bowditch_g1, gen_bowditch_g2, gen_tessellation
from coarseplane.hull import geodetic_hull
from coarseplane.metric import thin_triangle_delta


def windows(r):
    t45 = gen_tessellation(4, 5, r)
    sched = default_schedule(t45, [2, 3, 4], seed=0)
    return [("{3,7}", gen_tessellation(3, 7, r)), ("{4,5}", t45),
            ("g1", gen_bowditch_g1(t45, sched)), ("g2", gen_bowditch_g2(t45, sched))]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=int, default=3)
    ap.add_argument("--no-delta", action="store_true", help="skip the window delta (slow on large windows)")
    args = ap.parse_args()
    for name, m in windows(args.r):
        traces = [geodetic_hull(m, f) for f in core_faces(m)]
        lengths = Counter(len(t.terminal) for t in traces)
        steps = max((len(t.steps) for t in traces), default=0)
        cert = sum(t.certified for t in traces)
        delta = "-" if args.no_delta else thin_triangle_delta(m, "all").delta
        print(f"{name:6} faces={len(traces):4d} certified={cert:4d} max_steps={steps} "
              f"terminal lengths={dict(sorted(lengths.items()))} delta={delta}")


if __name__ == "__main__":
    main()
