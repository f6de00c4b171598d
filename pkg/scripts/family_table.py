"""Size, degree, codegree and Cheeger lower bound for each generator family."""

import argparse

from coarseplane.errors import CoarsePlaneError
from coarseplane.generators import GeneratorSpec, generate
from coarseplane.isoperimetry import cheeger_lower
from coarseplane.planar import degree_stats

POINTS = [
    ("grid", {"n": 8}), ("grid", {"n": 12}),
    ("tessellation", {"p": 3, "q": 7, "r": 3}), ("tessellation", {"p": 4, "q": 5, "r": 3}),
    ("g1", {"ns": [2, 3, 4, 5, 6]}), ("g2", {"ns": [2, 3, 4, 5, 6]}),
    ("dyadic", {"levels": 3, "width": 3}), ("dyadic_square", {"a": 3}),
    ("composite", {"N": 4}),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int, default=6, help="subset size cap for the Cheeger search")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'family':14} {'params':28} {'V':>5} {'E':>5} {'maxdeg':>6} {'codeg':>5}  cheeger")
    for fam, prm in POINTS:
        m = generate(GeneratorSpec(fam, prm, args.seed))
        st = degree_stats(m)
        try:
            c = str(cheeger_lower(m, args.cap).ratio)
        except CoarsePlaneError as exc:
            c = type(exc).__name__
        print(f"{fam:14} {str(prm):28} {len(m.vertices):5d} {m.num_edges:5d} "
              f"{st.max_degree:6d} {str(st.max_codegree):>5}  {c}")


if __name__ == "__main__":
    main()
