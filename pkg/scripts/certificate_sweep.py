"""Certificate verdicts, c' and k_hat across windows and size caps."""

import argparse

from coarseplane.errors import CoarsePlaneError
from coarseplane.generators import gen_bowditch_g1, default_schedule, gen_composite, gen_grid, gen_tessellation
from coarseplane.lii import hyperbolicity_certificate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--caps", default="6,8", help="comma-separated subset size caps")
    args = ap.parse_args()
    t45 = gen_tessellation(4, 5, 3)
    maps = [("grid10", gen_grid(10)), ("grid12", gen_grid(12)), ("{3,7} r3", gen_tessellation(3, 7, 3)),
            ("{4,5} r3", t45), ("g1", gen_bowditch_g1(t45, default_schedule(t45, [2, 3, 4, 5, 6]))),
            ("composite4", gen_composite(4))]
    for cap in (int(c) for c in args.caps.split(",")):
        for name, m in maps:
            try:
                cert = hyperbolicity_certificate(m, cap)
                bad = sum(not (c.isoperimetric_ok and c.counting_ok) for c in cert.per_cycle)
                print(f"cap={cap} {name:10} {cert.verdict:9} c'={cert.c_prime} k_hat={cert.k_hat} "
                      f"k_hat_hulls={cert.k_hat_hulls} cycles={len(cert.per_cycle)} failing={bad}")
            except CoarsePlaneError as exc:
                print(f"cap={cap} {name:10} error {type(exc).__name__}: {exc}")


if __name__ == "__main__":
    main()
