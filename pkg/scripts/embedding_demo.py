"""Build norming pairs for sup and l1 norms and check the pulled-back tilings.

usage: python3 scripts/embedding_demo.py [--max-dim 6] [--samples 2000]
"""

import argparse
import time

from linftile.embedding import NormedSpace, NormingSet, build_pairs, check_pairs
from linftile.refinement import DEFAULT_SCHEDULE, verify_schedule
from linftile.verifier import SampleSpec, verify_pullback


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-dim", type=int, default=6)
    ap.add_argument("--samples", type=int, default=2000)
    args = ap.parse_args()
    print(f"{'space':<8}{'gamma':>6}{'eps margin':>12}{'a1 margin':>11}{'pullback':>10}{'secs':>7}")
    for kind in ("sup", "ell1"):
        for d in range(1, args.max_dim + 1):
            start = time.perf_counter()
            space = getattr(NormedSpace, kind)(d)
            norming = NormingSet.standard(space)
            model = build_pairs(space, norming)
            assert not check_pairs(model, norming)
            eps_m, a1_m = verify_schedule(DEFAULT_SCHEDULE, model, 6).margins()
            spec = SampleSpec.cube(d, 16, args.samples, seed=d, mode="adversarial")
            report = verify_pullback(model, DEFAULT_SCHEDULE, spec, norming=norming)
            print(
                f"{kind + str(d):<8}{model.gamma:>6}{str(eps_m):>12}{str(a1_m):>11}"
                f"{'pass' if report.ok else 'FAIL':>10}{time.perf_counter() - start:>7.2f}"
            )


if __name__ == "__main__":
    main()
