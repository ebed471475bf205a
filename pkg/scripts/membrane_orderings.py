"""Double membrane integrals for every pair of orderings, checked against unfolding.

The four (sigma1, sigma2) values must add up to the product of the single
integrals.

    python3 scripts/membrane_orderings.py [--field Q:sqrt5] [--s 3 2]
"""

import argparse
import itertools

from membrane.zeta import NumberFieldSpec, multiple_completed_dedekind_2d, unfolding_oracle


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--field", default="Q:sqrt5")
    ap.add_argument("--s", type=float, nargs=2, default=[3.0, 2.0])
    args = ap.parse_args()
    K = NumberFieldSpec.parse(args.field)
    s = tuple(args.s)
    total = 0.0
    for s1, s2 in itertools.product(((1, 2), (2, 1)), repeat=2):
        r = multiple_completed_dedekind_2d(K, s, s1, s2)
        ref = unfolding_oracle(K, s, s1, s2)
        total += r.value
        print(f"sigma1={s1} sigma2={s2}: {r.value:.12e}  unfolding {ref:.12e}  diff {abs(r.value - ref):.1e}")
    prod = multiple_completed_dedekind_2d(K, s[:1]).value * multiple_completed_dedekind_2d(K, s[1:]).value
    print(f"sum over orderings {total:.12e}  product of singles {prod:.12e}  diff {abs(total - prod):.1e}")


if __name__ == "__main__":
    main()
