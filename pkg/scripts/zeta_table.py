"""Completed zeta values from the theta integrals next to closed forms.

    python3 scripts/zeta_table.py
"""

import math
import time

from membrane.zeta import NumberFieldSpec, completed_oracle, completed_zeta, multiple_completed_dedekind_2d

ROWS = [("Q", 2.0), ("Q", 3.0), ("Q", 4.0), ("Qi", 2.0), ("Qi", 3.0), ("Q:sqrt-3", 2.0), ("Q:sqrt5", 2.0), ("Q:sqrt2", 2.0), ("Q:sqrt13", 3.0)]


def main() -> None:
    print(f"{'field':>10} {'s':>4} {'value':>20} {'closed form':>20} {'diff':>9} {'ms':>7}")
    for name, s in ROWS:
        K = NumberFieldSpec.parse(name)
        t0 = time.perf_counter()
        if K.kind == "real_quadratic":
            v = multiple_completed_dedekind_2d(K, (s,)).value
        else:
            v = completed_zeta(K, s).value
        ms = 1e3 * (time.perf_counter() - t0)
        ref = completed_oracle(K, s)
        print(f"{name:>10} {s:4g} {v:20.15f} {ref:20.15f} {abs(v - ref):9.1e} {ms:7.1f}")
    print(f"\npi/3 = {math.pi / 3:.15f}")


if __name__ == "__main__":
    main()
