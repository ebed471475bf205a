"""Sweep the bump size and compare the homotopy deviation with eps / 360.

    python3 scripts/homotopy_sweep.py [--eps 0.4 0.2 0.1 0.05 0.025]
"""

import argparse

from membrane.quad.checks import composition_identity_check, homotopy_suite
from membrane.scenarios import TARGET_FORMS, CocycleScenario, HomotopyScenario


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eps", type=float, nargs="+", default=[0.4, 0.2, 0.1, 0.05, 0.025])
    args = ap.parse_args()
    print(f"{'eps':>8} {'homotopy dev':>14} {'dev*360/eps':>12} {'cocycle dev':>14} {'dev*1440/eps':>13}")
    for eps in args.eps:
        h = HomotopyScenario(eps=eps)
        rep = homotopy_suite(*h.membranes(), TARGET_FORMS, h.n, h.quadrature, h.tolerance)
        c = CocycleScenario(eps=eps)
        cr = composition_identity_check(*c.pieces(), TARGET_FORMS, c.degree, c.quadrature, c.tolerance)
        dh, dc = float(rep.max_deviation), float(cr.max_deviation)
        print(f"{eps:8.3f} {dh:14.6e} {dh * 360 / eps:12.6f} {dc:14.6e} {dc * 1440 / eps:13.6f}")


if __name__ == "__main__":
    main()
