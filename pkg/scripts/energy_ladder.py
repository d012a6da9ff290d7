"""Low-lying part of the intrinsic spectrum E(n1, n2, n3) around the extremal state.

The magnetron quanta lower the energy, so levels accumulate on both sides of
E_000 and there is neither a lowest nor a highest state.
"""
import argparse

import numpy as np

from penning_cs.ladder import energy
from penning_cs.trap import TrapParams, frequencies


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--b", type=float, default=1.0)
    parser.add_argument("--v", type=float, default=-0.5)
    parser.add_argument("--nmax", type=int, default=3)
    parser.add_argument("--window", type=float, default=2.0, help="half-width around E_000")
    args = parser.parse_args()

    w = frequencies(TrapParams(args.b, args.v))
    n = np.indices((args.nmax + 1,) * 3).reshape(3, -1).T
    e = energy(n[:, 0], n[:, 1], n[:, 2], w)
    e0 = w.ground_energy
    keep = np.abs(e - e0) <= args.window
    order = np.argsort(e[keep], kind="stable")

    print(f"omega = ({w.omega1:.6f}, {w.omega2:.6f}, {w.omega3:.6f}), E_000 = {e0:.6f}")
    print(f"{'n1':>3} {'n2':>3} {'n3':>3} {'E':>12} {'E - E_000':>12}")
    for (n1, n2, n3), ek in zip(n[keep][order], e[keep][order]):
        print(f"{n1:3d} {n2:3d} {n3:3d} {ek:12.6f} {ek - e0:12.6f}")
    below = np.count_nonzero(e < e0)
    print(f"{below} of {len(e)} levels with n_j <= {args.nmax} lie below E_000")


if __name__ == "__main__":
    main()
