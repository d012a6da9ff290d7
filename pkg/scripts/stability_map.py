"""ASCII map of the trapping region in the (b, v) plane."""
import argparse

import numpy as np

from penning_cs.trap import TrapParams, validate

SYMBOLS = {None: "#", "b_nonpositive": "b", "v_nonnegative": ".", "radial": "r", "non_finite": "?"}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--b-max", type=float, default=2.0)
    parser.add_argument("--v-min", type=float, default=-3.0)
    parser.add_argument("--v-max", type=float, default=0.5)
    parser.add_argument("--cols", type=int, default=60)
    parser.add_argument("--rows", type=int, default=28)
    args = parser.parse_args()

    bs = np.linspace(0, args.b_max, args.cols)
    vs = np.linspace(args.v_max, args.v_min, args.rows)
    for v in vs:
        line = "".join(SYMBOLS[validate(TrapParams(b, v)).reason] for b in bs)
        print(f"{v:7.3f} |{line}")
    print(" " * 8 + f"+{'-' * args.cols}")
    print(" " * 9 + f"b = 0 .. {args.b_max:g}")
    print("# stable   r radial escape (b^2 + v <= 0)   . axial escape (v >= 0)   b b <= 0")


if __name__ == "__main__":
    main()
