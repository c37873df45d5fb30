"""Fit depth(k) ~ A log2(2k) + B 2^k/(2k) + C for the diagonal block and report the fit quality.

    python3 scripts/depth_scaling.py [--fit 2,3,4] [--max-n 12]
"""

import argparse

import numpy as np

from lambda_qsp.circuit import depth
from lambda_qsp.diagonal import build_lambda


def basis(k):
    return [np.log2(2 * k), 2**k / (2 * k), 1.0]


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--fit", default="2,3,4", help="n values used for the least-squares fit")
    ap.add_argument("--max-n", type=int, default=12)
    args = ap.parse_args()
    fit = [int(x) for x in args.fit.split(",")]
    ns = range(2, args.max_n + 1)
    measured = {n: depth(build_lambda(n, np.zeros(1 << n))) for n in ns}
    coef, *_ = np.linalg.lstsq(np.array([basis(n) for n in fit]), [measured[n] for n in fit], rcond=None)
    print(f"A={coef[0]:.3f} B={coef[1]:.3f} C={coef[2]:.3f}")
    print("n  depth  model  ratio")
    for n in ns:
        model = float(np.dot(basis(n), coef))
        print(f"{n:<2} {measured[n]:>6} {model:>6.0f}  {measured[n] / model:.3f}")


if __name__ == "__main__":
    main()
