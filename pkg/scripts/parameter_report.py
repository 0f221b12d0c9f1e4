"""Print the FRI / STIR / Flowering comparison at one or more instance sizes.

    python3 scripts/parameter_report.py --log-n 19 --log-k 18
"""

from __future__ import annotations

import argparse

from flowering.analysis import comparison_report


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--log-n", type=int, nargs="+", default=[19])
    ap.add_argument("--log-k", type=int, default=None, help="defaults to log-n minus 1")
    ap.add_argument("--security", type=int, default=128)
    ap.add_argument("--kappa", type=float, default=128.0)
    args = ap.parse_args()
    for log_n in args.log_n:
        log_k = args.log_k if args.log_k is not None else log_n - 1
        print(comparison_report(2**log_n, 2**log_k, args.security, args.kappa).text())
        print()


if __name__ == "__main__":
    main()
