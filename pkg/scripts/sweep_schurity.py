#!/usr/bin/env python3
"""Schurity sweep over a range of moduli, printing one summary per n."""

import argparse
import json

from circulant import schurity_sweep
from circulant.scheme import _aut_group_cached
from circulant.zn import big_omega


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max", type=int, default=40, help="largest modulus")
    parser.add_argument("--min", type=int, default=2, help="smallest modulus")
    parser.add_argument("--omega", type=int, default=None,
                        help="restrict to moduli with this many prime factors at most")
    args = parser.parse_args()

    for n in range(args.min, args.max + 1):
        if args.omega is not None and big_omega(n) > args.omega:
            continue
        report = schurity_sweep([n])[0]
        print(json.dumps({
            "n": report.n,
            "omega": big_omega(n),
            "total": report.total,
            "schurian": report.schurian,
            "nonschurian": report.total - report.schurian,
        }, sort_keys=True))
        for line in report.structural_checks:
            print("   ", line)
        _aut_group_cached.cache_clear()


if __name__ == "__main__":
    main()
