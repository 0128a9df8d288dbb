"""Mayer-Vietoris sequences for a few covers, with per-node exactness verdicts."""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from algebroid_mv.lie_algebra import STANDARD
from algebroid_mv.mayer_vietoris import MVSetup, verify_les_exactness
from algebroid_mv.simplicial import closure, sphere

COVERS = {
    "circle/two arcs": ([[0, 1], [1, 2]], [[0, 2]]),
    "S2/two hemispheres": ([[0, 1, 2], [0, 1, 3]], [[0, 2, 3], [1, 2, 3]]),
    "two tetrahedra on a face": ([[0, 1, 2, 3]], [[1, 2, 3, 4]]),
    "annulus pieces": ([[0, 1, 3], [1, 3, 4]], [[1, 2, 4], [2, 0, 5], [2, 4, 5], [0, 3, 5]]),
    "disjoint edges": ([[0, 1]], [[2, 3]]),
}


@dataclass
class Config:
    fiber: str = "so3"
    json: bool = False


def show(name: str, report) -> None:
    print(f"== {name}: N = {report.truncations}, exact = {report.all_exact}")
    print(f"   {'p':>2}  {'K':>3} {'K0+K1':>5} {'L':>3}   rank lambda  rank mu  rank delta")
    for row in report.dims:
        p = row["p"]
        print(f"   {p:>2}  {row['K']:>3} {row['K0+K1']:>5} {row['L']:>3}   "
              f"{report.rank('lambda', p):>11}  {report.rank('mu', p):>7}  {report.rank('delta', p):>10}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fiber", default="so3", choices=sorted(STANDARD))
    ap.add_argument("--json", action="store_true", help="dump full reports instead of tables")
    cfg = Config(**vars(ap.parse_args()))
    g = STANDARD[cfg.fiber]()
    ok = True
    for name, (a, b) in COVERS.items():
        report = verify_les_exactness(MVSetup.build(closure(a), closure(b), g))
        ok &= report.all_exact
        if cfg.json:
            print(json.dumps({"cover": name, **report.to_json()}, sort_keys=True))
        else:
            show(name, report)
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
