"""How much weight the facet sweep adds when extending from a boundary.

For random compatible forms of weight <= n on the boundary of a k-simplex, record
the weight of the extension and the number of terms in the top part.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass
from statistics import mean

from algebroid_mv.lie_algebra import STANDARD
from algebroid_mv.piecewise import AlgebroidComplex, extend_over_boundary
from algebroid_mv.sampling import random_compatible
from algebroid_mv.simplicial import Simplex, boundary_complex


@dataclass
class Config:
    max_dim: int = 3
    max_weight: int = 3
    samples: int = 5
    fiber: str = "abelian1"
    seed: int = 0


def run(cfg: Config) -> list[tuple]:
    rng = random.Random(cfg.seed)
    g = STANDARD[cfg.fiber]()
    rows = []
    for k in range(1, cfg.max_dim + 1):
        d = Simplex(range(k + 1))
        a = AlgebroidComplex(boundary_complex(d), g)
        for n in range(cfg.max_weight + 1):
            for degree in range(min(k, 2) + 1):
                out_w, sizes = [], []
                for _ in range(cfg.samples):
                    xi = random_compatible(rng, a, degree, n)
                    if xi.is_zero():
                        continue
                    ext = extend_over_boundary(xi, d)
                    out_w.append(ext.weight)
                    sizes.append(len(ext.parts[d].terms))
                if out_w:
                    rows.append((k, n, degree, max(out_w), mean(sizes)))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args()))
    print(f"{'k':>2} {'n':>2} {'deg':>3}  {'max ext weight':>14}  {'mean top terms':>14}")
    for k, n, degree, w, size in run(cfg):
        print(f"{k:>2} {n:>2} {degree:>3}  {w:>14}  {size:>14.1f}")


if __name__ == "__main__":
    main()
