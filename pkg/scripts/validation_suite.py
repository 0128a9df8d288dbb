"""Betti numbers from the form engine against the simplicial/CE oracle.

Writes one row per (base, fiber) pair and a JSON dump if --out is given.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from algebroid_mv.cohomology import stabilized_betti
from algebroid_mv.lie_algebra import STANDARD
from algebroid_mv.oracle import oracle_betti
from algebroid_mv.piecewise import AlgebroidComplex
from algebroid_mv.simplicial import boundary_complex, closure, full_simplex, point, sphere, Simplex


def bases() -> dict:
    return {
        "point": point(),
        "interval": full_simplex(1),
        "triangle": full_simplex(2),
        "S1": sphere(1),
        "S2": sphere(2),
        "wedge S1vS1": closure([[0, 1], [1, 2], [0, 2], [0, 3], [3, 4], [0, 4]]),
        "two points": closure([[0], [1]]),
        "hollow tetra + edge": boundary_complex(Simplex(range(4))).union(closure([[3, 4]])),
    }


@dataclass
class Config:
    fibers: list[str] = field(default_factory=lambda: ["zero", "abelian1", "abelian2", "affine2", "so3"])
    window: int = 2
    ceiling: int = 6
    out: str | None = None


def run(cfg: Config) -> list[dict]:
    rows = []
    for bname, k in bases().items():
        for gname in cfg.fibers:
            g = STANDARD[gname]()
            t0 = time.perf_counter()
            engine, n = stabilized_betti(AlgebroidComplex(k, g), window=cfg.window, ceiling=cfg.ceiling)
            t1 = time.perf_counter()
            ref = oracle_betti(k, g)
            t2 = time.perf_counter()
            rows.append({"base": bname, "fiber": gname, "N": n, "engine": list(engine),
                         "oracle": list(ref), "match": tuple(engine) == tuple(ref),
                         "engine_s": round(t1 - t0, 3), "oracle_s": round(t2 - t1, 3)})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fibers", nargs="*", default=Config().fibers, choices=sorted(STANDARD))
    ap.add_argument("--window", type=int, default=2)
    ap.add_argument("--ceiling", type=int, default=6)
    ap.add_argument("--out")
    cfg = Config(**vars(ap.parse_args()))
    rows = run(cfg)
    print(f"{'base':22} {'fiber':9} {'N':>2}  {'engine':22} {'oracle':22} ok    t_eng")
    for r in rows:
        print(f"{r['base']:22} {r['fiber']:9} {r['N']:>2}  {str(r['engine']):22} "
              f"{str(r['oracle']):22} {'yes' if r['match'] else 'NO ':5} {r['engine_s']:.2f}s")
    bad = [r for r in rows if not r["match"]]
    print(f"\n{len(rows) - len(bad)}/{len(rows)} agree")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
