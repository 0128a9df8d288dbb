"""Command line entry point.

Input is one JSON document::

    {"vertices": n,
     "maximal_simplices": [[0, 1], ...],
     "lie_algebra": {"dim": m, "brackets": [[i, j, k, p, q], ...]},
     "cover": {"k0": [[...]], "k1": [[...]]},
     "options": {"n_start": 1, "window": 2, "ceiling": 6, "seed": 0}}

Bracket rows are 1-based and mean [e_i, e_j] = (p/q) e_k.  ``extend`` also
reads ``"form": {"subcomplex": [[...]], "degree": p, "parts": [...]}``.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .cohomology import NotStabilizedError, stabilized_betti
from .lie_algebra import InvalidLieAlgebra, LieAlgebra, validate
from .mayer_vietoris import MVSetup, verify_les_exactness
from .oracle import oracle_betti
from .piecewise import (AlgebroidComplex, extend_from_subcomplex, form_from_json, form_to_json,
                        global_differential, incompatible_pairs, restrict_to_subcomplex)
from .polyform import FormError, differential, wedge
from .sampling import random_compatible, random_polyform, random_subcomplex
from .simplicial import Simplex, SimplicialComplex, closure, is_subcomplex

log = logging.getLogger("algebroid_mv")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


@dataclass
class Options:
    n_start: int = 1
    window: int = 2
    ceiling: int = 6
    seed: int = 0


@dataclass
class ProblemInput:
    base: SimplicialComplex
    fiber: LieAlgebra
    cover: tuple[SimplicialComplex, SimplicialComplex] | None = None
    options: Options = field(default_factory=Options)
    raw: dict = field(default_factory=dict)


def _simplices(rows: Any, n: int, what: str) -> list[Simplex]:
    if not isinstance(rows, list):
        raise InputError(f"{what} must be a list of vertex lists")
    out = []
    for row in rows:
        if not isinstance(row, list) or not row or not all(isinstance(v, int) for v in row):
            raise InputError(f"{what}: bad simplex {row!r}")
        if any(v < 0 or v >= n for v in row):
            raise InputError(f"{what}: vertex index out of range in {row}")
        if len(set(row)) != len(row):
            raise InputError(f"{what}: repeated vertex in {row}")
        out.append(Simplex(sorted(row)))
    return out


def parse_input(data: Any) -> ProblemInput:
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    for key in ("vertices", "maximal_simplices", "lie_algebra"):
        if key not in data:
            raise InputError(f"missing field {key!r}")
    n = data["vertices"]
    if not isinstance(n, int) or n < 0:
        raise InputError("'vertices' must be a non-negative integer")
    tops = _simplices(data["maximal_simplices"], n, "maximal_simplices")
    # isolated vertices count as part of the complex
    base = closure(tops + [Simplex([v]) for v in range(n)])

    la = data["lie_algebra"]
    if not isinstance(la, dict) or not isinstance(la.get("dim"), int) or la["dim"] < 0:
        raise InputError("'lie_algebra' needs a non-negative integer 'dim'")
    m = la["dim"]
    structure: dict[tuple[int, int, int], Fraction] = {}
    for row in la.get("brackets", []):
        if not (isinstance(row, list) and len(row) == 5 and all(isinstance(x, int) for x in row)):
            raise InputError(f"bracket rows are [i, j, k, p, q] integers, got {row!r}")
        i, j, k, p, q = row
        if not all(1 <= x <= m for x in (i, j, k)):
            raise InputError(f"bracket index out of range in {row}")
        if q == 0:
            raise InputError(f"zero denominator in {row}")
        if i == j:
            raise InputError(f"[e_{i}, e_{i}] cannot be prescribed")
        key = (i - 1, j - 1, k - 1)
        structure[key] = structure.get(key, 0) + Fraction(p, q)
    fiber = LieAlgebra(m, structure)

    cov = None
    if "cover" in data and data["cover"] is not None:
        c = data["cover"]
        if not isinstance(c, dict) or "k0" not in c or "k1" not in c:
            raise InputError("'cover' needs 'k0' and 'k1'")
        k0 = closure(_simplices(c["k0"], n, "cover.k0"))
        k1 = closure(_simplices(c["k1"], n, "cover.k1"))
        for name, piece in (("k0", k0), ("k1", k1)):
            if not is_subcomplex(piece, base):
                raise InputError(f"cover.{name} is not a subcomplex of the complex")
        cov = (k0, k1)

    opts = Options()
    for key, value in (data.get("options") or {}).items():
        if not hasattr(opts, key):
            raise InputError(f"unknown option {key!r}")
        if not isinstance(value, int):
            raise InputError(f"option {key!r} must be an integer")
        setattr(opts, key, value)
    if opts.window < 2:
        raise InputError("options.window must be at least 2")
    return ProblemInput(base, fiber, cov, opts, data)


# -- commands -----------------------------------------------------------------

def cmd_validate(inp: ProblemInput) -> tuple[dict, int]:
    bad = inp.fiber.jacobi_violations()
    report = {"command": "validate", "simplices": len(inp.base), "dim": inp.base.dim,
              "jacobi": not bad, "jacobi_violations": [[i + 1, j + 1, k + 1] for i, j, k in bad]}
    return report, EXIT_OK if not bad else EXIT_FAILED


def cmd_betti(inp: ProblemInput) -> tuple[dict, int]:
    o = inp.options
    b, n = stabilized_betti(AlgebroidComplex(inp.base, inp.fiber), o.n_start, o.window, o.ceiling)
    return {"command": "betti", "betti": list(b), "truncation": n}, EXIT_OK


def cmd_oracle_betti(inp: ProblemInput) -> tuple[dict, int]:
    return {"command": "oracle-betti", "betti": list(oracle_betti(inp.base, inp.fiber))}, EXIT_OK


def cmd_mv(inp: ProblemInput) -> tuple[dict, int]:
    if inp.cover is None:
        raise InputError("'mv' needs a cover")
    k0, k1 = inp.cover
    if k0.union(k1) != inp.base:
        raise InputError("cover pieces do not cover the complex")
    o = inp.options
    setup = MVSetup.build(k0, k1, inp.fiber, o.n_start, o.window, o.ceiling)
    report = verify_les_exactness(setup)
    out = {"command": "mv", **report.to_json()}
    return out, EXIT_OK if report.all_exact else EXIT_FAILED


def cmd_extend(inp: ProblemInput) -> tuple[dict, int]:
    entry = inp.raw.get("form")
    if not isinstance(entry, dict) or "subcomplex" not in entry:
        raise InputError("'extend' needs a 'form' with 'subcomplex', 'degree' and 'parts'")
    n = inp.raw["vertices"]
    l = closure(_simplices(entry["subcomplex"], n, "form.subcomplex"))
    if not is_subcomplex(l, inp.base):
        raise InputError("form.subcomplex is not a subcomplex of the complex")
    try:
        w = form_from_json(entry, AlgebroidComplex(l, inp.fiber))
    except (FormError, KeyError, ValueError) as exc:
        raise InputError(f"bad form: {exc}") from exc
    bad = incompatible_pairs(w)
    if bad:
        s, f = bad[0]
        raise InputError(f"form is not compatible: part on {list(s)} does not restrict to {list(f)}")
    ext = extend_from_subcomplex(w, inp.base)
    ok = restrict_to_subcomplex(ext, l) == w and not incompatible_pairs(ext)
    return {"command": "extend", "form": form_to_json(ext), "weight": ext.weight,
            "round_trip": ok}, EXIT_OK if ok else EXIT_FAILED


def selfcheck(seed: int = 0, cases: int = 30) -> dict:
    """Randomized d^2, Leibniz and extension round-trip checks."""
    from .lie_algebra import STANDARD
    from .simplicial import full_simplex, sphere

    rng = random.Random(seed)
    fibers = [STANDARD[k]() for k in ("zero", "abelian2", "affine2", "so3")]
    failures: list[dict] = []
    counts = {"d_squared": 0, "leibniz": 0, "round_trip": 0}
    for case in range(cases):
        g = rng.choice(fibers)
        s = Simplex(range(rng.randint(0, 3) + 1))
        p = rng.randint(0, 2)
        a = random_polyform(rng, s, p, g.dim)
        if differential(differential(a, g), g):
            failures.append({"check": "d_squared", "case": case})
        counts["d_squared"] += 1
        b = random_polyform(rng, s, rng.randint(0, 2), g.dim)
        lhs = differential(wedge(a, b), g)
        rhs = wedge(differential(a, g), b) + wedge(a, differential(b, g)) * (-1) ** a.degree
        if lhs != rhs:
            failures.append({"check": "leibniz", "case": case})
        counts["leibniz"] += 1
        k = rng.choice([full_simplex(2), sphere(2), closure([[0, 1], [1, 2], [2, 3]])])
        l = random_subcomplex(rng, k)
        w = random_compatible(rng, AlgebroidComplex(l, g), rng.randint(0, 1), 2)
        ext = extend_from_subcomplex(w, k)
        if restrict_to_subcomplex(ext, l) != w or incompatible_pairs(ext):
            failures.append({"check": "round_trip", "case": case})
        counts["round_trip"] += 1
        if not global_differential(global_differential(ext)).is_zero():
            failures.append({"check": "d_squared_piecewise", "case": case})
    return {"seed": seed, "checked": counts, "failures": failures}


def cmd_selfcheck(inp: ProblemInput | None, seed: int | None) -> tuple[dict, int]:
    s = seed if seed is not None else (inp.options.seed if inp else 0)
    rep = selfcheck(s)
    return {"command": "selfcheck", **rep}, EXIT_OK if not rep["failures"] else EXIT_FAILED


COMMANDS = {
    "validate": cmd_validate,
    "betti": cmd_betti,
    "oracle-betti": cmd_oracle_betti,
    "mv": cmd_mv,
    "extend": cmd_extend,
}


def _load(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="algebroid-mv",
                                 description="Piecewise polynomial Lie algebroid cohomology and Mayer-Vietoris checks.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="JSON problem file, or - for stdin")
    p = sub.add_parser("selfcheck")
    p.add_argument("input", nargs="?", help="optional JSON file (only options.seed is used)")
    p.add_argument("--seed", type=int)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        if args.command == "selfcheck":
            inp = parse_input(_load(args.input)) if args.input else None
            report, code = cmd_selfcheck(inp, args.seed)
        else:
            inp = parse_input(_load(args.input))
            if args.command != "validate" and not validate(inp.fiber):
                raise InputError("the bracket does not satisfy the Jacobi identity")
            report, code = COMMANDS[args.command](inp)
    except (InputError, InvalidLieAlgebra) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        print(json.dumps({"error": "input", "message": str(exc)}, sort_keys=True))
        return EXIT_INPUT
    except NotStabilizedError as exc:
        print(f"not stabilized: {exc}", file=sys.stderr)
        print(json.dumps({"error": "not_stabilized", "message": str(exc),
                          "history": [[n, list(b)] for n, b in exc.history]}, sort_keys=True))
        return EXIT_FAILED
    print(json.dumps(report, sort_keys=True))
    if code != EXIT_OK:
        log.warning("verification failed")
    return code


if __name__ == "__main__":
    sys.exit(main())
