import json

import pytest

from algebroid_mv.cli import main

CIRCLE = {"vertices": 3, "maximal_simplices": [[0, 1], [1, 2], [0, 2]]}
SO3 = {"dim": 3, "brackets": [[1, 2, 3, 1, 1], [2, 3, 1, 1, 1], [3, 1, 2, 1, 1]]}
ZERO = {"dim": 0, "brackets": []}


def run(tmp_path, capsys, command, data, *extra):
    path = tmp_path / "in.json"
    path.write_text(json.dumps(data))
    code = main([command, str(path), *extra])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_validate(tmp_path, capsys):
    code, out = run(tmp_path, capsys, "validate", {**CIRCLE, "lie_algebra": SO3})
    assert code == 0 and out["jacobi"]
    bad = {"dim": 3, "brackets": [[1, 2, 3, 1, 1], [1, 3, 1, 1, 1]]}
    code, out = run(tmp_path, capsys, "validate", {**CIRCLE, "lie_algebra": bad})
    assert code == 1 and out["jacobi_violations"] == [[1, 2, 3]]


def test_betti_and_oracle(tmp_path, capsys):
    tri = {"vertices": 3, "maximal_simplices": [[0, 1, 2]], "lie_algebra": ZERO}
    code, out = run(tmp_path, capsys, "betti", tri)
    assert code == 0 and out["betti"] == [1, 0, 0]
    code, out = run(tmp_path, capsys, "oracle-betti", {**CIRCLE, "lie_algebra": SO3})
    assert code == 0 and out["betti"] == [1, 1, 0, 1, 1]


def test_mv(tmp_path, capsys):
    data = {**CIRCLE, "lie_algebra": ZERO, "cover": {"k0": [[0, 1], [1, 2]], "k1": [[0, 2]]}}
    code, out = run(tmp_path, capsys, "mv", data)
    assert code == 0 and out["all_exact"]
    assert out["dims"][0] == {"K": 1, "K0+K1": 2, "L": 2, "p": 0}


def test_extend(tmp_path, capsys):
    data = {"vertices": 3, "maximal_simplices": [[0, 1, 2]], "lie_algebra": ZERO,
            "form": {"subcomplex": [[0, 1]], "degree": 0,
                     "parts": [{"simplex": [0, 1], "form": "1 + 2*t1"}, {"simplex": [0], "form": "1"},
                               {"simplex": [1], "form": "3"}]}}
    code, out = run(tmp_path, capsys, "extend", data)
    assert code == 0 and out["round_trip"]
    assert {tuple(p["simplex"]) for p in out["form"]["parts"]} >= {(0, 1, 2)}


def test_extend_rejects_incompatible_form(tmp_path, capsys):
    data = {"vertices": 2, "maximal_simplices": [[0, 1]], "lie_algebra": ZERO,
            "form": {"subcomplex": [[0, 1]], "degree": 0,
                     "parts": [{"simplex": [0, 1], "form": "1"}, {"simplex": [0], "form": "2"}]}}
    code, out = run(tmp_path, capsys, "extend", data)
    assert code == 2 and "compatible" in out["message"]


def test_selfcheck(capsys):
    assert main(["selfcheck", "--seed", "3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["failures"] == [] and out["seed"] == 3


@pytest.mark.parametrize("data,needle", [
    ({"maximal_simplices": [], "lie_algebra": ZERO}, "vertices"),
    ({**CIRCLE, "maximal_simplices": [[0, 7]], "lie_algebra": ZERO}, "out of range"),
    ({**CIRCLE, "lie_algebra": {"dim": 2, "brackets": [[1, 2, 3, 1, 1]]}}, "out of range"),
    ({**CIRCLE, "lie_algebra": {"dim": 2, "brackets": [[1, 2, 2, 1, 0]]}}, "denominator"),
    ({**CIRCLE, "lie_algebra": ZERO, "options": {"window": 1}}, "window"),
    ({**CIRCLE, "lie_algebra": ZERO, "cover": {"k0": [[0, 1]]}}, "k1"),
])
def test_input_errors_exit_2(tmp_path, capsys, data, needle):
    code, out = run(tmp_path, capsys, "betti", data)
    assert code == 2 and needle in out["message"]


def test_invalid_json_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["betti", str(path)]) == 2


def test_mv_without_cover_exits_2(tmp_path, capsys):
    code, _ = run(tmp_path, capsys, "mv", {**CIRCLE, "lie_algebra": ZERO})
    assert code == 2


def test_output_is_deterministic(tmp_path, capsys):
    data = {**CIRCLE, "lie_algebra": SO3, "cover": {"k0": [[0, 1], [1, 2]], "k1": [[0, 2]]}}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(data))
    main(["mv", str(path)])
    first = capsys.readouterr().out
    main(["mv", str(path)])
    assert capsys.readouterr().out == first
