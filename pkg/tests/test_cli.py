import io
import json
import subprocess
import sys

import pytest

from abhy.cli import (
    EXIT_CAP,
    EXIT_FAILED,
    EXIT_INVALID,
    EXIT_OK,
    dumps,
    main,
    matrix_document,
    parse_matrix_document,
    parse_polytope_document,
    polytope_document,
)

from conftest import B2

B2_DOC = json.dumps(matrix_document(B2))
B2_UNIV_ROWS = [[0, -1], [2, 0], [1, 0], [0, 1], [-1, 1], [-2, 1], [-1, 0], [0, -1]]
B2_MU21_ROWS = [[0, -1], [2, 0], [-1, 0], [0, -1], [1, 0], [0, 1], [-1, 1], [-2, 1]]


def run(argv, text=B2_DOC):
    out = io.StringIO()
    code = main(argv, stdin=io.StringIO(text), stdout=out)
    return code, out.getvalue()


def test_univ_document():
    code, out = run(["univ"])
    assert code == EXIT_OK
    assert json.loads(out) == {"n": 2, "m": 6, "rows": B2_UNIV_ROWS}


def test_mutate_universal_matrix():
    _, univ = run(["univ"])
    code, out = run(["mutate", "--word", "1,2"], univ)
    assert code == EXIT_OK
    assert json.loads(out)["rows"] == B2_MU21_ROWS


def test_verify_theorem_b2():
    code, out = run(["verify", "theorem", "--chat", "0,0,1,1,1,1"])
    assert code == EXIT_OK
    assert json.loads(out)["cases"][0]["report"].startswith("vertices match: 6")


def test_verify_theorem_random_levels_are_reproducible():
    first = run(["verify", "theorem", "--random", "3", "--rng-seed", "5"])
    assert first[0] == EXIT_OK
    assert first == run(["verify", "theorem", "--random", "3", "--rng-seed", "5"])


@pytest.mark.parametrize("target", [["univ", "--word", "1"], ["kernel"], ["fan", "--c", "1,2,1,3"]])
def test_verify_targets(target):
    code, out = run(["verify"] + target)
    assert code == EXIT_OK and json.loads(out)["ok"] is True


def test_slice_document():
    code, out = run(["slice", "--chat", "0,0,1,1,1,1"])
    doc = json.loads(out)
    assert code == EXIT_OK
    assert [e["text"] for e in doc["equations"]] == ["w1-w2+w3=c3", "w2-2w3+w4=c4", "w3-w4+w5=c5", "w4-2w5+w6=c6"]
    assert [e["text"] for e in doc["momentEquations"]][:2] == ["u1+w2=c1", "u2-2w1=c2"]


def test_polytope_round_trip_and_off():
    code, out = run(["polytope", "--c", "1,2,1,3"])
    assert code == EXIT_OK
    doc = json.loads(out)
    poly, labels = parse_polytope_document(doc)
    assert dumps(polytope_document(poly, labels)) == out
    assert sorted(labels) == [1, 2, 3, 4, 5, 6]
    code, off = run(["polytope", "--which", "A", "--format", "off", "--precision", "2"])
    assert code == EXIT_OK
    assert off.splitlines()[:2] == ["OFF", "6 0 0"]


@pytest.mark.parametrize("cmd", ["explore", "gvectors", "fpolys", "kernel", "newton", "mutate"])
def test_documents_round_trip(cmd):
    code, out = run([cmd])
    assert code == EXIT_OK
    assert dumps(json.loads(out)) == out


def test_matrix_document_round_trip():
    doc = matrix_document(B2)
    assert parse_matrix_document(json.loads(dumps(doc))) == B2


def test_gvectors_and_seed_mutations():
    code, out = run(["gvectors"])
    assert code == EXIT_OK
    assert json.loads(out)["gvectors"] == [[1, 0], [0, 1], [-1, 0], [0, -1], [1, -2], [1, -1]]
    code, moved = run(["univ", "--seed-mutations", "1"])
    assert code == EXIT_OK
    assert json.loads(moved)["rows"][:2] == [[0, 1], [-2, 0]]


@pytest.mark.parametrize(
    "text, field",
    [
        ("{", "malformed JSON"),
        ("[]", "JSON object"),
        ('{"rows": [[0]]}', "'n'"),
        ('{"n": 2, "m": 0, "rows": [[0, 1]]}', "'rows'"),
        ('{"n": 2, "m": 0, "rows": [[0, 1], [1]]}', "'rows[1]'"),
        ('{"n": 2, "m": 0, "rows": [[0, 1], [1, 0]]}', "skew-symmetrizable"),
        ('{"n": 1, "m": 0, "rows": [["a"]]}', "'rows[0]'"),
        ('{"n": 0, "rows": []}', "'n'"),
    ],
)
def test_malformed_input_exits_2_and_names_the_field(text, field, capsys):
    code, _ = run(["univ"], text)
    assert code == EXIT_INVALID
    assert field in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["mutate", "--word", "3"],
        ["mutate", "--word", "x"],
        ["slice", "--c", "1,1"],
        ["slice", "--c", "1,0,1,1"],
        ["slice", "--chat", "0,0,1"],
        ["verify", "theorem", "--chat", "0,0,1,1,1,0"],
        ["verify", "fan", "--c=-1,1,1,1"],
        ["polytope", "--c", "a"],
        ["nosuch"],
        ["univ", "/nonexistent/file.cluster.json"],
    ],
)
def test_invalid_arguments_exit_2(argv):
    assert run(argv)[0] == EXIT_INVALID


def test_cap_exceeded_exits_3():
    assert run(["explore", "--cap", "3"])[0] == EXIT_CAP
    affine = json.dumps({"n": 2, "m": 0, "rows": [[0, 2], [-2, 0]]})
    assert run(["explore"], affine)[0] == EXIT_CAP


def test_failed_verification_exits_1(monkeypatch):
    import abhy.cli as cli

    monkeypatch.setattr(cli, "kernel_span_matches", lambda kb, u: False)
    assert run(["verify", "kernel"])[0] == EXIT_FAILED


def test_verify_is_pure():
    assert run(["verify", "theorem"]) == run(["verify", "theorem"])


def test_module_entry_point_reads_files(tmp_path):
    path = tmp_path / "b2.cluster.json"
    path.write_text(B2_DOC)
    res = subprocess.run([sys.executable, "-m", "abhy", "univ", str(path)], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["rows"] == B2_UNIV_ROWS


def test_polytope_document_rejects_unsorted():
    from abhy.cli import InvalidInput

    with pytest.raises(InvalidInput):
        parse_polytope_document({"ambientDim": 1, "vertices": [["1/1"], ["0/1"]]})
    with pytest.raises(InvalidInput):
        parse_polytope_document({"ambientDim": 1, "vertices": [["1/0"]]})
