import json
import subprocess
import sys

import numpy as np
import pytest

from maxnumrange import cli
from maxnumrange.errors import MaxAlgebraError, NegativeEntryError


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def call(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def block(tmp_path):
    return write(tmp_path, "block.json",
                 '{"matrix": [[5,0,0,0],[0,8,0,0],[0,0,10,0],[0,0,0,12]]}')


@pytest.fixture
def pair(tmp_path):
    return write(tmp_path, "pair.txt", "2 0 0\n0 4 0\n0 0 5\n\n7 0 0\n0 3 0\n0 0 5\n")


class TestParse:
    def test_json_matrix(self, tmp_path):
        p = write(tmp_path, "a.json", '{"matrix": [[20, 9], [7, 1]], "c": [2, 8]}')
        data = cli.parse_input(p)
        assert data.matrix.tolist() == [[20, 9], [7, 1]]
        assert data.c.tolist() == [2, 8]

    def test_json_tuple(self, tmp_path):
        p = write(tmp_path, "t.json", '{"matrices": [[[1]], [[2]]], "C": [[1]]}')
        data = cli.parse_input(p)
        assert data.matrices.shape == (2, 1, 1)
        with pytest.raises(MaxAlgebraError):
            data.matrix

    def test_text_tuple(self, pair):
        data = cli.parse_input(pair)
        assert data.matrices.shape == (2, 3, 3)

    def test_text_comments(self, tmp_path):
        p = write(tmp_path, "a.txt", "# header\n1 2  # first\n3 4\n\n\n")
        assert cli.parse_input(p).matrix.tolist() == [[1, 2], [3, 4]]

    def test_negative_names_entry_and_position(self, tmp_path):
        p = write(tmp_path, "n.txt", "1 2\n3 -1\n")
        with pytest.raises(NegativeEntryError) as exc:
            cli.parse_input(p)
        assert exc.value.index == (1, 1)
        assert "line 2, column 3" in str(exc.value)

    @pytest.mark.parametrize("text, fragment", [
        ("1 2\n3\n", "line 2"),
        ("1 x\n3 4\n", "line 1, column 3"),
        ('{"matrix": [[1, 2], [3, 4]]', "line 1"),
        ('{"matrix": [[1, 2], [3]]}', "ragged"),
        ('{"matrix": [[1, true], [3, 4]]}', "not a number"),
        ('{"matrix": [[1]], "extra": 1}', "unknown field"),
        ('{"matrix": [[NaN]]}', "finite"),
        ("1 2\n3 4\n\n1 2 3\n4 5 6\n", "differ in shape"),
        ("", "no numbers"),
    ])
    def test_rejections(self, tmp_path, text, fragment):
        p = write(tmp_path, "bad", text)
        with pytest.raises(MaxAlgebraError) as exc:
            cli.parse_input(p)
        assert fragment in str(exc.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(MaxAlgebraError):
            cli.parse_input(str(tmp_path / "nope"))


class TestCommands:
    def test_lambda_k(self, capsys, block):
        code, out, _ = call(capsys, "lambda-k", block, "--k", "2")
        assert code == 0
        assert json.loads(out) == {"kind": "interval_set", "intervals": [
            {"lo": 8.0, "lo_closed": True, "hi": 10.0, "hi_closed": True}]}

    def test_joint_exact(self, capsys, pair):
        code, out, _ = call(capsys, "joint-exact", pair)
        assert json.loads(out)["points"] == [[5.0, 7.0]]

    def test_c_range(self, capsys, tmp_path):
        p = write(tmp_path, "a.json", '{"matrix": [[5,2],[7,4]]}')
        code, out, _ = call(capsys, "c-range", p, "--c", "2,8")
        assert json.loads(out)["points"] == [[32.0], [40.0]]

    def test_joint_c_and_C_from_file(self, capsys, tmp_path):
        p = write(tmp_path, "t.json", '{"matrices": [[[5,2],[7,4]], [[3,4],[2,8]]], "c": [2,8]}')
        code, out, _ = call(capsys, "joint-c", p)
        assert json.loads(out)["points"] == [[32.0, 64.0], [40.0, 24.0]]
        cf = write(tmp_path, "C.txt", "2 0\n0 8\n")
        code, out, _ = call(capsys, "joint-C", p, "--C-file", cf)
        assert json.loads(out)["points"] == [[32.0, 64.0], [40.0, 24.0]]

    def test_scalar_commands(self, capsys, block, tmp_path):
        assert json.loads(call(capsys, "radius", block, "--k", "2")[1])["value"] == 10.0
        doc = json.loads(call(capsys, "radius", block, "--k", "4")[1])
        assert doc == {"kind": "scalar", "value": None, "empty": True}
        assert json.loads(call(capsys, "eig", block)[1])["value"] == 12.0

    def test_wmax_and_hull(self, capsys, block):
        doc = json.loads(call(capsys, "wmax-k", block, "--k", "2")[1])
        assert doc["intervals"][0]["lo"] == 8.0 and doc["intervals"][0]["hi"] == 12.0
        doc = json.loads(call(capsys, "hull", block, "--k", "1")[1])
        assert doc["intervals"][0]["lo"] == 5.0
        doc = json.loads(call(capsys, "hull", block, "--c", "1,0,0,0")[1])
        assert [doc["intervals"][0][x] for x in ("lo", "hi")] == [5.0, 12.0]

    def test_box(self, capsys, pair):
        doc = json.loads(call(capsys, "joint-box", pair, "--k", "2")[1])
        assert doc["kind"] == "box" and doc["label"] == "outer bound"
        assert [(iv["lo"], iv["hi"]) for iv in doc["intervals"]] == [(4.0, 5.0), (5.0, 7.0)]

    def test_cloud(self, capsys, pair, tmp_path):
        out_path = str(tmp_path / "cloud.csv")
        code, out, _ = call(capsys, "joint-cloud", pair, "--k", "2", "--samples", "30",
                            "--seed", "4", "--out", out_path)
        doc = json.loads(out)
        assert code == 0 and doc["kind"] == "cloud_csv_path" and doc["count"] == 30
        first = open(out_path).read()
        call(capsys, "joint-cloud", pair, "--k", "2", "--samples", "30", "--seed", "4",
             "--out", out_path)
        assert open(out_path).read() == first
        code, out, _ = call(capsys, "joint-cloud", pair, "--k", "2", "--samples", "30",
                            "--seed", "4", "--format", "csv")
        assert out == first

    def test_csv_format(self, capsys, block):
        code, out, _ = call(capsys, "lambda-k", block, "--k", "2", "--format", "csv")
        assert out == "lo,lo_closed,hi,hi_closed\n8.0,true,10.0,true\n"


class TestExitCodes:
    def test_input_error(self, capsys, tmp_path):
        p = write(tmp_path, "n.txt", "1 -2\n0 1\n")
        code, _, err = call(capsys, "wmax", p)
        assert code == 2 and "(0, 1)" in err

    def test_missing_k(self, capsys, block):
        code, _, err = call(capsys, "lambda-k", block)
        assert code == 2 and "--k" in err

    def test_k_out_of_range(self, capsys, block):
        assert call(capsys, "wmax-k", block, "--k", "5")[0] == 2

    def test_tuple_where_matrix_needed(self, capsys, pair):
        assert call(capsys, "wmax", pair)[0] == 2

    def test_limit_refusal_names_flag(self, capsys, block):
        code, _, err = call(capsys, "lambda-k", block, "--k", "2", "--limit", "2")
        assert code == 3 and "--limit" in err

    def test_perm_bound(self, capsys, tmp_path):
        p = write(tmp_path, "big.json", json.dumps({"matrix": np.eye(11).tolist()}))
        code, _, err = call(capsys, "c-range", p, "--c", ",".join(["1"] * 11))
        assert code == 3 and "n <= 10" in err

    def test_cloud_needs_out(self, capsys, pair):
        assert call(capsys, "joint-cloud", pair, "--k", "1")[0] == 2


class TestDeterminism:
    def test_verify_byte_identical(self, capsys, tmp_path):
        outs = []
        for i in range(2):
            path = tmp_path / f"r{i}.jsonl"
            code, out, _ = call(capsys, "verify", "--seed", "0", "--trials", "2", "--out", str(path))
            assert code == 0
            outs.append((out, path.read_bytes()))
        assert outs[0] == outs[1]
        lines = outs[0][1].decode().splitlines()
        assert len(lines) == len(json.loads(outs[0][0])["claims"])
        assert all(json.loads(line)["status"] == "pass" for line in lines)

    @pytest.mark.parametrize("argv", [
        ("lambda-k", "--k", "1"), ("wmax",), ("eig",), ("c-range", "--c", "0.1,0.7,1e-5,3"),
    ])
    def test_round_trip(self, capsys, tmp_path, argv):
        p = write(tmp_path, "m.json", '{"matrix": [[0.1,0.2,0,0],[0,0.3,1e-300,0],'
                                      '[0,0,1.2345678901234567e300,0],[0,0,0,0.7]]}')
        code, out, _ = call(capsys, argv[0], p, *argv[1:])
        assert code == 0
        assert json.dumps(json.loads(out)) + "\n" == out

    def test_largest_double_survives(self, capsys, tmp_path):
        p = write(tmp_path, "m.json", '{"matrix": [[1.7976931348623157e308]]}')
        out = call(capsys, "wmax", p)[1]
        assert json.loads(out)["intervals"][0]["hi"] == 1.7976931348623157e308

    def test_overflow_is_an_input_error(self, capsys, tmp_path):
        p = write(tmp_path, "m.json", '{"matrix": [[1e300, 0], [0, 1]]}')
        code, _, err = call(capsys, "c-range", p, "--c", "1e10,1")
        assert code == 2 and "overflow" in err


def test_module_entry_point(tmp_path):
    p = write(tmp_path, "a.json", '{"matrix": [[20, 9], [7, 1]]}')
    res = subprocess.run([sys.executable, "-m", "maxnumrange.cli", "wmax", p],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["intervals"][0]["hi"] == 20.0
