import csv
import io
import json

import pytest

from legendre_pd.cli import UsageError, main, parse_range, parse_z, parse_z_grid


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_eval_text():
    code, text = run("eval", "--kind", "q", "--n", "0", "--m", "0", "--z", "3")
    assert code == 0
    assert text == "0.34657359027997264\trep=Q4.4\tcond=1\tprecision=double\n"


def test_eval_json_double_and_big():
    code, text = run("eval", "--kind", "dnu", "--n", "1", "--m", "0", "--z", "3", "--format", "json")
    rec = json.loads(text)
    assert code == 0
    assert rec["value"]["re"] == pytest.approx(4.079441541679836, rel=1e-15)
    assert rec["precision"] == "double"

    code, text = run("eval", "--kind", "dnu", "--n", "1", "--m", "0", "--z", "3",
                     "--format", "json", "--precision", "big:40")
    rec = json.loads(text)
    assert rec["precision"] == "big:40"
    assert rec["value"]["re"].startswith("4.07944154167983592825169636437452970422")


def test_eval_on_cut_and_side():
    code, text = run("eval", "--kind", "q", "--n", "1", "--m", "1", "--x", "0.5", "--format", "json")
    assert code == 0
    assert json.loads(text)["value"]["re"] == pytest.approx(-1.0530633446377986, rel=1e-13)

    _, up = run("eval", "--kind", "dnu", "--n", "2", "--m", "1", "--z", "3", "--format", "json")
    _, dn = run("eval", "--kind", "dnu", "--n", "2", "--m", "1", "--z", "3", "--format", "json", "--side", "lower")
    assert json.loads(up)["value"] == json.loads(dn)["value"]


def test_eval_with_explicit_rep():
    code, text = run("eval", "--kind", "dnu", "--n", "8", "--m", "0", "--z", "1.05", "--rep", "E3.1")
    assert code == 0
    assert "rep=E3.1" in text
    assert float(text.split("cond=")[1].split("\t")[0]) > 1e5


@pytest.mark.parametrize(
    "argv, code",
    [
        (("eval", "--kind", "q", "--n", "1", "--m", "2", "--z", "3"), 3),
        (("eval", "--kind", "q", "--n", "1", "--m", "0", "--z", "0.5"), 3),
        (("eval", "--kind", "q", "--n", "1", "--m", "0", "--z", "3", "--rep", "E9.9"), 2),
        (("eval", "--kind", "dmu", "--n", "1", "--m", "0", "--z", "3", "--rep", "Q4.4"), 2),
        (("eval", "--kind", "q", "--n", "1", "--m", "0"), 2),
        (("eval", "--kind", "q", "--n", "1", "--m", "0", "--z", "abc"), 2),
        (("eval", "--kind", "r", "--n", "1", "--m", "0", "--z", "3"), 2),
        (("eval", "--kind", "p", "--n", "1", "--m", "0", "--z", "3", "--precision", "big:10"), 2),
    ],
)
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_table_csv(tmp_path):
    grid = tmp_path / "points.txt"
    grid.write_text("# test grid\n3\n1,1\n\nx=0.5\n")
    code, text = run("table", "--kind", "q", "--n", "0:2", "--m", "0:n", "--z-list", str(grid))
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][:3] == ["kind", "n", "m"]
    assert len(rows) == 1 + 6 * 3
    first = dict(zip(rows[0], rows[1]))
    assert float(first["value_re"]) == pytest.approx(0.34657359027997264)


def test_sweep_reports_cond():
    code, text = run("sweep", "--kind", "dnu", "--n", "8", "--m", "0", "--z-grid", "1.01:2:5", "--rep", "E3.7")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 5
    assert all(float(r["cond"]) <= 10 for r in rows)


def test_check_small_matrix():
    code, text = run("check", "--max-n", "2", "--tol", "1e-9")
    assert code == 0
    assert text.rstrip().endswith("check classes passed")


def test_check_json(tmp_path):
    grid = tmp_path / "g.txt"
    grid.write_text("2\n0,0.5\nx=0.3\n")
    code, text = run("check", "--max-n", "2", "--grid", str(grid), "--format", "json")
    assert code == 0
    records = [json.loads(line) for line in text.splitlines()]
    assert all(r["passed"] for r in records)


def test_check_failure_exit_code():
    # an impossible tolerance must turn the run red
    assert run("check", "--max-n", "2", "--tol", "0")[0] == 1


def test_parsers():
    assert complex(parse_z("1,-2").z) == 1 - 2j
    assert parse_z("1,-2").im_sign == -1
    assert parse_range("0:n", 3) == [0, 1, 2, 3]
    assert parse_range("4") == [4]
    assert len(parse_z_grid("1.5:2:3,0.1")) == 3
    with pytest.raises(UsageError):
        parse_range("0:n")
    with pytest.raises(UsageError):
        parse_z_grid("1:2")
