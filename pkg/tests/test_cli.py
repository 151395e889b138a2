import json
import xml.dom.minidom

import pytest

from ro2ss.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def tsv_rows(out):
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    header = lines[0].split("\t")
    return [dict(zip(header, l.split("\t"))) for l in lines[1:]]


def test_ko_table(capsys):
    code, out, _ = run(capsys, "homotopy", "--n", "1", "--theory", "er", "--shift", "0", "--range", "0:7")
    assert code == 0
    assert out.startswith("# schema_version=1\n")
    groups = [r["group"] for r in tsv_rows(out)]
    assert groups == ["Z_(2)", "Z/2", "Z/2", "0", "Z_(2)", "0", "0", "0"]
    assert tsv_rows(out)[1]["generators"] == "a v1"


def test_ku_table(capsys):
    code, out, _ = run(capsys, "homotopy", "--n", "1", "--theory", "e", "--range", "0:3")
    assert code == 0
    assert [r["group"] for r in tsv_rows(out)] == ["Z_(2)", "0", "Z_(2)", "0"]


def test_x2_in_degree_17(capsys):
    code, out, _ = run(capsys, "homotopy", "--n", "2", "--range", "17:17", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    row = doc["rows"][0]
    assert "a v2^3 σ^-8" in row["generators"]
    assert 2 in row["torsion"]


def test_negative_ranges_and_shift(capsys):
    code, out, _ = run(capsys, "homotopy", "--n", "1", "--range", "-3:-1", "--shift", "-a")
    assert code == 0
    assert [r["j"] for r in tsv_rows(out)] == ["-3", "-2", "-1"]


def page_rows(capsys, r, *extra):
    code, out, _ = run(capsys, "pages", "--n", "1", "--page", str(r), "--m-range", "-2:-2",
                       "--p-range", "2:2", "--en-range", "0:0", *extra)
    assert code == 0
    return out, [row for row in tsv_rows(out) if row["filtration"] == "0"]


def test_pages_sigma_squared(capsys):
    _, rows2 = page_rows(capsys, 2)
    assert rows2[0]["monomials"] == "σ^2"
    _, rows4 = page_rows(capsys, 4)
    assert all("σ^2" != r["monomials"] for r in rows4)
    out4, _ = page_rows(capsys, 4)
    out100, _ = page_rows(capsys, 100)
    body = lambda o: [l for l in o.splitlines() if not l.startswith("# page=")]
    assert body(out4) == body(out100)


def test_pages_svg(capsys):
    code, out, _ = run(capsys, "pages", "--n", "1", "--page", "3", "--m-range", "-6:6",
                       "--p-range", "-1:1", "--en-range", "-2:4", "--format", "svg")
    assert code == 0
    doc = xml.dom.minidom.parseString(out.encode())
    svg = doc.documentElement
    assert svg.getAttribute("version") == "1.1"
    assert doc.getElementsByTagName("line")  # d_3 arrows
    assert doc.getElementsByTagName("rect")


def test_pages_json_and_text(capsys):
    code, out, _ = run(capsys, "pages", "--n", "2", "--page", "8", "--m-range", "0:3",
                       "--en-range", "0:1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert any(b["monomials"] == ["a^3 v2"] for b in doc["blocks"])
    code, out, _ = run(capsys, "pages", "--n", "1", "--format", "text")
    assert code == 0 and "en=" in out


def test_determinism(capsys):
    args = ("verify", "all", "--n", "1", "--range", "-4:4", "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    args = ("pages", "--n", "1", "--page", "3", "--format", "svg")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_threads_do_not_change_output(capsys, monkeypatch):
    args = ("verify", "all", "--n", "1", "--range", "-2:2", "--format", "json")
    monkeypatch.setenv("RO2SS_THREADS", "1")
    serial = run(capsys, *args)
    monkeypatch.setenv("RO2SS_THREADS", "3")
    parallel = run(capsys, *args)
    assert serial == parallel


def test_verify_all_n1(capsys):
    code, out, _ = run(capsys, "verify", "all", "--n", "1", "--range", "-16:32")
    assert code == 0
    assert out.rstrip().endswith("PASS")


def test_verify_main_n2(capsys):
    code, out, _ = run(capsys, "verify", "main", "--n", "2", "--range", "-48:48")
    assert code == 0, out


def test_sigma_sign_negative_control(capsys):
    code, out, _ = run(capsys, "verify", "exactness", "--n", "1", "--range", "0:0", "--sigma-sign", "+")
    assert code == 1
    assert "FAIL boundary" in out
    code, _, _ = run(capsys, "verify", "exactness", "--n", "1", "--range", "0:0")
    assert code == 0


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "duality", "--n", "1", "--range", "0:1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema_version"] == 1 and doc["check"] == "duality"
    assert all(b["status"] == "pass" for b in doc["blocks"])


@pytest.mark.parametrize("argv, flag", [
    (["homotopy", "--n", "1", "--range", "7:0"], "--range"),
    (["homotopy", "--n", "1", "--range", "zero"], "--range"),
    (["homotopy", "--n", "1", "--shift", "1+b"], "--shift"),
    (["pages", "--n", "1", "--page", "1"], "--page"),
    (["pages", "--n", "1", "--m-range", "3"], "--m-range"),
    (["verify", "nonsense", "--n", "1"], "which"),
    (["homotopy", "--n", "9"], "--n"),
    (["homotopy"], "--n"),
])
def test_usage_errors(capsys, argv, flag):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert flag in err


def test_bad_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("RO2SS_THREADS", "many")
    code, _, err = run(capsys, "verify", "all", "--n", "1", "--range", "0:0")
    assert code == 2 and "RO2SS_THREADS" in err


def test_output_file(capsys, tmp_path):
    path = tmp_path / "ko.tsv"
    code, out, _ = run(capsys, "homotopy", "--n", "1", "--output", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("# schema_version=1")
