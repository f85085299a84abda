"""Command-line interface: formats, exit codes, files."""

import json

from sturmtree import example_catalog, serialize_presentation
from sturmtree.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_census_tsv_sturmian(capsys):
    code, out, _ = run(capsys, "census", "--example", "ex31-sturmian", "-n", "8")
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert rows[0] == ["n", "b", "special"]
    for n in range(9):
        assert rows[1 + n][0] == str(n)
        assert rows[1 + n][1] == str(n + 2)
    assert [r[2] for r in rows[1:9]] == ["1"] * 8
    assert rows[9][2] == "-"  # no extension data at the top radius


def test_census_constant(capsys):
    code, out, _ = run(capsys, "census", "--example", "constant", "-n", "5")
    assert code == 0
    assert all(line.split("\t")[1] == "1" for line in out.strip().splitlines()[1:])


def test_census_json(capsys):
    code, out, _ = run(capsys, "census", "--example", "alternating", "-n", "3",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["k"] == 3 and doc["rows"][0]["b"] == 2
    keys = {cl["key"] for cl in doc["rows"][0]["classes"]}
    assert len(keys) == 2


def test_census_oracle_flag(capsys):
    code, out, _ = run(capsys, "census", "--example", "sec2-bounded-type",
                       "-n", "5", "--oracle")
    assert code == 0
    assert "oracle\tagrees=True saturated=True" in out


def test_census_bad_input_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    obj = json.loads(serialize_presentation(example_catalog()["constant"]))
    obj["vertices"][0]["self"] = 2  # degree sum 2 != 3
    bad.write_text(json.dumps(obj))
    code, _, err = run(capsys, "census", "--input", str(bad), "-n", "3")
    assert code == 2
    assert "RegularityError" in err and "position 0" in err


def test_census_missing_file_exits_2(capsys):
    code, _, err = run(capsys, "census", "--input", "/nonexistent.json", "-n", "2")
    assert code == 2


def test_census_cap_exits_3(capsys):
    code, _, err = run(capsys, "census", "--example", "constant", "-n", "8",
                       "--cap", "100")
    assert code == 3
    assert "cap" in err


def test_unknown_example_exits_2(capsys):
    code, _, err = run(capsys, "census", "--example", "nope", "-n", "2")
    assert code == 2


def test_census_figure(tmp_path, capsys):
    fig = tmp_path / "b.png"
    code, _, _ = run(capsys, "census", "--example", "ex31-sturmian", "-n", "6",
                     "--figure", str(fig))
    assert code == 0 and fig.stat().st_size > 1000


def test_classify_bounded_type(capsys):
    code, out, _ = run(capsys, "classify", "--example", "sec2-bounded-type",
                       "-n", "10")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines() if not line.startswith("#")]
    by_pos = {r[0]: r for r in rows[1:]}
    assert by_pos["0"][1] == "b" and by_pos["0"][2] == "-1" and by_pos["0"][3] == "0"
    assert "# sturmian_up_to_10\ttrue" in out
    assert "# plateau\tnone" in out


def test_classify_shape_line(capsys):
    code, out, _ = run(capsys, "classify", "--example", "ep-typeA", "-n", "8")
    assert code == 0
    shape_line = next(l for l in out.splitlines() if l.startswith("# shape"))
    assert "EventuallyPeriodicTypeA" in shape_line


def test_classify_alternating_reconstructs(capsys):
    code, out, _ = run(capsys, "classify", "--example", "alternating", "-n", "6",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["plateau"] == 0
    assert len(doc["reconstructed"]["vertices"]) == 2
    assert doc["sturmian_up_to"]["value"] is False


def test_export_presentation_dot(capsys):
    code, out, _ = run(capsys, "export", "--example", "ex31-sturmian")
    assert code == 0
    assert 'label="3 2"' in out  # the leading edge pair
    code, out, _ = run(capsys, "export", "--example", "constant")
    assert 'style=dotted, label="3"' in out


def test_export_ball(capsys):
    code, out, _ = run(capsys, "export", "--example", "ex31-sturmian",
                       "--what", "ball", "--pos", "0", "-n", "1")
    assert code == 0
    assert out.count("[label=") == 4  # 4-node ball


def test_export_json_roundtrip(capsys):
    code, out, _ = run(capsys, "export", "--example", "sec2-bounded-type",
                       "--format", "json")
    assert code == 0
    assert out.strip() == serialize_presentation(
        example_catalog()["sec2-bounded-type"]
    )


def test_export_figure(tmp_path, capsys):
    fig = tmp_path / "quotient.png"
    code, _, _ = run(capsys, "export", "--example", "arbitrary-quotient",
                     "--figure", str(fig))
    assert code == 0 and fig.stat().st_size > 1000


def test_export_to_file(tmp_path, capsys):
    out_path = tmp_path / "p.dot"
    code, out, _ = run(capsys, "export", "--example", "constant",
                       "--out", str(out_path))
    assert code == 0 and out == ""
    assert "dotted" in out_path.read_text()


def test_verify_subset_passes(capsys):
    code, out, _ = run(capsys, "verify", "--only", "AC10")
    assert code == 0
    assert out.startswith("PASS\tAC10")


def test_verify_no_oracle_skips(capsys):
    code, out, _ = run(capsys, "verify", "--only", "AC4", "--no-oracle")
    assert code == 0
    assert out.startswith("SKIP\tAC4")


def test_verify_corrupted_catalog_fails(capsys):
    code, out, _ = run(capsys, "verify", "--only", "AC7", "--corrupt", "ep-typeA")
    assert code == 1
    assert out.startswith("FAIL\tAC7")


def test_wordlift_line_roundtrip(capsys):
    code, out, _ = run(capsys, "wordlift", "--word", "periodic:ab")
    assert code == 0
    doc = json.loads(out)
    assert doc["k"] == 2 and doc["kind"] == "line"


def test_wordlift_rational_uniform(tmp_path, capsys):
    path = tmp_path / "lift.json"
    code, _, _ = run(capsys, "wordlift", "--word", "mechanical:13/21",
                     "--construction", "uniform", "--s", "1", "--t", "1",
                     "-k", "3", "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "census", "--input", str(path), "-n", "5")
    assert code == 0
    assert [line.split("\t")[1] for line in out.strip().splitlines()[1:]] == \
        [str(n + 2) for n in range(6)]


def test_wordlift_cf_digits(capsys):
    code, out, _ = run(capsys, "wordlift", "--word", "cf:0,1,1,1,1,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "line"
    # [0;1,1,1,1,1] = 5/8, so the line period is 8
    assert len(doc["right_tail"]["period_vertices"]) == 8


def test_wordlift_bad_word_exits_2(capsys):
    code, _, err = run(capsys, "wordlift", "--word", "sturm:quoi")
    assert code == 2
    code, _, err = run(capsys, "wordlift", "--word", "mechanical:7/3")
    assert code == 2  # slope above 1


def test_wordlift_forbidden_factor_exits_2(capsys):
    code, _, err = run(capsys, "wordlift", "--word", "cf:0,1,1,1,1,1",
                       "--construction", "ab", "--s1", "1", "--s2", "0",
                       "--t1", "1", "--t2", "2", "-k", "3")
    assert code == 2 and "ForbiddenFactor" in err
