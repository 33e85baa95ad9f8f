import json

import pytest

from regaudit.cli import main


@pytest.fixture
def write_csv(tmp_path):
    def _write(rows, name="in.csv", header="score,gender,eth"):
        path = tmp_path / name
        path.write_text(header + "\n" + "\n".join(rows) + "\n", encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def fair_csv(write_csv):
    rows = [f"{s},{g},{e}" for s in (10, 20, 30, 40) for g in ("F", "M") for e in ("A", "B")]
    return write_csv(rows)


@pytest.fixture
def biased_csv(write_csv):
    rows = [f"{s},a,x" for s in (1, 2, 3, 10)] + [f"{s},b,x" for s in (4, 5, 6, 7)]
    return write_csv(rows)


def test_fair_audit_exit_zero(fair_csv, tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["audit", "--input", fair_csv, "--score-col", "score", "--attrs", "gender,eth", "--intersect",
                 "--metrics", "mean,median,auc,pf,ks", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert {m["attribute"] for m in report["metrics"]} == {"gender", "eth", "gender & eth"}
    assert all(c["value"] == 1.0 for m in report["metrics"] for c in m["groups"].values())


def test_biased_audit_exit_two(biased_csv, capsys):
    code = main(["audit", "--input", biased_csv, "--score-col", "score", "--attrs", "gender", "--metrics", "median"])
    assert code == 2
    report = json.loads(capsys.readouterr().out)
    assert report["metrics"][0]["groups"]["a"] == {"value": 0.25, "flag": True}


def test_missing_column_exit_one(biased_csv, capsys):
    code = main(["audit", "--input", biased_csv, "--score-col", "points", "--attrs", "gender"])
    assert code == 1
    assert "'points'" in capsys.readouterr().err


@pytest.mark.parametrize(
    "extra",
    [
        ["--metrics", "thresh"],
        ["--metrics", "mean", "--threshold", "5"],
        ["--metrics", "nope"],
        ["--prior", "/does/not/exist"],
        ["--prior", "delta:x"],
        ["--bound", "1.5"],
    ],
)
def test_bad_config_exit_one(biased_csv, extra, capsys):
    assert main(["audit", "--input", biased_csv, "--score-col", "score", "--attrs", "gender", *extra]) == 1
    assert "error" in capsys.readouterr().err


def test_thresh_and_text_format(biased_csv, capsys):
    code = main(["audit", "--input", biased_csv, "--score-col", "score", "--attrs", "gender",
                 "--metrics", "thresh", "--threshold", "4", "--format", "text"])
    assert code == 2
    out = capsys.readouterr().out
    assert "ThreshDI" in out and "0.250000*" in out


def test_prior_file(biased_csv, tmp_path, capsys):
    prior = tmp_path / "prior.txt"
    prior.write_text("\n".join("1" if k == 50 else "0" for k in range(100)))
    code = main(["audit", "--input", biased_csv, "--score-col", "score", "--attrs", "gender", "--metrics", "auc",
                 "--prior", str(prior)])
    assert code == 2
    assert json.loads(capsys.readouterr().out)["metrics"][0]["groups"]["a"]["value"] == 0.25
    prior.write_text("1 2 3")
    assert main(["audit", "--input", biased_csv, "--score-col", "score", "--attrs", "gender", "--prior", str(prior)]) == 1


def test_config_file_and_flag_override(biased_csv, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"input": biased_csv, "score-col": "score", "attrs": ["gender"], "metrics": ["median"],
                               "bound": 0.2}))
    assert main(["audit", "--config", str(cfg)]) == 0
    capsys.readouterr()
    assert main(["audit", "--config", str(cfg), "--bound", "0.8"]) == 2
    cfg.write_text(json.dumps({"colour": "red"}))
    assert main(["audit", "--config", str(cfg)]) == 1


def test_min_group_excludes(write_csv, capsys):
    path = write_csv(["1,a,x", "2,a,x", "3,b,x"])
    code = main(["audit", "--input", path, "--score-col", "score", "--attrs", "gender", "--metrics", "mean",
                 "--min-group", "2"])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["summary"]["excluded"][0]["group"] == "b"


def test_curve_command(fair_csv, tmp_path):
    out1, out2 = tmp_path / "c1.csv", tmp_path / "c2.csv"
    args = ["curve", "--input", fair_csv, "--score-col", "score", "--attrs", "gender"]
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert len(lines) == 1 + 100 * 2
    assert all(line.endswith(",1.0") for line in lines[1:])


def test_curve_needs_single_spec(fair_csv, capsys):
    assert main(["curve", "--input", fair_csv, "--score-col", "score", "--attrs", "gender,eth"]) == 1
    assert main(["curve", "--input", fair_csv, "--score-col", "score", "--attrs", "gender,eth", "--intersect"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 1 + 100 * 4


def test_sweep_analytic(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["sweep", "--example", "1", "--mode", "analytic", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "parameter,group,metric,value"
    assert len(lines) == 1 + 10 * 2 * 4
    assert [line.split(",")[0] for line in lines[1::8]] == [str(d) for d in range(10)]


def test_sweep_example2_range(capsys):
    assert main(["sweep", "--example", "2"]) == 0
    params = {line.split(",")[0] for line in capsys.readouterr().out.splitlines()[1:]}
    assert params == {str(s) for s in range(1, 11)}


def test_sweep_sampled_reproducible(tmp_path):
    outs = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for o in outs:
        assert main(["sweep", "--example", "1", "--mode", "sampled", "--n", "3000", "--seed", "9", "--out", str(o)]) == 0
    assert outs[0].read_bytes() == outs[1].read_bytes()


def test_sweep_requires_example(capsys):
    assert main(["sweep"]) == 1
    with pytest.raises(SystemExit):
        main(["sweep", "--example", "7"])
