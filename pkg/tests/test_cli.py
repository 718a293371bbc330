import json
import math

import numpy as np
import pytest

from unidisc import cli
from unidisc.pointsets import load_pointset

from conftest import diagonal_points, planted_net


def _strip_timestamp(text):
    return "\n".join(l for l in text.splitlines() if '"timestamp"' not in l)


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert "unidisc" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# gen


def test_gen_universal_sup_norm_sizes(tmp_path, capsys):
    out = tmp_path / "u.json"
    assert cli.main(["gen", "--family", "universal-linf", "--n", "4",
                     "--d", "2", "--out", str(out)]) == 0
    msg = capsys.readouterr().out
    assert "m=16384" in msg and "r=14" in msg and "t=0" in msg
    ps = load_pointset(out)
    assert ps.m == 16384 and ps.domain == "torus2pi"
    payload = json.loads(out.read_text())
    assert payload["config"]["command"] == "gen"
    assert payload["meta"]["log_term"] == 5
    assert payload["version"]


def test_gen_sparse_minimal(tmp_path, capsys):
    out = tmp_path / "sg.json"
    assert cli.main(["gen", "--family", "sparse", "--n", "0", "--d", "2",
                     "--out", str(out)]) == 0
    assert load_pointset(out).m == 16


def test_gen_tensor_grids(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert cli.main(["gen", "--family", "tensorP", "--N", "1",
                     "--out", str(out)]) == 0
    assert load_pointset(out).m == 3
    assert cli.main(["gen", "--family", "tensorPprime", "--N", "1",
                     "--out", str(out)]) == 0
    assert load_pointset(out).m == 4


def test_gen_random_torus(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["gen", "--family", "random", "--m", "10", "--d", "3",
                     "--seed", "5", "--domain", "torus2pi",
                     "--out", str(out)]) == 0
    ps = load_pointset(out)
    assert ps.m == 10 and ps.domain == "torus2pi"


def test_gen_argument_errors(tmp_path, capsys):
    # missing required sub-arguments surface as exit 1 with a message
    assert cli.main(["gen", "--family", "net", "--d", "2"]) == 1
    assert "error" in capsys.readouterr().err
    assert cli.main(["gen", "--family", "universal-lq", "--n", "2",
                     "--d", "2"]) == 1
    # construction past the resolution cap reports the documented error
    assert cli.main(["gen", "--family", "universal-linf", "--n", "3",
                     "--d", "3"]) == 1
    assert "cap" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        cli.main(["gen", "--family", "bogus"])


# ---------------------------------------------------------------------------
# check-net / min-t


def test_check_net_pass_and_fail(tmp_path, capsys):
    net = tmp_path / "net.json"
    assert cli.main(["gen", "--family", "net", "--r", "6", "--d", "2",
                     "--out", str(net)]) == 0
    assert cli.main(["check-net", "--in", str(net), "--t", "0"]) == 0
    assert "PASS" in capsys.readouterr().out

    diag = tmp_path / "diag.json"
    diagonal_points(4).save_json(diag)
    rpt = tmp_path / "chk.json"
    code = cli.main(["check-net", "--in", str(diag), "--t", "0",
                     "--out", str(rpt)])
    assert code == cli.EXIT_ASSERT
    assert "FAIL" in capsys.readouterr().out
    assert json.loads(rpt.read_text())["witness"] is not None


def test_min_t_diagonal(tmp_path, capsys):
    diag = tmp_path / "diag.json"
    diagonal_points(4).save_json(diag)
    assert cli.main(["min-t", "--in", str(diag)]) == 0
    assert "t=3" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# dispersion


def test_dispersion_methods(tmp_path, capsys):
    net = tmp_path / "net.json"
    cli.main(["gen", "--family", "net", "--r", "4", "--d", "2",
              "--out", str(net)])
    out = tmp_path / "disp.json"
    assert cli.main(["dispersion", "--in", str(net), "--method", "exact",
                     "--out", str(out)]) == 0
    body = json.loads(out.read_text())
    assert body["volume"] == pytest.approx(39 / 256)
    assert cli.main(["dispersion", "--in", str(net),
                     "--method", "dyadic", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["volume"] == pytest.approx(1 / 32)


# ---------------------------------------------------------------------------
# sweep


def _gen_small_universal(tmp_path):
    pts = tmp_path / "pts.json"
    assert cli.main(["gen", "--family", "universal-lq", "--n", "3",
                     "--d", "2", "--q", "2", "--a", "2",
                     "--out", str(pts)]) == 0
    return pts


def test_sweep_writes_report_files(tmp_path, capsys):
    pts = _gen_small_universal(tmp_path)
    base = tmp_path / "rep.json"
    assert cli.main(["sweep", "--points", str(pts), "--n", "3", "--d", "2",
                     "--q", "2", "--samples", "10",
                     "--out", str(base)]) == 0
    data = json.loads(base.read_text())
    assert {"C1_hat", "C2_hat", "records", "config"} <= set(data)
    csv_text = (tmp_path / "rep.csv").read_text()
    assert csv_text.splitlines()[0].startswith("s,")
    assert (tmp_path / "rep.png").stat().st_size > 0


def test_sweep_assertion_gate(tmp_path, capsys):
    pts = _gen_small_universal(tmp_path)
    args = ["sweep", "--points", str(pts), "--n", "3", "--d", "2",
            "--q", "2", "--samples", "10"]
    assert cli.main(args + ["--assert-c1", "0.45"]) == 0
    assert cli.main(args + ["--assert-c1", "1.5"]) == cli.EXIT_ASSERT
    assert "ASSERTION FAILED" in capsys.readouterr().err


def test_sup_norm_sweep_passes_moderate_gate(tmp_path):
    pts = tmp_path / "u6.json"
    assert cli.main(["gen", "--family", "universal-linf", "--n", "6",
                     "--d", "2", "--out", str(pts)]) == 0
    assert cli.main(["sweep", "--points", str(pts), "--n", "6", "--d", "2",
                     "--q", "inf", "--samples", "30",
                     "--assert-c1", "0.45"]) == 0


def test_sweep_restricted_subspace(tmp_path):
    pts = _gen_small_universal(tmp_path)
    base = tmp_path / "one.json"
    assert cli.main(["sweep", "--points", str(pts), "--n", "3", "--d", "2",
                     "--q", "2", "--samples", "6", "--s", "2,1",
                     "--out", str(base)]) == 0
    data = json.loads(base.read_text())
    assert len(data["records"]) == 1
    assert data["records"][0]["s"] == [2, 1]


def test_sweep_identical_across_thread_counts(tmp_path):
    pts = _gen_small_universal(tmp_path)
    for threads, sub in ((1, "one"), (3, "three")):
        (tmp_path / sub).mkdir()
        base = tmp_path / sub / "rep.json"
        assert cli.main(["sweep", "--points", str(pts), "--n", "3",
                         "--d", "2", "--q", "2", "--samples", "12",
                         "--threads", str(threads),
                         "--out", str(base)]) == 0
    # reports agree byte for byte once the timestamp and the embedded
    # output path (the only run-specific fields) are factored out
    ja = _strip_timestamp((tmp_path / "one" / "rep.json").read_text()
                          .replace(str(tmp_path / "one"), "DIR"))
    jb = _strip_timestamp((tmp_path / "three" / "rep.json").read_text()
                          .replace(str(tmp_path / "three"), "DIR"))
    assert ja == jb
    assert (tmp_path / "one" / "rep.csv").read_bytes() == \
        (tmp_path / "three" / "rep.csv").read_bytes()


def test_env_thread_override(tmp_path, monkeypatch):
    pts = _gen_small_universal(tmp_path)
    monkeypatch.setenv("UNIDISC_THREADS", "2")
    base = tmp_path / "env.json"
    assert cli.main(["sweep", "--points", str(pts), "--n", "3", "--d", "2",
                     "--q", "2", "--samples", "12",
                     "--out", str(base)]) == 0
    monkeypatch.delenv("UNIDISC_THREADS")
    base2 = tmp_path / "noenv.json"
    assert cli.main(["sweep", "--points", str(pts), "--n", "3", "--d", "2",
                     "--q", "2", "--samples", "12",
                     "--out", str(base2)]) == 0
    assert _strip_timestamp(base.read_text().replace("env.json", "X")) == \
        _strip_timestamp(base2.read_text().replace("noenv.json", "X"))


def test_rerun_reproduces_report(tmp_path):
    pts = _gen_small_universal(tmp_path)
    first = tmp_path / "first.json"
    assert cli.main(["sweep", "--points", str(pts), "--n", "3", "--d", "2",
                     "--q", "2", "--samples", "8",
                     "--out", str(first)]) == 0
    second = tmp_path / "second.json"
    assert cli.main(["rerun", "--config", str(first),
                     "--out", str(second)]) == 0
    ja = _strip_timestamp(first.read_text().replace("first", "X"))
    jb = _strip_timestamp(second.read_text().replace("second", "X"))
    assert ja == jb


# ---------------------------------------------------------------------------
# witness / compare


def test_witness_on_planted_set(tmp_path, capsys):
    pts = tmp_path / "holey.json"
    planted_net(12, (4, 2), 2).save_json(pts)
    out = tmp_path / "wit.json"
    assert cli.main(["witness", "--points", str(pts), "--n", "6",
                     "--a-min", "2", "--out", str(out)]) == 0
    assert "found" in capsys.readouterr().out
    assert json.loads(out.read_text())["found"] is True


def test_compare_writes_csv_and_figure(tmp_path, capsys):
    base = tmp_path / "cmp.json"
    assert cli.main(["compare", "--n", "3", "--d", "2", "--q", "2",
                     "--samples", "6", "--a", "2",
                     "--out", str(base)]) == 0
    rows = (tmp_path / "cmp.csv").read_text().strip().splitlines()
    assert rows[0] == "family,m,C1_hat,C2_hat"
    assert [r.split(",")[0] for r in rows[1:]] == [
        "net", "sparse_grid", "iid_uniform"]
    assert (tmp_path / "cmp.png").stat().st_size > 0
    assert json.loads(base.read_text())["config"]["params"]["q"] == 2.0


def test_missing_input_file_is_reported(tmp_path, capsys):
    assert cli.main(["check-net", "--in", str(tmp_path / "nope.json"),
                     "--t", "0"]) == 1
    assert "error" in capsys.readouterr().err
