import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

from chainmap import io
from chainmap.chain import jacobi_chain
from chainmap.cli import main

OHMIC = "family: hard-cutoff\nalpha: 0.1\ns: 1\nomega_c: 1.0\nchain_length: 50\nengine: auto\n"
GAPPED = """family: gapped
segments:
  - {family: hard-cutoff, alpha: 0.1, s: 1, lo: 0.0, hi: 0.4}
  - {family: hard-cutoff, alpha: 0.1, s: 1, lo: 0.6, hi: 1.0}
chain_length: 12
"""


@pytest.fixture
def runner():
    return CliRunner()


def config(tmp_path, text, name="job.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_ohmic_map_to_csv(runner, tmp_path):
    out = tmp_path / "chain.csv"
    res = runner.invoke(main, ["map", "--config", config(tmp_path, OHMIC), "--out", str(out)])
    assert res.exit_code == 0, res.output
    lines = out.read_text().splitlines()
    rows = lines[lines.index("n,omega,t") + 1:]
    assert len(rows) == 50
    assert "source=jacobi" in lines[0]
    cp = io.chain_from_csv(out.read_text())
    ref = jacobi_chain(0.1, 1.0, 1.0, 50)
    np.testing.assert_array_equal(cp.omega, ref.omega)
    np.testing.assert_array_equal(cp.t, ref.t)
    report = json.loads((tmp_path / "chain.szego.json").read_text())
    assert report["in_class"] is True
    assert report["predicted_tail"] == [0.5, 0.25]


def test_map_to_stdout_and_json(runner, tmp_path):
    res = runner.invoke(main, ["map", "--config", config(tmp_path, OHMIC), "--n", "5", "--format", "json"])
    assert res.exit_code == 0
    d = json.loads(res.output)
    assert len(d["omega"]) == 5 and len(d["t"]) == 4


def test_map_engine_override_and_provenance(runner, tmp_path):
    out = tmp_path / "c.json"
    res = runner.invoke(main, ["map", "--config", config(tmp_path, OHMIC), "--n", "30", "--engine", "lanczos",
                               "--out", str(out), "--check"])
    assert res.exit_code == 0, res.output
    d = json.loads(out.read_text())
    prov = d["provenance"]
    assert prov["engine"] == "lanczos"
    assert prov["quad_points"] > 0
    assert prov["est_error"] < 1e-10
    assert prov["cross_check"] == "stieltjes"
    assert prov["cross_check_disagreement"] < 1e-10
    ref = jacobi_chain(0.1, 1.0, 1.0, 30)
    assert np.max(np.abs(np.array(d["omega"]) - ref.omega)) < 1e-12


def test_map_is_deterministic(runner, tmp_path):
    cfg = config(tmp_path, "family: exp-cutoff\nalpha: 0.1\ns: 0.5\nchain_length: 20\nengine: stieltjes\n")
    outs = []
    for name in ("a.csv", "b.csv"):
        assert runner.invoke(main, ["map", "--config", cfg, "--out", str(tmp_path / name)]).exit_code == 0
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]


def test_gapped_writes_one_file_per_segment(runner, tmp_path):
    out = tmp_path / "gap.csv"
    res = runner.invoke(main, ["map", "--config", config(tmp_path, GAPPED), "--out", str(out)])
    assert res.exit_code == 0, res.output
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["gap.seg0.csv", "gap.seg0.szego.json", "gap.seg1.csv", "gap.seg1.szego.json", "job.yaml"]
    seg0 = io.chain_from_csv((tmp_path / "gap.seg0.csv").read_text())
    seg1 = io.chain_from_csv((tmp_path / "gap.seg1.csv").read_text())
    assert np.all(seg0.omega <= 0.4) and np.all(seg1.omega >= 0.6)
    # w = 0.2 x integrated over [0, 0.4] and [0.6, 1]
    assert math.isclose(seg0.c0**2 + seg1.c0**2, 0.1 * (0.4**2 + 1 - 0.6**2), rel_tol=1e-9)


def test_malformed_config_exit_2_and_no_files(runner, tmp_path):
    out = tmp_path / "x.csv"
    cfg = config(tmp_path, "family: hard-cutoff\nalpha: 0.1\n")
    res = runner.invoke(main, ["map", "--config", cfg, "--out", str(out)])
    assert res.exit_code == 2
    assert "error:" in res.output
    assert sorted(p.name for p in tmp_path.iterdir()) == ["job.yaml"]


def test_bad_yaml_exit_2(runner, tmp_path):
    res = runner.invoke(main, ["map", "--config", config(tmp_path, "family: [oops\n")])
    assert res.exit_code == 2


def test_too_long_discrete_chain_exit_4(runner, tmp_path):
    cfg = config(tmp_path, "family: linear-discretised\nalpha: 0.1\ns: 1\nn_modes: 9\nchain_length: 20\n")
    res = runner.invoke(main, ["map", "--config", cfg, "--out", str(tmp_path / "h.csv")])
    assert res.exit_code == 4
    assert "10" in res.output
    assert not (tmp_path / "h.csv").exists()


def test_no_convergence_exit_3(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("CHAINMAP_QUAD_MAX", "64")
    cfg = config(tmp_path, "family: hard-cutoff\nalpha: 0.1\ns: 0.5\nchain_length: 80\nengine: stieltjes\n")
    res = runner.invoke(main, ["map", "--config", cfg, "--out", str(tmp_path / "c.csv")])
    assert res.exit_code == 3
    assert not (tmp_path / "c.csv").exists()


def test_check_passes_for_families(runner, tmp_path):
    for i, text in enumerate([
        OHMIC,
        "family: exp-cutoff\nalpha: 0.1\ns: 2\nchain_length: 20\n",
        "family: log-discretised\nalpha: 0.1\ns: 1\ndelta: 2\nchain_length: 20\n",
        "family: linear-discretised\nalpha: 0.1\ns: 1\nn_modes: 30\nchain_length: 20\n",
        GAPPED,
    ]):
        res = runner.invoke(main, ["check", "--config", config(tmp_path, text, f"j{i}.yaml")])
        assert res.exit_code == 0, res.output
        assert "FAIL" not in res.output


def test_star_littleq(runner, tmp_path):
    cfg = config(tmp_path, "family: log-discretised\nalpha: 0.1\ns: 1\ndelta: 2\n")
    res = runner.invoke(main, ["star", "--config", cfg, "--n", "4"])
    assert res.exit_code == 0
    rows = [r.split(",") for r in res.output.splitlines()[2:]]
    zeta = np.array([float(r[1]) for r in rows])
    np.testing.assert_allclose(zeta[1:] / zeta[:-1], 0.5, rtol=1e-15)


def test_star_continuous_needs_count(runner, tmp_path):
    res = runner.invoke(main, ["star", "--config", config(tmp_path, "family: hard-cutoff\nalpha: 0.1\ns: 1\n")])
    assert res.exit_code == 0
    assert len(res.output.splitlines()) == 52


def test_szego_report(runner, tmp_path):
    res = runner.invoke(main, ["szego", "--config", config(tmp_path, OHMIC)])
    assert res.exit_code == 0
    d = json.loads(res.output)
    # w = 0.2 x on [0, 1]
    assert abs(d["szego_integral"] - (-math.pi * math.log(2) + math.pi / 2 * math.log(0.2))) < 1e-10
    res = runner.invoke(main, ["szego", "--config", config(tmp_path, GAPPED, "g.yaml")])
    d = json.loads(res.output)
    assert d["whole"]["in_class"] is False
    assert all(seg["in_class"] for seg in d["segments"])


def test_compare_engines(runner, tmp_path):
    cfg = config(tmp_path, OHMIC)
    res = runner.invoke(main, ["compare", "--config", cfg, "--n", "100"])
    assert res.exit_code == 0
    vals = [float(line.split(",")[1]) for line in res.output.splitlines() if line[0].isdigit()]
    assert len(vals) == 100 and max(vals) < 1e-10
    res = runner.invoke(main, ["compare", "--config", cfg, "--n", "10", "--engines", "lanczos,lanczos"])
    assert all(float(line.split(",")[1]) == 0.0 for line in res.output.splitlines() if line[0].isdigit())


def test_compare_gram_schmidt_breaks_down(runner, tmp_path):
    out = tmp_path / "cmp.csv"
    res = runner.invoke(main, ["compare", "--config", config(tmp_path, OHMIC), "--n", "40",
                               "--engines", "gram-schmidt,closed-form", "--out", str(out)])
    assert res.exit_code == 0, res.output
    vals = [float(line.split(",")[1]) for line in out.read_text().splitlines() if line[0].isdigit()]
    assert max(vals) > 1e-3


def test_compare_needs_two_engines(runner, tmp_path):
    res = runner.invoke(main, ["compare", "--config", config(tmp_path, OHMIC), "--engines", "lanczos"])
    assert res.exit_code == 2


def test_oracle_single_case(runner, tmp_path, derived):
    out = tmp_path / "d.json"
    res = runner.invoke(main, ["oracle", "--case", "jacobi_s1", "--out", str(out)])
    assert res.exit_code == 0
    assert json.loads(out.read_text()) == {"jacobi_s1": derived["jacobi_s1"]}


def test_bad_quad_max_is_config_error(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("CHAINMAP_QUAD_MAX", "lots")
    cfg = config(tmp_path, OHMIC.replace("auto", "lanczos"))
    assert runner.invoke(main, ["map", "--config", cfg]).exit_code == 2
