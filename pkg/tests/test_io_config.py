import json
import math
from pathlib import Path

import numpy as np
import pytest

from chainmap import io
from chainmap.chain import DiscretisedStarModel, hahn_chain, jacobi_chain, littleq_chain
from chainmap.config import JobConfig, load_config, parse_config, parse_density
from chainmap.errors import ConfigError, DeltaOutOfRange
from chainmap.measures import (
    Gapped,
    LinearDiscretised,
    LogDiscretised,
    PointMasses,
    PowerLawHardCutoff,
    Tabulated,
    induced_measure,
)
from chainmap.orthopoly import Engine, RecurrenceCoefficients, stieltjes_discretised


def awkward_floats(n, seed=3):
    # values whose shortest repr needs all 17 digits
    return np.random.default_rng(seed).random(n) * 10.0 ** np.arange(-n // 2, n - n // 2)


def test_fmt():
    assert io.fmt(0.1) == "1.0000000000000001e-01"
    assert io.fmt(math.inf) == "inf"
    assert io.fmt(-math.inf) == "-inf"
    assert io.fmt(math.nan) == "nan"
    for x in awkward_floats(40):
        assert float(io.fmt(x)) == x


def test_rc_text_round_trip_is_bit_exact():
    rc = RecurrenceCoefficients(awkward_floats(12), awkward_floats(12, 4) + 1e-3, Engine.LANCZOS)
    back = io.rc_from_text(io.rc_to_text(rc))
    np.testing.assert_array_equal(back.alpha, rc.alpha)
    np.testing.assert_array_equal(back.beta, rc.beta)
    assert back.engine is Engine.LANCZOS


def test_rc_json_round_trip_keeps_error_estimates():
    rc = stieltjes_discretised(induced_measure(PowerLawHardCutoff(0.1, 1.0, 1.0)), 8)
    text = io.rc_to_json(rc)
    d = json.loads(text)
    assert set(d) == {"engine", "n", "alpha", "beta", "est_error"}
    back = io.rc_from_json(text)
    np.testing.assert_array_equal(back.alpha, rc.alpha)
    np.testing.assert_array_equal(back.beta, rc.beta)
    np.testing.assert_array_equal(back.est_error, rc.est_error)


def test_rc_json_length_checked():
    d = json.loads(io.rc_to_json(RecurrenceCoefficients([0.5, 0.5], [1.0, 0.1])))
    d["n"] = 3
    with pytest.raises(ValueError):
        io.rc_from_json(json.dumps(d))


def test_chain_csv_layout_and_round_trip():
    cp = jacobi_chain(0.1, 1.0, 1.0, 50)
    text = io.chain_to_csv(cp)
    lines = text.splitlines()
    assert lines[0].startswith("# c0=") and "source=jacobi" in lines[0] and "g=" in lines[0]
    assert "n,omega,t" in lines
    rows = lines[lines.index("n,omega,t") + 1:]
    assert len(rows) == 50
    assert rows[-1].endswith(",")
    back = io.chain_from_csv(text)
    np.testing.assert_array_equal(back.omega, cp.omega)
    np.testing.assert_array_equal(back.t, cp.t)
    assert back.c0 == cp.c0 and back.g == cp.g and back.source == cp.source


def test_csv_and_json_carry_identical_numbers():
    cp = littleq_chain(0.1, 0.5, 1.0, 2.0, 20)
    a, b = io.chain_from_csv(io.chain_to_csv(cp)), io.chain_from_json(io.chain_to_json(cp))
    np.testing.assert_array_equal(a.omega, b.omega)
    np.testing.assert_array_equal(a.t, b.t)
    assert a.c0 == b.c0


def test_chain_json_provenance():
    d = json.loads(io.chain_to_json(hahn_chain(0.1, 1.0, 1.0, 30, 10)))
    assert d["provenance"]["n_modes"] == 31
    assert d["asymptote"] is None
    d = json.loads(io.chain_to_json(jacobi_chain(0.1, 1.0, 1.0, 3)))
    assert d["asymptote"] == [0.5, 0.25]


def test_json_handles_non_finite_values():
    d = json.loads(io.dumps_json({"x": math.inf, "y": [1.0, math.nan]}))
    assert d == {"x": "inf", "y": [1.0, "nan"]}


def test_dumps_json_is_sorted_and_stable():
    a = io.dumps_json({"b": 1, "a": {"d": 0.1, "c": True}})
    assert a == io.dumps_json({"a": {"c": True, "d": 0.1}, "b": 1})
    assert a.index('"a"') < a.index('"b"')


def test_star_outputs():
    star = DiscretisedStarModel(np.array([0.5, 0.25]), np.array([1.0, 0.5]))
    assert io.star_to_csv(star).splitlines()[1] == "n,zeta,gamma"
    d = json.loads(io.star_to_json(star))
    assert d["zeta"] == [1.0, 0.5] and d["gamma"] == [0.5, 0.25]


def test_atomic_write_replaces_and_leaves_no_temp(tmp_path):
    path = tmp_path / "sub" / "out.txt"
    io.atomic_write(path, "one\n")
    io.atomic_write(path, "two\n")
    assert path.read_text() == "two\n"
    assert [p.name for p in path.parent.iterdir()] == ["out.txt"]


# --- config -------------------------------------------------------------------


def write(tmp_path, text, name="job.yaml") -> Path:
    p = tmp_path / name
    p.write_text(text)
    return p


def test_minimal_config(tmp_path):
    job = load_config(write(tmp_path, "family: hard-cutoff\nalpha: 0.1\ns: 1\n"))
    assert job.density == PowerLawHardCutoff(0.1, 1.0, 1.0)
    assert (job.chain_length, job.engine, job.tolerance, job.format) == (50, "auto", 1e-12, "csv")
    assert job.output is None


def test_family_aliases():
    for name, cls in (("jacobi", PowerLawHardCutoff), ("littleq", LogDiscretised), ("hahn", LinearDiscretised)):
        d = {"family": name, "alpha": 0.1, "s": 1.0, "delta": 2.0, "n_modes": 10}
        d = {k: v for k, v in d.items() if not (cls is not LogDiscretised and k == "delta")}
        d = {k: v for k, v in d.items() if not (cls is not LinearDiscretised and k == "n_modes")}
        assert isinstance(parse_density(d), cls)


def test_json_output_suffix_sets_format(tmp_path):
    job = load_config(write(tmp_path, "family: exp-cutoff\nalpha: 0.1\ns: 0.5\noutput: out.json\n"))
    assert job.format == "json"


def test_gapped_and_point_masses(tmp_path):
    job = load_config(write(tmp_path, """
family: gapped
segments:
  - {family: hard-cutoff, alpha: 0.1, s: 1, lo: 0.0, hi: 0.4}
  - {family: hard-cutoff, alpha: 0.1, s: 1, lo: 0.6, hi: 1.0}
"""))
    assert isinstance(job.density, Gapped)
    assert len(job.density.segments) == 2
    pm = parse_density({"family": "point-masses", "points": [[0.5, 1.0], [1.0, 2.0]]})
    assert isinstance(pm, PointMasses)


def test_tabulated_path_is_relative_to_config(tmp_path):
    (tmp_path / "data").mkdir()
    w = np.linspace(0, 1, 21)
    np.savetxt(tmp_path / "data" / "j.txt", np.column_stack([w, w]))
    job = load_config(write(tmp_path, "family: tabulated\ntable_path: data/j.txt\n"))
    assert isinstance(job.density, Tabulated)


@pytest.mark.parametrize("text, fragment", [
    ("family: hard-cutoff\nalpha: 0.1\n", "'s'"),
    ("family: nope\n", "unknown or missing family"),
    ("family: hard-cutoff\nalpha: 0.1\ns: 1\ncolour: red\n", "unknown config key"),
    ("family: hard-cutoff\nalpha: 0.1\ns: 1\ntolerance: 0.5\n", "tolerance"),
    ("family: hard-cutoff\nalpha: 0.1\ns: 1\nengine: magic\n", "engine"),
    ("family: hard-cutoff\nalpha: 0.1\ns: 1\nchain_length: 0\n", "chain_length"),
    ("family: hard-cutoff\nalpha: -1\ns: 1\n", ""),
    ("family: hard-cutoff\nalpha: x\ns: 1\n", "number"),
    ("family: tabulated\ntable_path: missing.txt\n", "not found"),
    ("family: gapped\nsegments: []\n", "segments"),
    ("family: point-masses\npoints: [1, 2]\n", "pairs"),
    ("- just\n- a list\n", "mapping"),
    ("family: [unclosed\n", ""),
])
def test_config_errors(tmp_path, text, fragment):
    with pytest.raises(ConfigError, match=fragment or None):
        load_config(write(tmp_path, text))


def test_delta_out_of_range_is_not_hidden():
    with pytest.raises((ConfigError, DeltaOutOfRange)):
        parse_density({"family": "log-discretised", "alpha": 0.1, "s": 1.0, "delta": 1.0})


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.yaml")


def test_job_config_validation():
    with pytest.raises(ConfigError):
        JobConfig(PowerLawHardCutoff(0.1, 1.0, 1.0), format="xml")
    with pytest.raises(ConfigError):
        JobConfig(PowerLawHardCutoff(0.1, 1.0, 1.0), statistics="anyon")
    assert parse_config({"family": "hard-cutoff", "alpha": 0.1, "s": 1, "statistics": "fermion"}).statistics == "fermion"
