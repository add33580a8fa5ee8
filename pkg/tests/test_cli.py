import filecmp
import json

import pytest

from heisenkit import cli
from heisenkit.cli import ConfigError, ExperimentConfig, config_from_dict, main

SMALL = {
    "generator": {"name": "horizontal_segment", "params": {"n": 256}},
    "triples": {"mode": "mc", "samples": 20000},
    "fuzz_cases": 2000,
}


@pytest.fixture
def config(tmp_path):
    def write(doc=SMALL, name="cfg.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)
    return write


def test_defaults_validate():
    cfg = config_from_dict({"generator": {"name": "lifted_circle", "params": {"n": 128}}})
    assert isinstance(cfg, ExperimentConfig)
    assert cfg.kernel_m == 8 and cfg.alpha == 0.5


@pytest.mark.parametrize("patch,field", [
    ({"alpha": 1.5}, "alpha"),
    ({"kernel_m": 0}, "kernel_m"),
    ({"lam": 0.5}, "lam"),
    ({"eps_grid": [0.1, -1.0]}, "eps_grid"),
    ({"generator": {"name": "spiral"}}, "generator.name"),
    ({"generator": {"name": "lifted_zigzag", "params": {"n": 64, "depth": 9}}}, "generator.params.depth"),
    ({"triples": {"mode": "exact"}, "generator": {"name": "lifted_circle", "params": {"n": 512}}}, "triples.mode"),
    ({"triples": {"center": [0, 0, 0]}}, "triples.center"),
    ({"colour": "red"}, "config"),
])
def test_invalid_field_is_named(patch, field):
    with pytest.raises(ConfigError, match=field.replace(".", r"\.").replace("[", r"\[")):
        config_from_dict({**SMALL, **patch})


def test_verify_exit_zero(config, tmp_path):
    out = tmp_path / "o"
    assert main(["verify", "--config", config(), "--out", str(out)]) == 0
    doc = json.loads((out / "verify_summary.json").read_text())
    assert doc["ok"] and doc["failed"] == []
    assert (out / "verify.csv").read_text().startswith("# heisenkit seed=0 generator=horizontal_segment\n")


def test_failed_property_exit_one(config, tmp_path, monkeypatch):
    monkeypatch.setitem(cli.VERIFY_SUITES, "broken", lambda ctx: {"ok": False})
    out = tmp_path / "o"
    assert main(["verify", "--config", config(), "--out", str(out)]) == 1
    assert json.loads((out / "verify_summary.json").read_text())["failed"] == ["broken"]


def test_bad_alpha_exit_two(config, tmp_path, capsys):
    assert main(["generate", "--config", config({**SMALL, "alpha": 1.5}), "--out", str(tmp_path)]) == 2
    assert "alpha" in capsys.readouterr().err


def test_io_errors_exit_two(config, tmp_path, capsys):
    assert main(["generate", "--config", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["generate", "--config", str(bad)]) == 2
    assert "JSON" in capsys.readouterr().err


def test_argument_errors_exit_two(config):
    with pytest.raises(SystemExit) as exc:
        main(["generate", "--config", config(), "--seed", "-1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["transmogrify", "--config", config()])
    assert exc.value.code == 2


def test_seed_flag_overrides_config(config, tmp_path):
    out = tmp_path / "o"
    assert main(["generate", "--config", config(), "--seed", "0x10", "--out", str(out)]) == 0
    assert json.loads((out / "generate_summary.json").read_text())["seed"] == 16


def test_byte_identical_reruns(config, tmp_path):
    path = config({**SMALL, "generator": {"name": "lifted_circle", "params": {"n": 96}}})
    for sub in ("generate", "cubes", "beta", "sio", "curvature"):
        for d in ("a", "b"):
            assert main([sub, "--config", path, "--seed", "11", "--out", str(tmp_path / d)]) == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    match, mismatch, errors = filecmp.cmpfiles(tmp_path / "a", tmp_path / "b", names, shallow=False)
    assert mismatch == [] and errors == [] and len(match) == len(names) >= 5


def test_report_merges_summaries(config, tmp_path):
    out = tmp_path / "o"
    path = config()
    for sub in ("generate", "cubes", "report"):
        assert main([sub, "--config", path, "--out", str(out)]) == 0
    doc = json.loads((out / "summary.json").read_text())
    assert set(doc["results"]) == {"generate", "cubes"}
    assert doc["results"]["generate"]["n"] == 256
