import json
import math

import numpy as np
import pytest

from src.cli import main, parse_config
from src.constants import DEFAULT_INNER_RESOLUTION, DEFAULT_OUTER_RESOLUTION, DEFAULT_SAMPLES, DEFAULT_SEED
from src.utils import resolve_n_jobs, round_significant, to_json_ready


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_defaults():
    config = parse_config(["prob"])
    assert config.command == "prob"
    assert config.outer_resolution == DEFAULT_OUTER_RESOLUTION
    assert config.inner_resolution == DEFAULT_INNER_RESOLUTION
    assert config.samples == DEFAULT_SAMPLES and config.seed == DEFAULT_SEED
    assert config.sidecar is True and config.json is False and config.threads is None


def test_flags_reach_config():
    config = parse_config(["mc", "--samples", "123", "--seed", "7", "--streams", "3", "-v", "--json"])
    assert (config.samples, config.seed, config.streams) == (123, 7, 3)
    assert config.verbose and config.json


def test_degrees_conversion():
    config = parse_config(["frame", "--gamma", "60", "--degrees", "--out", "x.pgm"])
    assert config.gamma_radians == pytest.approx(math.pi / 3)


def test_parser_is_built_from_argument_dataclasses():
    from transformers import HfArgumentParser

    from src.cli import build_parser

    assert isinstance(build_parser(), HfArgumentParser)
    config = parse_config(["frame", "--gamma", "1.2", "--output_path", "a.pgm", "--no_sidecar", "--verbose"])
    assert config.output_path == "a.pgm" and config.sidecar is False and config.verbose is True
    assert parse_config(["prob", "--outer_resolution", "64"]).outer_resolution == 64


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nope"],
        ["prob", "--bogus"],
        ["prob", "--outer-resolution", "abc"],
        ["prob", "--outer-resolution", "1"],
        ["mc", "--samples", "0"],
        ["frame", "--gamma", "1.2"],
        ["frame", "--out", "x.pgm"],
        ["frame", "--gamma", "2.0", "--out", "x.pgm"],
        ["frame", "--gamma", "90", "--degrees", "--out", "x.pgm"],
        ["quad", "--nodes", "3"],
    ],
)
def test_invalid_arguments_exit_one(capsys, argv):
    code, payload = _run(capsys, argv)
    assert code == 1 and payload is None


def test_frame_command(tmp_path, capsys):
    target = tmp_path / "hyper.pgm"
    code, payload = _run(capsys, ["frame", "--gamma", "0.5", "--points", "64", "--out", str(target), "--json"])
    assert code == 0
    assert payload["negative_cells"] == 0 and payload["negative_fraction"] == 0.0
    assert payload["path"] == str(target) and target.read_bytes().startswith(b"P5\n64 64\n255\n")
    assert payload["sidecar"] == str(tmp_path / "hyper.json")
    assert len(payload["sha256"]) == 64


def test_frame_without_sidecar(tmp_path, capsys):
    target = tmp_path / "f.pgm"
    code, payload = _run(capsys, ["frame", "--gamma", "1.3", "--points", "64", "-o", str(target), "--no-sidecar"])
    assert code == 0 and payload["sidecar"] is None and payload["negative_cells"] > 0
    assert not (tmp_path / "f.json").exists()


def test_frame_unwritable_path(tmp_path, capsys):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    code, payload = _run(capsys, ["frame", "--gamma", "1.2", "--points", "32", "--out", str(blocker / "f.pgm")])
    assert code == 1 and payload is None


def test_constants_command(capsys):
    code, payload = _run(capsys, ["constants", "--tables", "4", "--inner-resolution", "64"])
    assert code == 0
    assert payload["gamma_crit"] == pytest.approx(1.15, abs=1e-2)
    assert payload["bb_bound"] == round_significant(math.atan(24 / 7))
    table = payload["table"]
    assert len(table) == 4
    assert table[0]["mu_lower"] is None and table[0]["mu_upper"] is None
    assert all(row["mu_lower"] <= row["mu_upper"] for row in table[1:])


def test_quad_command(capsys):
    code, payload = _run(capsys, ["quad", "--nodes", "16"])
    assert code == 0
    assert payload["method"] == "quadrature" and payload["nodes"] == 16
    assert payload["lower"] is None and payload["upper"] is None
    assert payload["estimate"] == pytest.approx(0.7867, abs=1e-3)


def test_prob_command(capsys):
    code, payload = _run(
        capsys, ["prob", "--outer-resolution", "16", "--inner-resolution", "16", "--threads", "1"]
    )
    assert code == 0
    assert payload["method"] == "riemann-certified"
    assert payload["lower"] <= payload["estimate"] <= payload["upper"]
    assert payload["lower"] <= 0.7867 <= payload["upper"]


def test_mc_command(capsys):
    code, payload = _run(capsys, ["mc", "--samples", "2000", "--seed", "5"])
    assert code == 0
    assert payload["samples"] == 2000 and payload["seed"] == 5
    assert 0.7 < payload["p_hat"] < 0.87


def test_verify_command(capsys):
    code, payload = _run(capsys, ["verify", "--verify-samples", "500", "--seed", "3"])
    assert code == 0 and payload["ok"] is True


def test_failed_verification_exits_two(monkeypatch, capsys):
    from src import cli
    from src.verify import CheckResult, VerifyReport

    monkeypatch.setattr(cli, "run_verification", lambda samples, seed: VerifyReport(samples, seed, [CheckResult("x", 1, 1)]))
    code, payload = _run(capsys, ["verify"])
    assert code == 2 and payload["ok"] is False


def test_compact_output(capsys):
    main(["quad", "--nodes", "8", "--json"])
    out = capsys.readouterr().out
    assert out.count("\n") == 1


def test_bad_thread_env_exits_one(monkeypatch, capsys):
    monkeypatch.setenv("STI_THREADS", "many")
    code, payload = _run(capsys, ["prob", "--outer-resolution", "8", "--inner-resolution", "8"])
    assert code == 1 and payload is None


def test_resolve_n_jobs(monkeypatch):
    assert resolve_n_jobs() == -1
    monkeypatch.setenv("STI_THREADS", "3")
    assert resolve_n_jobs() == 3
    assert resolve_n_jobs(2) == 2
    assert resolve_n_jobs(0) == -1
    monkeypatch.setenv("STI_THREADS", "x")
    with pytest.raises(ValueError):
        resolve_n_jobs()
    with pytest.raises(ValueError):
        resolve_n_jobs(-1)


def test_json_number_format():
    assert round_significant(math.pi) == 3.14159265359
    assert round_significant(0.0) == 0.0
    assert to_json_ready({"x": np.float64(float("nan")), "y": np.arange(2), "z": (np.int64(3), True)}) == {
        "x": None,
        "y": [0, 1],
        "z": [3, True],
    }
