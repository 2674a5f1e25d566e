import json
import shutil
from pathlib import Path

import pytest

from randconv.cli import run
from randconv.config import ConfigError, parse_config
from randconv.reports import read_csv_report, read_json_report, strip_header

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def write_config(tmp_path, raw):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(raw))
    return path


def jp_raw(**extra):
    raw = {"pairs": [{"N": 4, "B": [0, 2]}], "model": {"kind": "periodic-word", "word": [1]},
           "output_dir": "out", "seed": 0}
    raw.update(extra)
    return raw


def test_check_admissible_jp(tmp_path):
    assert run(["check-admissible", str(CONFIGS / "quarter_cantor.json"), "--out", str(tmp_path)]) == 0
    header, body = read_json_report(tmp_path / "check-admissible.json")
    assert body[0]["L_found"] == [0, 1] and body[0]["admissible"]
    assert header["subcommand"] == "check-admissible"
    assert set(header) == {"config_sha256", "seed", "version", "subcommand", "generated_at"}
    assert (tmp_path / "check-admissible.png").stat().st_size > 0


def test_spectrum_verify_jp(tmp_path):
    args = ["spectrum-verify", str(CONFIGS / "quarter_cantor.json"), "--out", str(tmp_path),
            "--level", "6", "--csv"]
    assert run(args) == 0
    _, body = read_json_report(tmp_path / "spectrum-verify.json")
    assert body["verdict"] == "pass" and body["size"] == 64
    assert body["Q_min"] >= 1 - 1e-9 and body["Q_max"] <= 1 + 1e-9
    _, rows = read_csv_report(tmp_path / "spectrum-verify.csv")
    assert len(rows) == 1024


def test_spectrum_verify_without_spectrum_set(tmp_path):
    cfg = write_config(tmp_path, jp_raw(pairs=[{"N": 3, "B": [0, 1]}]))
    assert run(["spectrum-verify", str(cfg), "--level", "2"]) == 1
    _, body = read_json_report(tmp_path / "out" / "spectrum-verify.json")
    assert body["verdict"] == "fail"


@pytest.mark.parametrize("raw", [
    jp_raw(pairs=[]),
    {k: v for k, v in jp_raw().items() if k != "pairs"},
    jp_raw(pairs=[{"N": 1, "B": [0, 1]}]),
    jp_raw(pairs=[{"N": 4, "B": [0, 2], "L": [0, 2]}]),
    jp_raw(model={"kind": "iid-bernoulli", "prob": [["1", "3"], ["1", "3"]], "seed": 1}),
    jp_raw(model={"kind": "periodic-word", "word": [1, 2]}),
    jp_raw(extra_key=1),
])
def test_invalid_configs_exit_2(tmp_path, raw):
    assert run(["check-admissible", str(write_config(tmp_path, raw))]) == 2


def test_missing_config_exit_2(tmp_path):
    assert run(["truncate", str(tmp_path / "nope.json")]) == 2


def test_atom_cap_exit_3(tmp_path):
    cfg = write_config(tmp_path, jp_raw(depth_caps={"atoms": 16}))
    assert run(["truncate", str(cfg), "--level", "5"]) == 3
    assert run(["spectrum-verify", str(cfg), "--level", "5"]) == 3


def test_truncate_and_ft_grid(tmp_path):
    cfg = write_config(tmp_path, jp_raw(grid={"points": 16, "range": [0, 4]}))
    assert run(["truncate", str(cfg), "--level", "2"]) == 0
    _, rows = read_csv_report(tmp_path / "out" / "truncate.csv")
    assert [(r["atom_numerator"], r["atom_denominator"]) for r in rows] == [
        ("0", "1"), ("1", "8"), ("1", "2"), ("5", "8")]
    assert run(["ft-grid", str(cfg), "--level", "1"]) == 0
    _, rows = read_csv_report(tmp_path / "out" / "ft-grid.csv")
    assert len(rows) == 16 and abs(float(rows[4]["abs"])) < 1e-15  # xi = 1


def test_conditions_exit_codes(tmp_path):
    out = str(tmp_path)
    assert run(["conditions", str(CONFIGS / "quarter_cantor.json"), "--out", out]) == 0
    _, body = read_json_report(tmp_path / "conditions.json")
    assert [r["name"] for r in body] == ["existence_series", "rbc_sum", "growth_sup",
                                         "uniform_bound", "gcd_analysis"]
    # the tight family has an unbounded digit ratio, which is a "fails"
    assert run(["conditions", str(CONFIGS / "tight_noncompact.json"), "--out", out]) == 1
    cfg = write_config(tmp_path, {"pairs": [{"N": 4, "B": [0, 2]}], "family": {"kind": "periodic"},
                                  "model": {"kind": "periodic-word", "word": [1]}, "output_dir": "o"})
    assert run(["conditions", str(cfg)]) == 0


def test_conditions_strict_on_inconclusive(tmp_path, monkeypatch):
    # config-expressible families are always decided, so inject an undecided report
    import randconv.cli as cli
    from randconv.criteria import ConditionReport, INCONCLUSIVE

    monkeypatch.setattr(cli, "run_all", lambda sys, depth: [ConditionReport("x", [1], INCONCLUSIVE, 1)])
    cfg = str(write_config(tmp_path, jp_raw()))
    assert run(["conditions", cfg]) == 0
    assert run(["conditions", cfg, "--strict"]) == 1


def test_sampling_commands(tmp_path):
    cfg = str(CONFIGS / "random_dimension.json")
    out = str(tmp_path)
    assert run(["sample", cfg, "--out", out, "--n", "1000"]) == 0
    _, rows = read_csv_report(tmp_path / "sample.csv")
    assert sum(float(r["frequency_float"]) for r in rows) == pytest.approx(1.0)
    assert run(["recurrence", cfg, "--out", out, "--target", "1,2", "--horizon", "1000"]) == 0
    _, rows = read_csv_report(tmp_path / "recurrence.csv")
    assert [r["j"] for r in rows] == ["1", "2"]
    assert run(["dimension", cfg, "--out", out]) == 0
    _, body = read_json_report(tmp_path / "dimension.json")
    assert body["s"] == ["3", "4"] and body["exact"] is True
    assert run(["solve-dimension", cfg, "--out", out]) == 0
    _, body = read_json_report(tmp_path / "solve-dimension.json")
    assert body["p"] == [["1", "3"], ["2", "3"]]
    assert run(["solve-dimension", cfg, "--out", out, "--s", "1/3", "--ivp-base", "2"]) == 0
    _, body = read_json_report(tmp_path / "solve-dimension.json")
    assert body["pairs"][0]["N"] == 16 and body["dim_of_p"] == ["1", "3"]
    assert run(["solve-dimension", cfg, "--out", out, "--s", "1/5"]) == 2


def test_recurrence_needs_target(tmp_path):
    assert run(["recurrence", str(write_config(tmp_path, jp_raw()))]) == 2


def test_tail_diagnostic_cli(tmp_path):
    assert run(["tail-diagnostic", str(CONFIGS / "tail_unbounded.json"), "--out", str(tmp_path)]) == 0
    _, rows = read_csv_report(tmp_path / "tail-diagnostic.csv")
    assert len(rows) == 20 and float(rows[-1]["dist_to_one"]) < 0.01


def test_explicit_prefix_too_short_exit_2(tmp_path):
    cfg = write_config(tmp_path, jp_raw(model={"kind": "explicit-prefix", "word": [1, 1]}))
    assert run(["truncate", str(cfg), "--level", "3"]) == 2


def test_reports_deterministic(tmp_path):
    for sub, extra in (("truncate", []), ("sample", ["--n", "5000"]), ("conditions", [])):
        a, b = tmp_path / "a", tmp_path / "b"
        for d in (a, b):
            shutil.rmtree(d, ignore_errors=True)
            run([sub, str(CONFIGS / "random_dimension.json"), "--out", str(d), *extra])
        for f in a.iterdir():
            if f.suffix in (".json", ".csv"):
                assert strip_header(f) == strip_header(b / f.name), f.name
            else:
                assert f.read_bytes() == (b / f.name).read_bytes(), f.name


def test_parse_config_rationals():
    cfg = parse_config({"pairs": [{"N": 4, "B": [0, 1]}, {"N": 2, "B": [0, 1]}],
                        "model": {"kind": "iid-bernoulli", "prob": ["1/3", ["2", "3"]]},
                        "dimension": {"p": [1, 0]}, "output_dir": "x", "seed": 5})
    assert cfg.model.seed == 5 and cfg.model.alphabet_bound == 2
    assert cfg.dimension_p.entries == (1, 0)
    with pytest.raises(ConfigError):
        parse_config({"pairs": [{"N": 4, "B": [0, 1]}], "grid": {"range": [1, 0]}, "output_dir": "x"})
