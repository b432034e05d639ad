from __future__ import annotations

import json

import pandas as pd
import pytest

from clients.cli.app import build_parser, main
from clients.cli.services.service_registry import ServiceRegistry
from services.study_service import ProfileRunConfig, StudyConfig, write_config

COMMANDS = ["profile", "simulate", "sharp", "expansion-residual", "compat-check", "spectrum", "converge", "report"]


def test_registry_lists_every_command():
    registry = ServiceRegistry()
    assert [h.command for h in registry.handlers()] == COMMANDS
    assert registry.get_handler("unknown") is None
    assert all(registry.get_handler(c).command == c for c in COMMANDS)


def test_parser_accepts_shared_flags():
    parser = build_parser(ServiceRegistry())
    args = parser.parse_args(["converge", "--config", "study.env", "--out-dir", "out", "--threads", "3"])
    assert (args.command, args.config, args.out_dir, args.threads) == ("converge", "study.env", "out", 3)
    assert args.verbose is False


def test_no_command_prints_help(capsys):
    assert main([]) == 0
    assert "converge" in capsys.readouterr().out


def test_profile_command_writes_csv(tmp_path):
    config = write_config(ProfileRunConfig(z_max=6.0, nodes=601), str(tmp_path / "profile.env"))
    assert main(["profile", "--config", config, "--out-dir", str(tmp_path / "out")]) == 0
    frame = pd.read_csv(tmp_path / "out" / "profile.csv")
    assert len(frame) == 601


def test_invalid_config_exits_with_one(tmp_path, capsys):
    path = tmp_path / "bad.env"
    path.write_text("z_max=6.0\nnot_a_key=1\n", encoding="utf-8")
    assert main(["profile", "--config", str(path)]) == 1
    assert "not_a_key" in capsys.readouterr().err

    assert main(["profile", "--config", str(tmp_path / "missing.env")]) == 1


def test_report_command(tmp_path):
    assert main(["report"]) == 1
    assert main(["report", "--out-dir", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / StudyConfig.SUMMARY_NAME).read_text(encoding="utf-8"))
    assert summary["rows"] == []


@pytest.mark.slow
def test_spectrum_command_with_fixed_bound(tmp_path):
    config = tmp_path / "spectrum.env"
    config.write_text("form=q0\neps_list=0.2,0.1\ncheck_refinement=false\nk_res=4\n", encoding="utf-8")
    code = main(["spectrum", "--config", str(config), "--bound", "100", "--out-dir", str(tmp_path)])
    assert code in (0, 1)
    frame = pd.read_csv(tmp_path / "spectrum.csv")
    assert list(frame["eps"]) == [0.2, 0.1]
    assert frame["bound_ok"].all()
