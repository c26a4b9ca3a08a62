"""CLI subcommands: verify, simulate, replay; exit codes 0/1/2."""

import socket
import subprocess
import sys
from pathlib import Path

from click.testing import CliRunner

from aljabar.cli import main

FIXTURE = Path(__file__).parent / "fixtures" / "minimal_game.jsonl"


def run_cli(*args):
    return CliRunner().invoke(main, list(args))


class TestVerify:
    def test_all_checks_pass(self):
        result = run_cli("verify")
        assert result.exit_code == 0, result.output
        assert "64/64 table entries match" in result.output
        assert "deal 13" in result.output and "deal 29" in result.output

    def test_corrupted_table_fails(self):
        result = run_cli("verify", "--corrupt")
        assert result.exit_code == 1
        assert "FAIL" in result.output

    def test_export_table(self, tmp_path):
        out = tmp_path / "table.csv"
        result = run_cli("verify", "--export-table", str(out))
        assert result.exit_code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == ",K,R,B,Y,P,O,G,W"
        assert len(lines) == 9


class TestSimulate:
    def test_deterministic_output(self, tmp_path):
        args = ("simulate", "--games", "5", "--seed", "7",
                "--policies", "random,random")
        a, b = run_cli(*args), run_cli(*args)
        assert a.exit_code == 0, a.output
        assert a.output == b.output
        assert "win_rate" in a.output

    def test_out_dir_report(self, tmp_path):
        out = tmp_path / "report"
        result = run_cli("simulate", "--games", "4", "--seed", "3",
                         "--policies", "greedy,random",
                         "--out-dir", str(out))
        assert result.exit_code == 0, result.output
        names = {p.name for p in out.iterdir()}
        assert names == {"matches.csv", "summary.csv", "game_lengths.csv",
                         "game_lengths.png", "win_rates.png"}
        assert "game,seed,turns" in (out / "matches.csv").read_text()

    def test_shade_palette_codes_in_logs(self, tmp_path):
        logs = tmp_path / "logs"
        result = run_cli("simulate", "--m", "3", "--n", "2", "--games", "1",
                         "--seed", "2", "--policies", "random,random",
                         "--log-dir", str(logs))
        assert result.exit_code == 0, result.output
        text = next(logs.iterdir()).read_text()
        assert '"LB"' in text or '"DP"' in text or '"LR"' in text

    def test_config_rejected_as_usage_error(self):
        result = run_cli("simulate", "--players", "4", "--A", "7", "--m", "2")
        assert result.exit_code == 2
        assert "at least" in result.output

    def test_unknown_policy(self):
        result = run_cli("simulate", "--policies", "clever,random")
        assert result.exit_code == 2

    def test_policy_count_mismatch(self):
        result = run_cli("simulate", "--players", "3",
                         "--policies", "random,random")
        assert result.exit_code == 2


class TestReplay:
    def test_fixture_replays_and_prints_winner(self):
        result = run_cli("replay", str(FIXTURE))
        assert result.exit_code == 0, result.output
        assert "winner(s): 0, 1, 2, 3" in result.output
        assert "turns: 4" in result.output

    def test_replay_idempotent(self):
        a = run_cli("replay", str(FIXTURE))
        b = run_cli("replay", str(FIXTURE))
        assert a.output == b.output

    def test_missing_file_is_usage_error(self):
        result = run_cli("replay", "no-such-file.jsonl")
        assert result.exit_code == 2

    def test_corrupt_file_fails_with_line(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text(FIXTURE.read_text() + "{not json\n")
        result = run_cli("replay", str(bad))
        assert result.exit_code == 1
        assert "line 13" in result.output


class TestServe:
    def test_occupied_port_reports_clear_error(self):
        blocker = socket.socket()
        blocker.bind(("127.0.0.1", 0))
        port = blocker.getsockname()[1]
        try:
            proc = subprocess.run(
                [sys.executable, "-m", "aljabar.cli", "serve",
                 "--port", str(port)],
                capture_output=True, text=True, timeout=30)
        finally:
            blocker.close()
        assert proc.returncode != 0
        err = proc.stderr + proc.stdout
        assert "address already in use" in err.lower() or "errno 98" in err.lower()
