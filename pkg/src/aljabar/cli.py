"""Command-line entry point.

Subcommands: ``verify`` (arithmetic self-checks), ``simulate`` (seeded
bot tournaments with CSV/figure reports), ``serve`` (the live session
service), and ``replay`` (re-run and verify an event log).

Exit codes: 0 success, 1 verification/validation failure, 2 usage error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .engine import ConfigurationError, GameConfig
from .events import ReplayError
from .groups import GroupParams, addition_table_csv, standard_palette
from .policies import POLICIES
from .report import render_figures, lengths_csv, matches_csv, summary_csv
from .simulate import tournament
from .verification import run_verification


@click.group()
@click.version_option(package_name="aljabar")
def main():
    """Al-Jabar: color-arithmetic game engine over (Z_m)^n."""


def _game_config(m, n, players, copies, seed) -> GameConfig:
    try:
        return GameConfig(m=m, n=n, players=players,
                          copies_per_color=copies, seed=seed)
    except (ConfigurationError, ValueError) as exc:
        raise click.UsageError(str(exc))


@main.command()
@click.option("--export-table", type=click.Path(dir_okay=False, path_type=Path),
              default=None, help="Also write the (2,3) addition table as CSV.")
@click.option("--corrupt", is_flag=True, hidden=True,
              help="Corrupt one expected entry (exercises the failure path).")
def verify(export_table: Path | None, corrupt: bool):
    """Check the color arithmetic against the published game values."""
    results = run_verification(corrupt=corrupt)
    failed = False
    for result in results:
        mark = "ok " if result.ok else "FAIL"
        click.echo(f"[{mark}] {result.name}: {result.detail}")
        failed = failed or not result.ok
    if export_table is not None:
        palette = standard_palette(GroupParams(2, 3))
        export_table.write_text(addition_table_csv(palette), encoding="utf-8")
        click.echo(f"addition table written to {export_table}")
    if failed:
        sys.exit(1)


@main.command()
@click.option("--m", default=2, show_default=True, help="Modulus of each entry.")
@click.option("--n", default=3, show_default=True, help="Vector length.")
@click.option("--A", "copies", default=10, show_default=True,
              help="Copies of each non-black/clear color in the pool.")
@click.option("--players", default=2, show_default=True)
@click.option("--games", default=100, show_default=True)
@click.option("--seed", default=0, show_default=True,
              help="Base seed; every game derives its own seed from it.")
@click.option("--policies", default="random,random", show_default=True,
              help="Comma-separated policy per seat "
                   f"({', '.join(sorted(POLICIES))}).")
@click.option("--log-dir", type=click.Path(file_okay=False, path_type=Path),
              default=None, help="Write one event log per game here.")
@click.option("--out-dir", type=click.Path(file_okay=False, path_type=Path),
              default=None,
              help="Write matches/summary/length CSVs and PNG figures here.")
def simulate(m, n, copies, players, games, seed, policies, log_dir, out_dir):
    """Run a seeded bot tournament and print its statistics as CSV."""
    config = _game_config(m, n, players, copies, seed)
    matchup = [p.strip() for p in policies.split(",") if p.strip()]
    if len(matchup) == 1:
        matchup = matchup * players
    if len(matchup) != players:
        raise click.UsageError(
            f"--policies names {len(matchup)} seats but --players is {players}")
    for name in matchup:
        if name not in POLICIES:
            raise click.UsageError(f"unknown policy {name!r}; "
                                   f"available: {', '.join(sorted(POLICIES))}")
    if games < 1:
        raise click.UsageError("--games must be at least 1")
    result = tournament(config, matchup, games, base_seed=seed, log_dir=log_dir)
    click.echo(summary_csv(result), nl=False)
    click.echo()
    click.echo(lengths_csv(result), nl=False)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "matches.csv").write_text(matches_csv(result), encoding="utf-8")
        (out_dir / "summary.csv").write_text(summary_csv(result), encoding="utf-8")
        (out_dir / "game_lengths.csv").write_text(lengths_csv(result),
                                                  encoding="utf-8")
        figures = render_figures(result, out_dir)
        click.echo(f"report written to {out_dir} "
                   f"({', '.join(p.name for p in figures)})")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8732, show_default=True)
@click.option("--log-dir", type=click.Path(file_okay=False, path_type=Path),
              default=None, help="Persist one event log per session here.")
@click.option("--m", default=2, show_default=True)
@click.option("--n", default=3, show_default=True)
@click.option("--A", "copies", default=10, show_default=True)
@click.option("--players", default=2, show_default=True)
@click.option("--fallback-timeout", default=None, type=float,
              help="Seconds before the greedy policy moves for a "
                   "disconnected human seat (default: wait forever).")
@click.option("--static-dir", type=click.Path(file_okay=False, path_type=Path),
              default=None, help="Serve the web client from this directory.")
def serve(host, port, log_dir, m, n, copies, players, fallback_timeout,
          static_dir):
    """Host live games over websockets (plus an HTTP tooling mirror)."""
    import uvicorn

    from .service import SessionManager, build_app

    _game_config(m, n, players, copies, 0)  # validate the defaults early
    manager = SessionManager(log_dir=log_dir, fallback_timeout=fallback_timeout)
    defaults = {"m": m, "n": n, "players": players, "copies": copies}
    if static_dir is None and Path("frontend/dist").is_dir():
        static_dir = Path("frontend/dist")
    if static_dir is not None:
        click.echo(f"serving web client from {static_dir}")
    app = build_app(manager, static_dir=static_dir, defaults=defaults)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except OSError as exc:
        raise click.ClickException(f"cannot listen on {host}:{port}: {exc}")


@main.command()
@click.argument("log_file", type=click.Path(exists=True, dir_okay=False,
                                            path_type=Path))
def replay(log_file: Path):
    """Re-run an event log, verifying every line, and print the outcome."""
    from .engine import winner
    from .replay import replay_file

    try:
        state = replay_file(log_file)
    except ReplayError as exc:
        raise click.ClickException(f"replay failed: {exc}")
    from . import multiset as ms

    palette = state.palette
    click.echo(f"events: {len(state.log)}; turns: {state.turns_played}; "
               f"rounds: {state.round}")
    for player in range(state.config.players):
        pieces = " ".join(palette.codes_of(ms.expand(state.hands[player])))
        click.echo(f"player {player}: {state.hand_size(player)} pieces "
                   f"[{pieces}]")
    if state.finished:
        click.echo(f"winner(s): {', '.join(str(w) for w in sorted(winner(state)))}")
    else:
        click.echo("game not finished; log verified up to its last event")


if __name__ == "__main__":
    main()
