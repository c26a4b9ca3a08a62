"""Tournament reporting: delimited output plus rendered figures.

The CSV schemas here are the stable interface for downstream analysis;
columns are documented in docs/PROTOCOL.md. Figures are written next to
the CSVs when an output directory is given.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .simulate import TournamentResult

MATCH_COLUMNS = ["game", "seed", "turns", "winners", "winner_policies",
                 "final_hands", "cancellations", "forced_draws", "final_cause"]


def matches_csv(result: TournamentResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(MATCH_COLUMNS)
    for i, rec in enumerate(result.records):
        writer.writerow([
            i, rec.seed, rec.turns,
            "|".join(str(w) for w in rec.winners),
            "|".join(rec.winner_policies),
            "|".join(str(h) for h in rec.final_hand_sizes),
            rec.total_cancellations,
            "|".join(str(f) for f in rec.forced_draws),
            rec.final_cause,
        ])
    return buf.getvalue()


def summary_csv(result: TournamentResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["policy", "seats", "win_share", "win_rate"])
    rates = result.win_rates_by_policy
    seat_shares = result.win_shares_by_seat
    for name in sorted(rates):
        seats = [i for i, p in enumerate(result.matchup) if p == name]
        share = sum(seat_shares[i] for i in seats)
        writer.writerow([name, "|".join(str(s) for s in seats),
                         f"{share:.2f}", f"{rates[name]:.4f}"])
    lengths = [rec.turns for rec in result.records]
    writer.writerow([])
    writer.writerow(["games", "avg_turns", "min_turns", "max_turns",
                     "total_cancellations"])
    writer.writerow([result.games,
                     f"{sum(lengths) / len(lengths):.2f}",
                     min(lengths), max(lengths),
                     result.total_cancellations])
    return buf.getvalue()


def lengths_csv(result: TournamentResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["turns", "games"])
    for turns in sorted(result.length_histogram):
        writer.writerow([turns, result.length_histogram[turns]])
    return buf.getvalue()


def render_figures(result: TournamentResult, out_dir: Path) -> list[Path]:
    """Game-length histogram and per-policy win rates as PNG files."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    paths = []
    lengths = [rec.turns for rec in result.records]
    fig, ax = plt.subplots(figsize=(7, 4.2))
    bins = min(40, max(lengths) - min(lengths) + 1) if len(set(lengths)) > 1 else 5
    ax.hist(lengths, bins=bins, color="#1d4ed8", edgecolor="white")
    ax.set_xlabel("turns per game")
    ax.set_ylabel("games")
    ax.set_title(f"Game length over {result.games} games "
                 f"({'+'.join(result.matchup)})")
    fig.tight_layout()
    path = out_dir / "game_lengths.png"
    fig.savefig(path, dpi=130)
    plt.close(fig)
    paths.append(path)

    rates = result.win_rates_by_policy
    fig, ax = plt.subplots(figsize=(5.5, 4.2))
    names = sorted(rates)
    ax.bar(names, [rates[n] for n in names], color="#16a34a")
    ax.set_ylim(0, 1)
    ax.set_ylabel("win rate (shared wins fractional)")
    ax.set_title("Win rate by policy")
    for i, name in enumerate(names):
        ax.text(i, rates[name] + 0.02, f"{rates[name]:.3f}", ha="center")
    fig.tight_layout()
    path = out_dir / "win_rates.png"
    fig.savefig(path, dpi=130)
    plt.close(fig)
    paths.append(path)
    return paths


def write_report(result: TournamentResult, out_dir: str | Path) -> list[Path]:
    """Write matches.csv, summary.csv, game_lengths.csv, and the figures."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in [("matches.csv", matches_csv(result)),
                       ("summary.csv", summary_csv(result)),
                       ("game_lengths.csv", lengths_csv(result))]:
        path = out / name
        path.write_text(text, encoding="utf-8")
        written.append(path)
    written.extend(render_figures(result, out))
    return written
