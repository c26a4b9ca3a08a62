"""Append-only game event log.

One JSON object per line, canonically serialized (sorted keys, no spaces)
so that two runs producing the same events produce byte-identical files.
The schema is documented in docs/PROTOCOL.md.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

# Event kinds
GAME_START = "game_start"
DEAL = "deal"
CENTER_INIT = "center_init"
DRAW = "draw"                 # bag draw into a hand (voluntary or stuck)
EXCHANGE = "exchange"
SPECTRUM = "spectrum"
PASS = "pass"
CANCELLATION = "cancellation"
FORCED_DRAW = "forced_draw"   # black/clear pieces handed to another player
FINAL_SIGNAL = "final_signal"
GAME_END = "game_end"

# Events that record a player decision; everything else is derived by the
# engine and is verified (not re-issued) during replay.
DECISION_KINDS = frozenset({DRAW, EXCHANGE, SPECTRUM, PASS})


class ReplayError(ValueError):
    """A log could not be replayed; carries the 1-based offending line."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class GameEvent:
    kind: str
    data: dict

    def to_json(self) -> str:
        payload = {"kind": self.kind, **self.data}
        return canonical_json(payload)

    @classmethod
    def from_json(cls, line: str) -> "GameEvent":
        obj = json.loads(line)
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("event line is not an object with a 'kind'")
        kind = obj.pop("kind")
        return cls(kind, obj)

    def get(self, key: str, default=None):
        return self.data.get(key, default)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_log(path: str | Path, events: Iterable[GameEvent]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for event in events:
            fh.write(event.to_json() + "\n")


def log_lines(events: Iterable[GameEvent]) -> str:
    return "".join(event.to_json() + "\n" for event in events)


def read_log(path: str | Path) -> list[GameEvent]:
    events = []
    with open(path, "r", encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                events.append(GameEvent.from_json(line))
            except (json.JSONDecodeError, ValueError) as exc:
                raise ReplayError(i, f"malformed event: {exc}") from None
    return events
