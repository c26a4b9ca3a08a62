"""Replay: rebuild a game from its event log and verify every line.

Replay re-executes the logged *decisions* (draws, exchanges, Spectrum,
passes, announcements) through the engine and checks that every event the
engine regenerates - including derived ones like cancellations, forced
draws, and the game end - matches the log byte for byte. Any divergence,
truncation, or malformed line raises ReplayError with its line number.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from . import engine
from . import events as ev
from .engine import GameConfig, GameState
from .events import GameEvent, ReplayError


def replay_events(events: Sequence[GameEvent]) -> GameState:
    if not events:
        raise ReplayError(1, "empty log (missing game_start)")
    head = events[0]
    if head.kind != ev.GAME_START:
        raise ReplayError(1, f"expected game_start, found {head.kind!r}")
    try:
        config = GameConfig.from_dict(head.data)
    except (KeyError, TypeError, engine.ConfigurationError) as exc:
        raise ReplayError(1, f"bad game_start: {exc}") from None
    setup = head.get("setup", engine.SETUP_SEEDED)

    if setup == engine.SETUP_SEEDED:
        state = engine.new_game(config)
    elif setup == engine.SETUP_SCRIPTED:
        state = _rebuild_scripted(config, events)
    else:
        raise ReplayError(1, f"unknown setup {setup!r}")

    verified = 0
    palette = state.palette

    def sync() -> None:
        nonlocal verified
        while verified < len(state.log):
            if verified >= len(events):
                raise ReplayError(
                    len(events) + 1,
                    f"log ends early; expected {state.log[verified].to_json()}")
            got = state.log[verified].to_json()
            want = events[verified].to_json()
            if got != want:
                raise ReplayError(verified + 1,
                                  f"event mismatch: log has {want}, "
                                  f"replay produced {got}")
            verified += 1

    sync()
    while verified < len(events):
        event = events[verified]
        line = verified + 1
        try:
            _apply_decision(state, event, palette)
        except ReplayError:
            raise
        except (engine.GameError, KeyError, ValueError, TypeError) as exc:
            raise ReplayError(line, f"cannot apply {event.kind}: {exc}") from None
        sync()
    return state


def _apply_decision(state: GameState, event: GameEvent, palette) -> None:
    kind = event.kind
    if kind == ev.DRAW:
        engine.voluntary_draw(state, event.data["player"], 1)
        return
    if kind in (ev.EXCHANGE, ev.SPECTRUM, ev.PASS):
        player = event.data["player"]
        if kind == ev.EXCHANGE:
            move = engine.Exchange(
                tuple(palette.vectors_of(event.data["give"])),
                tuple(palette.vectors_of(event.data["take"])))
        elif kind == ev.SPECTRUM:
            move = engine.Spectrum()
        else:
            move = engine.Pass()
        engine.apply_move(state, player, move)
        return
    if kind == ev.FINAL_SIGNAL:
        cause = event.get("cause")
        player = event.data["player"]
        if cause == "announcement":
            engine.announce_final(state, player)
            return
        if cause == "bag_exhausted":
            if state.bag_size() != 0:
                raise ValueError("bag_exhausted signal but the bag is not empty")
            engine._signal_final(state, player, cause)
            return
        # one_piece signals are derived by apply_move and consumed by sync().
        raise ValueError(f"unexpected final_signal cause {cause!r}")
    raise ValueError(f"derived event out of place")


def _rebuild_scripted(config: GameConfig, events: Sequence[GameEvent]) -> GameState:
    """Reconstruct a scripted deal from its own deal/center_init events."""
    palette = config.palette
    hands = []
    cursor = 1
    for player in range(config.players):
        if cursor >= len(events) or events[cursor].kind != ev.DEAL:
            raise ReplayError(cursor + 1, f"expected deal for player {player}")
        deal = events[cursor]
        if deal.get("player") != player:
            raise ReplayError(cursor + 1, "deal events out of order")
        hands.append(tuple(palette.vectors_of(deal.data["pieces"])))
        cursor += 1
    if cursor >= len(events) or events[cursor].kind != ev.CENTER_INIT:
        raise ReplayError(cursor + 1, "expected center_init after the deals")
    center = palette.vector_of(events[cursor].data["piece"])
    try:
        return engine.from_setup(config, hands, center)
    except engine.ConfigurationError as exc:
        raise ReplayError(cursor + 1, str(exc)) from None


def replay_file(path: str | Path) -> GameState:
    return replay_events(ev.read_log(path))
