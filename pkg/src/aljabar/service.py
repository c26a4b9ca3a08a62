"""Turn-based session service: live games over websockets plus HTTP tooling.

Each client holds one websocket; messages are single JSON objects (the
same shape as one line of the event log). Hands are public, so every
state broadcast carries the full table. Within a session all mutations
run under one asyncio lock, in arrival order; broadcasts fan out after
the write. Message kinds and payloads are documented in docs/PROTOCOL.md.

Human seats authenticate with the bearer token issued at session
creation. A disconnected human seat pauses the game on its turn until
the fallback timeout elapses, after which the greedy policy moves for
it so the table stays live.
"""

from __future__ import annotations

import asyncio
import secrets
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from starlette.staticfiles import StaticFiles

from . import engine
from . import events as ev
from .engine import GameConfig, GameState, IllegalMove
from .policies import GreedyPolicy, Policy, drive_turn, make_policy
from .simulate import seat_policy_seed

FALLBACK_POLICY = "greedy"


@dataclass
class Seat:
    player: int
    kind: str                      # "human" or a policy name
    token: str | None = None       # humans only
    policy: Policy | None = None   # bots only


@dataclass
class Session:
    id: str
    config: GameConfig
    state: GameState
    seats: list[Seat]
    log_path: Path | None
    fallback_timeout: float | None
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    seq: int = 0
    lock: asyncio.Lock = field(default_factory=asyncio.Lock)
    sockets: dict = field(default_factory=dict)     # WebSocket -> seat index | None
    flushed_events: int = 0
    fallback_task: asyncio.Task | None = None

    def seat_by_token(self, token: str) -> Seat | None:
        for seat in self.seats:
            if seat.token is not None and token == seat.token:
                return seat
        return None

    def human_connected(self, player: int) -> bool:
        return any(s == player for s in self.sockets.values())

    def summary(self) -> dict:
        return {
            "session": self.id,
            "config": {k: v for k, v in self.config.to_dict().items()
                       if k != "seed"},
            "seats": [{"player": s.player, "kind": s.kind} for s in self.seats],
            "turn": self.state.turn,
            "finished": self.state.finished,
            "created": self.created,
            "updated": self.updated,
        }


class SessionManager:
    def __init__(self, log_dir: str | Path | None = None,
                 fallback_timeout: float | None = None):
        self.sessions: dict[str, Session] = {}
        self.log_dir = Path(log_dir) if log_dir else None
        if self.log_dir:
            self.log_dir.mkdir(parents=True, exist_ok=True)
        self.fallback_timeout = fallback_timeout

    def create_session(self, config: GameConfig, seat_plan: list[str],
                       setup: dict | None = None) -> Session:
        if len(seat_plan) != config.players:
            raise engine.ConfigurationError(
                f"seat plan has {len(seat_plan)} entries for "
                f"{config.players} players")
        if setup:
            palette = config.palette
            hands = [tuple(palette.vectors_of(h)) for h in setup["hands"]]
            center = palette.vector_of(setup["center"])
            state = engine.from_setup(config, hands, center)
        else:
            state = engine.new_game(config)
        seats = []
        for player, kind in enumerate(seat_plan):
            if kind == "human":
                seats.append(Seat(player, "human", token=secrets.token_hex(16)))
            else:
                policy = make_policy(kind, seat_policy_seed(config.seed, player))
                seats.append(Seat(player, kind, policy=policy))
        session_id = uuid.uuid4().hex[:12]
        log_path = (self.log_dir / f"{session_id}.jsonl") if self.log_dir else None
        session = Session(id=session_id, config=config, state=state,
                          seats=seats, log_path=log_path,
                          fallback_timeout=self.fallback_timeout)
        self.sessions[session_id] = session
        _flush_log(session)
        return session

    def get(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None:
            raise KeyError(f"unknown session {session_id!r}")
        return session


def _flush_log(session: Session) -> None:
    if session.log_path is None:
        session.flushed_events = len(session.state.log)
        return
    new = session.state.log[session.flushed_events:]
    if not new:
        return
    with open(session.log_path, "a", encoding="utf-8") as fh:
        for event in new:
            fh.write(event.to_json() + "\n")
    session.flushed_events = len(session.state.log)


def hint_legal_moves(session: Session, player: int,
                     limit: int | None = None) -> dict:
    """Legal moves for a seat, in canonical order, plus stuck/announce flags."""
    state = session.state
    moves = engine.enumerate_moves(state, player)
    if limit is not None:
        moves = moves[:limit]
    n = state.config.n
    hand = state.hand_size(player)
    must_draw = (not state.finished and not moves
                 and state.final_round is None and hand > n)
    can_announce = (not state.finished and state.final_round is None
                    and hand <= n and player == state.turn)
    return {
        "moves": [engine.move_to_wire(mv, state.palette) for mv in moves],
        "must_draw": must_draw,
        "can_announce": can_announce,
    }


def build_app(manager: SessionManager,
              static_dir: str | Path | None = None,
              defaults: dict | None = None) -> FastAPI:
    app = FastAPI(title="aljabar session service")
    base = {"m": 2, "n": 3, "players": 2, "copies": 10}
    if defaults:
        base.update(defaults)

    # ---- HTTP tooling mirror -------------------------------------------

    @app.post("/sessions")
    async def create_session(body: dict):
        try:
            config = GameConfig(
                m=body.get("m", base["m"]), n=body.get("n", base["n"]),
                players=body.get("players", base["players"]),
                copies_per_color=body.get("copies", base["copies"]),
                seed=body.get("seed", secrets.randbits(64)))
            seats = body.get("seats") or ["human"] * config.players
            session = manager.create_session(config, seats, body.get("setup"))
        except (engine.ConfigurationError, KeyError, ValueError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        async with session.lock:
            await _run_bots(session)
            _schedule_fallback(session)
        return {
            "session": session.id,
            "config": session.config.to_dict(),
            "seats": [{"player": s.player, "kind": s.kind, "token": s.token}
                      for s in session.seats],
        }

    @app.get("/sessions")
    async def list_sessions():
        return {"sessions": [s.summary() for s in manager.sessions.values()]}

    @app.get("/sessions/{session_id}/state")
    async def session_state(session_id: str):
        try:
            session = manager.get(session_id)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return {"seq": session.seq, "state": session.state.public_state()}

    # ---- The live protocol ---------------------------------------------

    @app.websocket("/ws")
    async def websocket_endpoint(socket: WebSocket):
        await socket.accept()
        session: Session | None = None
        try:
            while True:
                try:
                    message = await socket.receive_json()
                except ValueError:
                    await _send(socket, "error",
                                session.seq if session else 0,
                                {"reason": "malformed message (not JSON)"})
                    continue
                kind = message.get("kind")
                if session is None:
                    if kind != "join":
                        await _send(socket, "error", 0,
                                    {"reason": "join first"})
                        continue
                    session = await _handle_join(manager, socket, message)
                    continue
                await _handle_message(session, socket, message)
        except WebSocketDisconnect:
            pass
        finally:
            if session is not None:
                session.sockets.pop(socket, None)
                _schedule_fallback(session)

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="ui")
    return app


async def _send(socket: WebSocket, kind: str, seq: int, payload: dict) -> None:
    await socket.send_text(ev.canonical_json(
        {"kind": kind, "seq": seq, "payload": payload}))


async def _broadcast(session: Session, kind: str, payload: dict) -> None:
    """Send to every connected client; increments the session sequence."""
    session.seq += 1
    dead = []
    for socket in list(session.sockets):
        try:
            await _send(socket, kind, session.seq, payload)
        except Exception:
            dead.append(socket)
    for socket in dead:
        session.sockets.pop(socket, None)
    session.updated = time.time()


async def _broadcast_progress(session: Session, since: int) -> None:
    """Emit engine events accumulated since ``since``, then the new state."""
    for event in session.state.log[since:]:
        await _broadcast(session, "event",
                         {"event": {"kind": event.kind, **event.data}})
    await _broadcast(session, "state", {"state": session.state.public_state()})
    if session.state.finished:
        await _broadcast(session, "game_over", {
            "winners": sorted(engine.winner(session.state)),
            "hand_sizes": [session.state.hand_size(p)
                           for p in range(session.config.players)],
        })
    _flush_log(session)
    _schedule_fallback(session)


async def _run_bots(session: Session) -> None:
    """Advance the game while a bot (or fallback) seat is to act.

    Caller must hold the session lock; broadcasts happen per turn.
    """
    state = session.state
    while not state.finished:
        seat = session.seats[state.turn]
        if seat.policy is None:
            break
        since = len(state.log)
        drive_turn(state, seat.policy)
        await _broadcast_progress(session, since)
    _flush_log(session)


def _schedule_fallback(session: Session) -> None:
    """Arm (or disarm) the move-for-disconnected-human timer."""
    if session.fallback_task is not None:
        session.fallback_task.cancel()
        session.fallback_task = None
    if session.fallback_timeout is None or session.state.finished:
        return
    seat = session.seats[session.state.turn]
    if seat.kind != "human" or session.human_connected(seat.player):
        return
    try:
        loop = asyncio.get_running_loop()
    except RuntimeError:
        return  # no loop (direct library use); fallback needs the service
    session.fallback_task = loop.create_task(
        _fallback_move(session, seat.player, session.fallback_timeout))


async def _fallback_move(session: Session, player: int, timeout: float) -> None:
    await asyncio.sleep(timeout)
    async with session.lock:
        # De-register before broadcasting: _schedule_fallback cancels
        # session.fallback_task, and cancelling *this* task mid-broadcast
        # would drop updates for connected clients.
        if session.fallback_task is asyncio.current_task():
            session.fallback_task = None
        state = session.state
        seat = session.seats[state.turn]
        if (state.finished or state.turn != player
                or seat.kind != "human" or session.human_connected(player)):
            return
        if seat.policy is None:
            seat.policy = GreedyPolicy(seat_policy_seed(session.config.seed,
                                                        player))
        since = len(state.log)
        drive_turn(state, seat.policy)
        seat.policy = None if seat.kind == "human" else seat.policy
        await _broadcast_progress(session, since)
        await _run_bots(session)


async def _handle_join(manager: SessionManager, socket: WebSocket,
                       message: dict) -> Session | None:
    payload = message.get("payload") or {}
    session_id = payload.get("session") or message.get("session")
    token = payload.get("token") or message.get("token")
    try:
        session = manager.get(session_id)
    except KeyError as exc:
        await _send(socket, "error", 0, {"reason": str(exc)})
        return None
    seat = session.seat_by_token(token) if token else None
    if token and seat is None:
        await _send(socket, "error", 0, {"reason": "unknown seat token"})
        return None
    async with session.lock:
        session.sockets[socket] = seat.player if seat else None
        await _send(socket, "hello", session.seq, {
            "session": session.id,
            "config": {k: v for k, v in session.config.to_dict().items()
                       if k != "seed"},
            "palette": session.state.palette.to_wire(),
            "seat": seat.player if seat else None,
            "seats": [{"player": s.player, "kind": s.kind}
                      for s in session.seats],
        })
        await _send(socket, "state", session.seq,
                    {"state": session.state.public_state()})
        if session.state.finished:
            await _send(socket, "game_over", session.seq, {
                "winners": sorted(engine.winner(session.state)),
                "hand_sizes": [session.state.hand_size(p)
                               for p in range(session.config.players)],
            })
        _schedule_fallback(session)
    return session


async def _handle_message(session: Session, socket: WebSocket,
                          message: dict) -> None:
    kind = message.get("kind")
    payload = message.get("payload") or {}
    seat_index = session.sockets.get(socket)

    if kind == "legal_moves":
        if seat_index is None:
            await _send(socket, "error", session.seq,
                        {"reason": "hints require a seat token"})
            return
        async with session.lock:
            await _send(socket, "legal_moves", session.seq,
                        hint_legal_moves(session, seat_index,
                                         payload.get("limit")))
        return

    if kind in ("submit_move", "announce_final"):
        if seat_index is None:
            await _send(socket, "error", session.seq,
                        {"reason": "spectators cannot act"})
            return
        async with session.lock:
            state = session.state
            since = len(state.log)
            try:
                if kind == "announce_final":
                    engine.announce_final(state, seat_index)
                    result = {"ok": True, "applied": "announce_final"}
                else:
                    result = _apply_submission(session, seat_index, payload)
            except (IllegalMove, engine.GameError, KeyError, ValueError) as exc:
                await _send(socket, "move_result", session.seq,
                            {"ok": False, "reason": str(exc)})
                if len(state.log) > since:
                    # Draws before an illegal move are irrevocable.
                    await _broadcast_progress(session, since)
                return
            await _send(socket, "move_result", session.seq, result)
            await _broadcast_progress(session, since)
            await _run_bots(session)
        return

    await _send(socket, "error", session.seq,
                {"reason": f"unknown message kind {kind!r}"})


def _apply_submission(session: Session, player: int, payload: dict) -> dict:
    state = session.state
    wire = payload.get("move") or {}
    if wire.get("type") == "draw":
        count = int(wire.get("count", 1))
        if not 1 <= count <= 25:
            raise ValueError("draw count must be between 1 and 25")
        if (state.bag_size() == 0 and state.final_round is None
                and state.hand_size(player) > state.config.n
                and not engine.enumerate_moves(state, player)):
            # Stuck with an empty bag: the engine force-starts the final
            # round so the player can pass.
            engine.resolve_stuck(state, player)
            return {"ok": True, "applied": "draw", "pieces": [],
                    "final_forced": True}
        drawn = engine.voluntary_draw(state, player, count)
        return {"ok": True, "applied": "draw",
                "pieces": state.palette.codes_of(drawn)}
    move = engine.move_from_wire(wire, state.palette)
    pre_draws = int(payload.get("pre_draws", 0))
    engine.apply_move(state, player, move, pre_draws)
    return {"ok": True, "applied": wire.get("type")}


def persist_and_replay(session: Session) -> Path:
    """Flush the session's event log to disk and return the file path."""
    if session.log_path is None:
        raise ValueError("session has no log directory configured")
    _flush_log(session)
    return session.log_path
