"""The authoritative game state machine.

Setup, turn structure, move legality, cancellation processing, draw
obligations, final-round signaling, and scoring, parameterized over the
color group (Z_m)^n:

* each player is dealt m^(n+1) - m - 1 pieces from a bag of A copies of
  every non-black/clear color;
* a turn exchanges up to n pieces from hand for up to n pieces of equal
  color-sum from the Center, or plays the Spectrum (the n primaries plus
  the all-(m-1) piece for one black/clear);
* after each move, every m-tuple of one non-black/clear color in the
  Center cancels to a black/clear piece, and every other player draws
  that many black/clear pieces unless the tuple came from the mover's
  own hand;
* the final round starts when a player ends a turn with exactly one
  piece, or announces with n or fewer pieces in hand before their turn;
  the fewest pieces at the end of that rotation wins.

A GameState must only be mutated through the operations in this module,
by one writer at a time; states are plain values that can be copied and
shipped across threads, and the pure queries (validate, enumerate,
winner) are safe on snapshots.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Sequence

from . import events as ev
from . import multiset as ms
from .events import GameEvent
from .groups import (ColorVector, GroupParams, Palette, identity,
                     spectrum_pieces, standard_palette, sum_multiset)
from .rng import GameRng


class GameError(Exception):
    pass


class ConfigurationError(GameError):
    pass


class IllegalMove(GameError):
    pass


SETUP_SEEDED = "seeded"
SETUP_SCRIPTED = "scripted"

_params = lru_cache(maxsize=None)(GroupParams)


@dataclass(frozen=True)
class GameConfig:
    """Group parameters plus table parameters; owns all derived counts."""

    m: int = 2
    n: int = 3
    players: int = 2
    copies_per_color: int = 10
    seed: int = 0

    def __post_init__(self):
        GroupParams(self.m, self.n)  # validates m, n and the group-order cap
        if self.players < 2:
            raise ConfigurationError("at least 2 players are required")
        if (self.m, self.n) == (2, 3) and self.players > 4:
            raise ConfigurationError("the standard 8-color game seats 2 to 4 players")
        if self.copies_per_color < self.m * self.players:
            raise ConfigurationError(
                f"copies per color must be at least m x players = "
                f"{self.m * self.players}, got {self.copies_per_color}")
        if not 0 <= self.seed < (1 << 64):
            raise ConfigurationError("seed must be a 64-bit unsigned integer")

    @property
    def params(self) -> GroupParams:
        return _params(self.m, self.n)

    @property
    def palette(self) -> Palette:
        return standard_palette(self.params)

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "players": self.players,
                "copies": self.copies_per_color, "seed": self.seed}

    @classmethod
    def from_dict(cls, obj: dict) -> "GameConfig":
        return cls(m=obj["m"], n=obj["n"], players=obj["players"],
                   copies_per_color=obj["copies"], seed=obj["seed"])

    def with_seed(self, seed: int) -> "GameConfig":
        return replace(self, seed=seed)


def deal_size(config: GameConfig) -> int:
    """Pieces dealt to each player: m^(n+1) - m - 1 (13 in the standard game)."""
    return config.m ** (config.n + 1) - config.m - 1


def pool_spec(config: GameConfig) -> dict[ColorVector, int]:
    """A copies of each non-identity color. Black/clear is not pooled;
    it is dispensed from an unlimited supply."""
    return {v: config.copies_per_color
            for v in config.params.elements() if not v.is_identity}


# ---------------------------------------------------------------------------
# Moves

@dataclass(frozen=True)
class Exchange:
    give: tuple[ColorVector, ...]
    take: tuple[ColorVector, ...]

    def __post_init__(self):
        object.__setattr__(self, "give", ms.canonical(self.give))
        object.__setattr__(self, "take", ms.canonical(self.take))

    @property
    def is_null(self) -> bool:
        return self.give == self.take

    @property
    def net_reduction(self) -> int:
        return len(self.give) - len(self.take)


@dataclass(frozen=True)
class Spectrum:
    pass


@dataclass(frozen=True)
class Pass:
    pass


Move = Exchange | Spectrum | Pass


def move_sort_key(move: Move):
    """Canonical move ordering: exchanges by (give, take), then Spectrum, Pass."""
    if isinstance(move, Exchange):
        return (0, tuple(v.entries for v in move.give),
                tuple(v.entries for v in move.take))
    if isinstance(move, Spectrum):
        return (1,)
    return (2,)


def move_to_wire(move: Move, palette: Palette) -> dict:
    if isinstance(move, Exchange):
        return {"type": "exchange",
                "give": palette.codes_of(move.give),
                "take": palette.codes_of(move.take)}
    if isinstance(move, Spectrum):
        return {"type": "spectrum"}
    if isinstance(move, Pass):
        return {"type": "pass"}
    raise TypeError(f"not a move: {move!r}")


def move_from_wire(obj: dict, palette: Palette) -> Move:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("move must be an object with a 'type'")
    kind = obj["type"]
    if kind == "exchange":
        return Exchange(tuple(palette.vectors_of(obj.get("give", []))),
                        tuple(palette.vectors_of(obj.get("take", []))))
    if kind == "spectrum":
        return Spectrum()
    if kind == "pass":
        return Pass()
    raise ValueError(f"unknown move type {kind!r}")


@dataclass
class TurnOutcome:
    """What one move did to the table beyond the exchange itself."""

    cancellations: dict[ColorVector, int] = field(default_factory=dict)
    blacks_added_to_center: int = 0
    forced_draws_per_player: int = 0
    exempt_colors: frozenset[ColorVector] = frozenset()
    announcements: list[str] = field(default_factory=list)

    @property
    def total_cancellations(self) -> int:
        return sum(self.cancellations.values())


# ---------------------------------------------------------------------------
# Game state

class GameState:
    """Mutable table state. Hands are public; there is no hidden tier."""

    def __init__(self, config: GameConfig, setup: str = SETUP_SEEDED):
        self.config = config
        self.palette = config.palette
        self.setup = setup
        self.bag: Counter = Counter()
        self.hands: list[Counter] = [Counter() for _ in range(config.players)]
        self.center: Counter = Counter()
        self.blacks_dispensed = 0
        self.first_player = 1 % config.players
        self.turn = self.first_player
        self.round = 1
        self.final_round: int | None = None
        self.final_trigger: dict | None = None
        self.finished = False
        self.rng = GameRng(config.seed)
        self.log: list[GameEvent] = []
        self.turns_played = 0
        self.draws_made = 0
        self.canceled: Counter = Counter()
        self.initial_center_color: ColorVector | None = None

    # -- bookkeeping -------------------------------------------------------

    def _emit(self, kind: str, **data) -> GameEvent:
        event = GameEvent(kind, data)
        self.log.append(event)
        return event

    def hand_size(self, player: int) -> int:
        return ms.total(self.hands[player])

    def bag_size(self) -> int:
        return ms.total(self.bag)

    @property
    def _identity(self) -> ColorVector:
        return identity(self.config.params)

    def copy(self) -> "GameState":
        clone = GameState.__new__(GameState)
        clone.config = self.config
        clone.palette = self.palette
        clone.setup = self.setup
        clone.bag = Counter(self.bag)
        clone.hands = [Counter(h) for h in self.hands]
        clone.center = Counter(self.center)
        clone.blacks_dispensed = self.blacks_dispensed
        clone.first_player = self.first_player
        clone.turn = self.turn
        clone.round = self.round
        clone.final_round = self.final_round
        clone.final_trigger = dict(self.final_trigger) if self.final_trigger else None
        clone.finished = self.finished
        clone.rng = self.rng.clone()
        clone.log = list(self.log)
        clone.turns_played = self.turns_played
        clone.draws_made = self.draws_made
        clone.canceled = Counter(self.canceled)
        clone.initial_center_color = self.initial_center_color
        return clone

    def _counts_by_code(self, store: Counter) -> dict[str, int]:
        return {self.palette.codes[c]: k for c, k in sorted(store.items()) if k}

    def snapshot(self) -> dict:
        """Full state as a JSON-able dict; equal dicts mean bit-equal states."""
        return {
            "config": {**self.config.to_dict(), "setup": self.setup},
            "bag": self._counts_by_code(self.bag),
            "hands": [self.palette.codes_of(ms.expand(h)) for h in self.hands],
            "center": self.palette.codes_of(ms.expand(self.center)),
            "blacks_dispensed": self.blacks_dispensed,
            "turn": self.turn,
            "round": self.round,
            "first_player": self.first_player,
            "final_round": self.final_round,
            "final_trigger": self.final_trigger,
            "finished": self.finished,
            "turns_played": self.turns_played,
            "draws_made": self.draws_made,
            "canceled": self._counts_by_code(self.canceled),
            "initial_center": (self.palette.codes[self.initial_center_color]
                               if self.initial_center_color else None),
            "rng": self.rng.state(),
        }

    def snapshot_json(self) -> str:
        return ev.canonical_json(self.snapshot())

    def public_state(self) -> dict:
        """State broadcast to clients: everything visible at the table.

        The seed and generator state are withheld (they would reveal the
        order of future draws); the bag composition itself is public
        knowledge since hands, Center, and cancellations all are.
        """
        snap = self.snapshot()
        del snap["rng"]
        snap["config"] = {k: v for k, v in snap["config"].items() if k != "seed"}
        snap["bag_total"] = self.bag_size()
        return snap


# ---------------------------------------------------------------------------
# Setup

def new_game(config: GameConfig) -> GameState:
    """Deal a fresh game: hands, then one colored piece plus one black/clear
    to the Center. Player 0 is the dealer; play starts on their left."""
    pool = pool_spec(config)
    pool_total = sum(pool.values())
    need = deal_size(config) * config.players + 1
    if need > pool_total:
        raise ConfigurationError(
            f"pool of {pool_total} pieces cannot deal {deal_size(config)} to "
            f"{config.players} players plus the Center piece")
    state = GameState(config, SETUP_SEEDED)
    state.bag = Counter(pool)
    state._emit(ev.GAME_START, v=1, setup=SETUP_SEEDED, **config.to_dict())
    per_player = deal_size(config)
    for player in range(config.players):
        start = state.draws_made
        pieces = [_draw_from_bag(state) for _ in range(per_player)]
        state.hands[player] = Counter(pieces)
        state._emit(ev.DEAL, player=player,
                    pieces=state.palette.codes_of(pieces),
                    draw_indices=list(range(start, state.draws_made)))
    center_piece = _draw_from_bag(state)
    state.center = Counter({center_piece: 1, state._identity: 1})
    state.blacks_dispensed = 1
    state.initial_center_color = center_piece
    state._emit(ev.CENTER_INIT, piece=state.palette.codes[center_piece],
                draw_index=state.draws_made - 1)
    return state


def from_setup(config: GameConfig, hands: Sequence[Sequence[ColorVector]],
               center_color: ColorVector) -> GameState:
    """Build a game from an explicit (scripted) deal instead of the bag.

    Used for fixtures and teaching positions. The bag receives whatever
    the pool has left after the given hands and Center piece, so piece
    conservation holds exactly as in a random deal.
    """
    if len(hands) != config.players:
        raise ConfigurationError(f"need {config.players} hands, got {len(hands)}")
    if center_color.is_identity:
        raise ConfigurationError("the initial Center piece must be colored")
    state = GameState(config, SETUP_SCRIPTED)
    bag = Counter(pool_spec(config))
    blacks = 1  # the Center's black/clear piece
    ident = identity(config.params)
    for player, hand in enumerate(hands):
        for piece in hand:
            if piece.params != config.params:
                raise ConfigurationError("hand piece from the wrong group")
            if piece == ident:
                blacks += 1
                continue
            if bag[piece] <= 0:
                raise ConfigurationError(
                    f"scripted deal uses more {config.palette.codes[piece]} "
                    f"pieces than the pool holds")
            bag[piece] -= 1
    if bag[center_color] <= 0:
        raise ConfigurationError("no pool piece left for the Center")
    bag[center_color] -= 1
    state.bag = +bag
    state._emit(ev.GAME_START, v=1, setup=SETUP_SCRIPTED, **config.to_dict())
    for player, hand in enumerate(hands):
        state.hands[player] = Counter(hand)
        state._emit(ev.DEAL, player=player,
                    pieces=state.palette.codes_of(ms.canonical(hand)))
    state.center = Counter({center_color: 1, ident: 1})
    state.blacks_dispensed = blacks
    state.initial_center_color = center_color
    state._emit(ev.CENTER_INIT, piece=state.palette.codes[center_color])
    return state


def _draw_from_bag(state: GameState) -> ColorVector:
    total = state.bag_size()
    if total <= 0:
        raise GameError("bag is empty")
    k = state.rng.randbelow(total)
    for color in sorted(state.bag):
        count = state.bag[color]
        if k < count:
            if count == 1:
                del state.bag[color]
            else:
                state.bag[color] = count - 1
            state.draws_made += 1
            return color
        k -= count
    raise AssertionError("bag walk exhausted")  # unreachable


# ---------------------------------------------------------------------------
# Legality

def _check_actor(state: GameState, player: int) -> str | None:
    if state.finished:
        return "game is finished"
    if player != state.turn:
        return f"not player {player}'s turn (player {state.turn} to act)"
    return None


def validate_move(state: GameState, player: int, move: Move) -> str | None:
    """None when the move is legal, otherwise a human-readable rejection."""
    bad_actor = _check_actor(state, player)
    if bad_actor:
        return bad_actor
    n = state.config.n
    hand = state.hands[player]
    if isinstance(move, Exchange):
        if not 1 <= len(move.give) <= n:
            return f"must give between 1 and {n} pieces, got {len(move.give)}"
        if not 1 <= len(move.take) <= n:
            return f"must take between 1 and {n} pieces, got {len(move.take)}"
        if not ms.contains(hand, move.give):
            return "give pieces are not all in hand"
        if not ms.contains(state.center, move.take):
            return "take pieces are not all in the Center"
        if sum_multiset(move.give) != sum_multiset(move.take):
            return "give and take do not have the same color sum"
        return None
    if isinstance(move, Spectrum):
        needed = spectrum_pieces(state.config.params)
        if not ms.contains(hand, needed):
            codes = "+".join(state.palette.codes_of(needed))
            return f"hand lacks the full combination {codes}"
        return None
    if isinstance(move, Pass):
        if state.final_round is None:
            return "may only pass during the final round"
        if _has_exchange_or_spectrum(state, player):
            return "a legal move exists; pass is not allowed"
        return None
    return f"unknown move {move!r}"


def _subsets_by_sum(store: Counter, max_size: int,
                    m: int) -> dict[tuple[int, ...], list[tuple]]:
    """Nonempty sub-multisets of size <= max_size, grouped by their group
    sum (as a plain entry tuple). Subsets come out canonically sorted."""
    colors = sorted(store)
    out: dict[tuple[int, ...], list[tuple]] = {}

    def rec(idx: int, left: int, acc: tuple, acc_sum: tuple[int, ...]):
        if idx == len(colors):
            if acc:
                out.setdefault(acc_sum, []).append(acc)
            return
        color = colors[idx]
        rec(idx + 1, left, acc, acc_sum)
        entries = color.entries
        cur, s = acc, acc_sum
        for _ in range(min(store[color], left)):
            cur = cur + (color,)
            s = tuple((a + b) % m for a, b in zip(s, entries))
            rec(idx + 1, left - len(cur) + len(acc), cur, s)

    if colors:
        width = len(colors[0].entries)
        rec(0, max_size, (), (0,) * width)
    return out


def _has_exchange_or_spectrum(state: GameState, player: int) -> bool:
    hand = state.hands[player]
    if ms.contains(hand, spectrum_pieces(state.config.params)):
        return True
    n, m = state.config.n, state.config.m
    take_sums = _subsets_by_sum(state.center, n, m).keys()
    return any(s in take_sums for s in _subsets_by_sum(hand, n, m))


def enumerate_moves(state: GameState, player: int) -> list[Move]:
    """Every legal move for ``player``, in canonical order.

    Exchanges are distinct (give, take) multiset pairs with equal sums and
    sizes 1..n; Spectrum appears when the hand holds the full combination;
    Pass appears only in the final round when nothing else is legal.
    """
    if state.finished:
        return []
    n, m = state.config.n, state.config.m
    hand = state.hands[player]
    moves: list[Move] = []
    gives = _subsets_by_sum(hand, n, m)
    takes = _subsets_by_sum(state.center, n, m)
    for total, give_list in gives.items():
        take_list = takes.get(total)
        if not take_list:
            continue
        for give in give_list:
            for take in take_list:
                moves.append(Exchange(give, take))
    if ms.contains(hand, spectrum_pieces(state.config.params)):
        moves.append(Spectrum())
    if not moves and state.final_round is not None:
        moves.append(Pass())
    moves.sort(key=move_sort_key)
    return moves


# ---------------------------------------------------------------------------
# Mutations

def voluntary_draw(state: GameState, player: int,
                   count: int = 1) -> list[ColorVector]:
    """Draw up to ``count`` random pieces from the bag into the hand.

    Permitted any time before the player's exchange; never forced in the
    final round. Capped silently by the bag size. Stuck players drawing
    under rule obligation go through the same operation, so the log does
    not distinguish why a piece was drawn.
    """
    bad_actor = _check_actor(state, player)
    if bad_actor:
        raise IllegalMove(bad_actor)
    if count < 0:
        raise IllegalMove("draw count cannot be negative")
    drawn = []
    for _ in range(count):
        if state.bag_size() == 0:
            break
        index = state.draws_made
        piece = _draw_from_bag(state)
        state.hands[player][piece] += 1
        state._emit(ev.DRAW, player=player, piece=state.palette.codes[piece],
                    draw_index=index)
        drawn.append(piece)
    return drawn


def process_cancellations(center: Counter,
                          placed_from_hand: Iterable[ColorVector],
                          ) -> tuple[Counter, TurnOutcome]:
    """Cancel every m-tuple of a non-black/clear color in the Center.

    Each canceled tuple is replaced by one black/clear piece. A color is
    exempt from forcing draws when the mover placed at least m copies of
    it from their own hand this turn. Black/clear pieces never cancel,
    so replacement pieces cannot chain.
    """
    placed = Counter(placed_from_hand)
    out = Counter(center)
    outcome = TurnOutcome()
    cancellations: dict[ColorVector, int] = {}
    exempt = set()
    blacks = 0
    forced = 0
    for color in sorted(out):
        if color.is_identity:
            continue
        m = color.m
        tuples = out[color] // m
        if not tuples:
            continue
        out[color] -= tuples * m
        if out[color] == 0:
            del out[color]
        blacks += tuples
        cancellations[color] = tuples
        if placed.get(color, 0) >= m:
            exempt.add(color)
        else:
            forced += tuples
    if blacks:
        ident = identity(next(iter(cancellations)).params)
        out[ident] += blacks
    outcome.cancellations = cancellations
    outcome.blacks_added_to_center = blacks
    outcome.forced_draws_per_player = forced
    outcome.exempt_colors = frozenset(exempt)
    return out, outcome


def apply_move(state: GameState, player: int, move: Move,
               pre_draws: int = 0) -> TurnOutcome:
    """Execute one full turn: optional draws, the move, cancellations,
    forced draws, end-game signals, and the turn advance.

    Draws are irrevocable: if the move turns out to be illegal after the
    draws, the draws stand and IllegalMove is raised without consuming
    the turn.
    """
    bad_actor = _check_actor(state, player)
    if bad_actor:
        raise IllegalMove(bad_actor)
    if pre_draws:
        voluntary_draw(state, player, pre_draws)
    reason = validate_move(state, player, move)
    if reason:
        raise IllegalMove(reason)

    palette = state.palette
    hand = state.hands[player]
    ident = state._identity
    placed: tuple[ColorVector, ...] = ()

    if isinstance(move, Exchange):
        ms.remove(hand, move.give)
        ms.insert(state.center, move.give)
        ms.remove(state.center, move.take)
        ms.insert(hand, move.take)
        placed = move.give
        state._emit(ev.EXCHANGE, player=player,
                    give=palette.codes_of(move.give),
                    take=palette.codes_of(move.take))
    elif isinstance(move, Spectrum):
        pieces = ms.canonical(spectrum_pieces(state.config.params))
        ms.remove(hand, pieces)
        ms.insert(state.center, pieces)
        if state.center.get(ident, 0) > 0:
            ms.remove(state.center, [ident])
            black_from = "center"
        else:
            state.blacks_dispensed += 1
            black_from = "supply"
        hand[ident] += 1
        placed = pieces
        state._emit(ev.SPECTRUM, player=player, give=palette.codes_of(pieces),
                    take=[palette.codes[ident]], black_from=black_from)
    elif isinstance(move, Pass):
        state._emit(ev.PASS, player=player)
    else:
        raise IllegalMove(f"unknown move {move!r}")

    outcome = TurnOutcome()
    if not isinstance(move, Pass):
        state.center, outcome = process_cancellations(state.center, placed)
        for color in sorted(outcome.cancellations):
            tuples = outcome.cancellations[color]
            state.canceled[color] += tuples * color.m
            state._emit(ev.CANCELLATION, color=palette.codes[color],
                        tuples=tuples, exempt=color in outcome.exempt_colors)
        # Replacement black/clear pieces come from the open supply.
        state.blacks_dispensed += outcome.blacks_added_to_center
        forced = outcome.forced_draws_per_player
        if forced:
            for other in range(state.config.players):
                if other == player:
                    continue
                state.hands[other][ident] += forced
                state.blacks_dispensed += forced
                state._emit(ev.FORCED_DRAW, player=other, count=forced, by=player)

    if state.hand_size(player) == 1 and state.final_round is None:
        _signal_final(state, player, "one_piece")
        outcome.announcements.append("one_piece")

    state.turns_played += 1
    nxt = (state.turn + 1) % state.config.players
    if nxt == state.first_player:
        if state.final_round is not None:
            state.finished = True
            state._emit(ev.GAME_END,
                        winners=sorted(winner(state)),
                        hand_sizes=[state.hand_size(p)
                                    for p in range(state.config.players)],
                        turns=state.turns_played)
        else:
            state.round += 1
    state.turn = nxt
    return outcome


def _signal_final(state: GameState, player: int, cause: str) -> None:
    state.final_round = state.round
    state.final_trigger = {"player": player, "cause": cause}
    state._emit(ev.FINAL_SIGNAL, player=player, cause=cause, round=state.round)


def resolve_stuck(state: GameState, player: int) -> list[ColorVector]:
    """Forced draws for a player with more than n pieces and no legal move.

    Draws one piece at a time until a move exists. If the bag empties
    first, the final round is force-activated so the player can pass and
    the game can terminate. A no-op if a legal move already exists.
    """
    bad_actor = _check_actor(state, player)
    if bad_actor:
        raise IllegalMove(bad_actor)
    if state.final_round is not None:
        raise IllegalMove("no forced draws in the final round; pass instead")
    if state.hand_size(player) <= state.config.n:
        raise IllegalMove("not applicable: the player may announce the final "
                          "round instead of drawing")
    drawn: list[ColorVector] = []
    while not _has_exchange_or_spectrum(state, player):
        if state.bag_size() == 0:
            _signal_final(state, player, "bag_exhausted")
            break
        drawn.extend(voluntary_draw(state, player, 1))
    return drawn


def announce_final(state: GameState, player: int) -> None:
    """Declare the current round final, before taking the turn.

    Requires n or fewer pieces in hand and no final round already active.
    """
    bad_actor = _check_actor(state, player)
    if bad_actor:
        raise IllegalMove(bad_actor)
    if state.final_round is not None:
        raise IllegalMove("the final round was already signaled")
    if state.hand_size(player) > state.config.n:
        raise IllegalMove(
            f"announcing requires {state.config.n} or fewer pieces in hand")
    _signal_final(state, player, "announcement")


def winner(state: GameState) -> set[int]:
    """Players with the fewest pieces in hand; ties share the victory."""
    if not state.finished:
        raise GameError("winner is defined only for a finished game")
    sizes = [state.hand_size(p) for p in range(state.config.players)]
    best = min(sizes)
    return {p for p, size in enumerate(sizes) if size == best}


# ---------------------------------------------------------------------------
# Invariant checking (used by the simulation harness and tests)

def check_invariants(state: GameState) -> None:
    """Raise GameError on any violated table invariant."""
    config = state.config
    ident = state._identity
    if state.initial_center_color is None:
        raise GameError("game has no initial Center piece")
    # Center color-sum is constant for the whole game.
    m, n = config.m, config.n
    acc = [0] * n
    for color, count in state.center.items():
        for i, e in enumerate(color.entries):
            acc[i] += count * e
    if tuple(a % m for a in acc) != state.initial_center_color.entries:
        raise GameError(
            f"Center sum {tuple(a % m for a in acc)} drifted from the "
            f"initial piece {state.initial_center_color!r}")
    # Per-color piece conservation. The initial Center piece is drawn from
    # the bag, so every non-black/clear color totals exactly A wherever its
    # pieces sit (bag, hands, Center, or the discard recorded in `canceled`).
    for color in state.palette.order:
        if color == ident:
            continue
        have = (state.bag.get(color, 0)
                + sum(h.get(color, 0) for h in state.hands)
                + state.center.get(color, 0)
                + state.canceled.get(color, 0))
        expect = config.copies_per_color
        if have != expect:
            raise GameError(
                f"conservation broken for {state.palette.codes[color]}: "
                f"{have} accounted for, expected {expect}")
    # Black/clear pieces on the table all came from the supply.
    blacks = (state.center.get(ident, 0)
              + sum(h.get(ident, 0) for h in state.hands))
    if blacks != state.blacks_dispensed:
        raise GameError(f"{blacks} black/clear pieces visible but "
                        f"{state.blacks_dispensed} dispensed")
    if state.bag.get(ident, 0):
        raise GameError("bag must never contain black/clear pieces")
    # After cancellation, no non-identity color may reach m in the Center.
    for color, count in state.center.items():
        if color != ident and count >= config.m:
            raise GameError(
                f"Center holds {count} x {state.palette.codes[color]} after "
                f"cancellation (limit {config.m - 1})")
