"""Bot policies: determinism, uniformity, the greedy objective, the driver."""

from collections import Counter

import pytest

from aljabar import (Exchange, GameConfig, GreedyPolicy, Pass, RandomPolicy,
                     Spectrum, run_match, tournament, validate_move)
from aljabar.engine import check_invariants, enumerate_moves, from_setup
from aljabar.policies import drive_turn, make_policy

from conftest import vectors


def small_state(pal, hand, center_color="R", other="W", config=None):
    config = config or GameConfig(players=2, seed=1)
    return from_setup(config, [tuple(vectors(pal, other)),
                               tuple(vectors(pal, hand))],
                      pal.vector_of(center_color))


class TestRandomPolicy:
    def test_singleton_choice(self, pal23):
        state = small_state(pal23, "P", center_color="P")
        moves = enumerate_moves(state, 1)
        non_null = [m for m in moves
                    if not (isinstance(m, Exchange) and m.is_null)]
        assert len(non_null) == 1
        assert RandomPolicy(7).choose(state, 1, moves) == non_null[0]

    def test_deterministic_per_seed(self, pal23):
        state = small_state(pal23, "RKK")
        moves = enumerate_moves(state, 1)
        picks_a = [RandomPolicy(s).choose(state, 1, moves) for s in range(20)]
        picks_b = [RandomPolicy(s).choose(state, 1, moves) for s in range(20)]
        assert picks_a == picks_b
        assert len(set(picks_a)) > 1

    def test_uniform_within_three_sigma(self, pal23):
        state = small_state(pal23, "RKK")
        moves = enumerate_moves(state, 1)
        non_null = [m for m in moves
                    if not (isinstance(m, Exchange) and m.is_null)]
        assert len(non_null) == 5
        counts = Counter()
        for i in range(10_000):
            counts[RandomPolicy(seed=i).choose(state, 1, moves)] += 1
        expected = 10_000 / 5
        sigma = (10_000 * 0.2 * 0.8) ** 0.5
        for move in non_null:
            assert abs(counts[move] - expected) <= 3 * sigma, (
                f"{move} drawn {counts[move]} times")

    def test_never_picks_null_when_alternatives_exist(self, pal23):
        state = small_state(pal23, "RKK")
        moves = enumerate_moves(state, 1)
        for i in range(200):
            choice = RandomPolicy(i).choose(state, 1, moves)
            assert not (isinstance(choice, Exchange) and choice.is_null)


class TestGreedyPolicy:
    def test_prefers_spectrum_over_small_exchange(self, pal23):
        # Best plain exchange nets +1 (two for one); Spectrum nets +3.
        state = small_state(pal23, "RBYW", center_color="G")
        choice = GreedyPolicy(0).choose(state, 1, enumerate_moves(state, 1))
        assert choice == Spectrum()

    def test_prefers_reduction_direction(self, pal23):
        # Both P -> {R,B} and {R,B} -> P style trades exist; shedding wins.
        state = small_state(pal23, "PRBK", center_color="P")
        apply = Exchange(tuple(vectors(pal23, "RB")), tuple(vectors(pal23, "PK")))
        from aljabar import apply_move
        apply_move(state, 1, apply)          # center now {R, B}
        state.turn = 1
        moves = enumerate_moves(state, 1)    # hand {P, K, P?}
        choice = GreedyPolicy(0).choose(state, 1, moves)
        assert choice is not None
        reduction = len(choice.give) - len(choice.take)
        assert reduction == max(
            len(m.give) - len(m.take) for m in moves if isinstance(m, Exchange))

    def test_reducing_move_beats_null(self, pal23):
        # Hand {G, K}: null K-for-K exists; give {G,K} take {G}... also null
        # variants; the only reducing move is give {G, K} take {G}.
        state = small_state(pal23, "GK", center_color="G")
        moves = enumerate_moves(state, 1)
        choice = GreedyPolicy(0).choose(state, 1, moves)
        assert choice == Exchange(tuple(vectors(pal23, "GK")),
                                  tuple(vectors(pal23, "G")))

    def test_maximizes_cancellations_at_equal_reduction(self, pal32):
        # In (3,2), give size is capped at 2, so the two 2-for-1 trades of
        # the LB sum are the whole +1 tier: DB+DB (completes a DB triple,
        # one cancellation) versus LR+RP (cancels nothing).
        config = GameConfig(m=3, n=2, players=2, copies_per_color=10, seed=1)
        lb, db = pal32.vector_of("LB"), pal32.vector_of("DB")
        state = from_setup(config,
                           [(db, db, pal32.vector_of("LR"),
                             pal32.vector_of("RP")),
                            (lb, db, pal32.vector_of("DP"),
                             pal32.vector_of("DP"))],
                           lb)
        from aljabar import apply_move
        apply_move(state, 1, Exchange((lb, db), (pal32.vector_of("K"),)))
        assert state._counts_by_code(state.center) == {"DB": 1, "LB": 2}
        moves = enumerate_moves(state, 0)
        from aljabar.policies import _move_metrics
        cancelling = Exchange((db, db), (lb,))
        plain = Exchange((pal32.vector_of("LR"), pal32.vector_of("RP")), (lb,))
        assert cancelling in moves and plain in moves
        assert _move_metrics(state, 0, cancelling) == (1, 1, 1)
        assert _move_metrics(state, 0, plain) == (1, 0, 1)
        assert GreedyPolicy(0).choose(state, 0, moves) == cancelling

    def test_choice_scores_best_by_exhaustive_scoring(self, pal23):
        # On arbitrary mid-game states, the choice's (reduction, cancels,
        # -taken) must equal the maximum over every candidate move.
        from aljabar import new_game
        from aljabar.policies import _move_metrics, _non_null
        config = GameConfig(players=2, copies_per_color=10, seed=424242)
        state = new_game(config)
        policy = GreedyPolicy(3)
        checked = 0
        for _ in range(40):
            if state.finished:
                break
            player = state.turn
            moves = enumerate_moves(state, player)
            candidates = [m for m in _non_null(moves)
                          if not isinstance(m, Pass)]
            choice = policy.choose(state, player, moves, may_draw=False)
            if candidates:
                best = max((_move_metrics(state, player, m)[0],
                            _move_metrics(state, player, m)[1],
                            -_move_metrics(state, player, m)[2])
                           for m in candidates)
                got = _move_metrics(state, player, choice)
                assert (got[0], got[1], -got[2]) == best
                checked += 1
            drive_turn(state, policy)
        assert checked > 5


class TestDriveTurn:
    def test_policy_moves_always_validate(self, pal23):
        config = GameConfig(players=3, copies_per_color=10, seed=77)
        from aljabar import new_game
        state = new_game(config)
        policies = [make_policy("random", s) for s in (1, 2, 3)]
        for _ in range(30):
            if state.finished:
                break
            drive_turn(state, policies[state.turn])
            check_invariants(state)

    def test_stuck_bot_draws_and_moves(self, pal23):
        from aljabar import apply_move
        state = small_state(pal23, "G", other="RRRR",
                            config=GameConfig(players=2, seed=11),
                            center_color="G")
        apply_move(state, 1, Exchange(tuple(vectors(pal23, "G")),
                                      tuple(vectors(pal23, "GK"))))
        assert enumerate_moves(state, 0) == []
        before = state.hand_size(0)
        drive_turn(state, RandomPolicy(5))
        assert state.turns_played == 2
        # Drew at least one piece, then made a move.
        assert state.draws_made >= 1
        check_invariants(state)


class TestRunMatch:
    def test_reproducible(self):
        config = GameConfig(players=2, seed=0)
        a = run_match(config, ["random", "random"], seed=31337)
        b = run_match(config, ["random", "random"], seed=31337)
        assert a == b
        assert a.turns >= 4
        assert a.winners

    def test_winner_has_minimal_hand(self):
        config = GameConfig(players=3, seed=0)
        rec = run_match(config, ["random", "greedy", "random"], seed=5)
        best = min(rec.final_hand_sizes)
        assert all(rec.final_hand_sizes[w] == best for w in rec.winners)

    def test_per_turn_reduction_bounded(self):
        config = GameConfig(players=2, seed=0)
        rec = run_match(config, ["greedy", "greedy"], seed=12)
        sizes = [[13, 13]] + rec.hand_sizes_per_turn
        for before, after in zip(sizes, sizes[1:]):
            for b, a in zip(before, after):
                assert b - a <= 3

    def test_match_record_fields(self):
        config = GameConfig(players=2, seed=0)
        rec = run_match(config, ["greedy", "random"], seed=8)
        assert rec.policy_names == ["greedy", "random"]
        assert rec.turns == len(rec.hand_sizes_per_turn)
        assert len(rec.forced_draws) == 2
        assert rec.final_cause in ("one_piece", "announcement", "bag_exhausted")


class TestTournament:
    def test_win_rates_sum_to_one(self):
        config = GameConfig(players=2, seed=0)
        result = tournament(config, ["random", "random"], 25, base_seed=3)
        assert sum(result.win_rates_by_policy.values()) == pytest.approx(1.0)
        assert sum(result.length_histogram.values()) == 25

    def test_reproducible_bit_exact(self):
        config = GameConfig(players=2, seed=0)
        a = tournament(config, ["greedy", "random"], 10, base_seed=42)
        b = tournament(config, ["greedy", "random"], 10, base_seed=42)
        assert a.records == b.records

    def test_greedy_beats_random(self):
        config = GameConfig(players=2, seed=0)
        result = tournament(config, ["greedy", "random"], 40, base_seed=7)
        assert result.win_rates_by_policy["greedy"] > 0.5

    def test_matchup_arity_checked(self):
        config = GameConfig(players=2, seed=0)
        with pytest.raises(ValueError):
            tournament(config, ["random"], 5, base_seed=1)
        with pytest.raises(ValueError):
            tournament(config, ["random", "random"], 0, base_seed=1)
