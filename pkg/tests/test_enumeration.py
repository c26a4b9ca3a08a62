"""Move enumeration against an independent brute-force oracle.

The oracle expands hands/Center into explicit piece lists and walks
itertools.combinations of every size, deduplicating by sorted tuple; the
engine's enumerator recurses over per-color counts. They must agree
exactly on every state.
"""

import random
from collections import Counter
from itertools import combinations

import pytest

from aljabar import (Exchange, GameConfig, Pass, Spectrum, spectrum_pieces,
                     sum_multiset, validate_move)
from aljabar import multiset as ms_mod
from aljabar.engine import enumerate_moves, from_setup, move_sort_key

from conftest import vectors


def brute_force_moves(state, player):
    n = state.config.n
    hand_list = ms_mod.expand(state.hands[player])
    center_list = ms_mod.expand(state.center)
    gives, takes = set(), set()
    for size in range(1, n + 1):
        gives.update(tuple(sorted(c)) for c in combinations(hand_list, size))
        takes.update(tuple(sorted(c)) for c in combinations(center_list, size))
    moves = []
    for give in gives:
        for take in takes:
            if sum_multiset(give) == sum_multiset(take):
                moves.append(Exchange(give, take))
    needed = Counter(spectrum_pieces(state.config.params))
    hand_counts = state.hands[player]
    if all(hand_counts.get(c, 0) >= k for c, k in needed.items()):
        moves.append(Spectrum())
    if not moves and state.final_round is not None:
        moves.append(Pass())
    return sorted(set(moves), key=move_sort_key)


def random_small_state(pal, rng, final_round=False):
    colors = list(pal.order)  # includes K
    config = GameConfig(m=2, n=3, players=2, copies_per_color=10,
                        seed=rng.randrange(2 ** 32))
    hand = [rng.choice(colors) for _ in range(rng.randrange(0, 7))]
    center = [rng.choice(colors) for _ in range(rng.randrange(0, 7))]
    state = from_setup(config, [(pal.vector_of("W"),), tuple(hand)],
                       pal.vector_of("G"))
    state.center = Counter(center)
    if final_round:
        state.final_round = state.round
    return state


@pytest.mark.parametrize("final_round", [False, True])
def test_oracle_agreement_on_random_states(pal23, final_round):
    rng = random.Random(0xA17ABA2 + final_round)
    for _ in range(500):
        state = random_small_state(pal23, rng, final_round)
        got = enumerate_moves(state, 1)
        expected = brute_force_moves(state, 1)
        assert got == expected

    # And every enumerated move actually validates when it is your turn.
    state = random_small_state(pal23, rng, final_round)
    for move in enumerate_moves(state, 1):
        assert validate_move(state, 1, move) is None


def test_oracle_agreement_mod3(pal32):
    rng = random.Random(99)
    colors = list(pal32.order)
    for _ in range(200):
        config = GameConfig(m=3, n=2, players=2, copies_per_color=10,
                            seed=rng.randrange(2 ** 32))
        hand = [rng.choice(colors) for _ in range(rng.randrange(0, 7))]
        center = [rng.choice(colors) for _ in range(rng.randrange(0, 7))]
        state = from_setup(config, [(pal32.vector_of("DP"),), tuple(hand)],
                           pal32.vector_of("LB"))
        state.center = Counter(center)
        assert enumerate_moves(state, 1) == brute_force_moves(state, 1)


def test_known_tiny_instances(pal23):
    config = GameConfig(players=2, seed=3)
    state = from_setup(config, [(pal23.vector_of("W"),),
                                tuple(vectors(pal23, "R"))],
                       pal23.vector_of("R"))
    moves = enumerate_moves(state, 1)
    assert moves == brute_force_moves(state, 1)
    assert len([m for m in moves if isinstance(m, Exchange)]) == len(moves)

    # hand {K} with K in the Center: the identity-for-identity swap exists.
    state2 = from_setup(config, [(pal23.vector_of("W"),),
                                 tuple(vectors(pal23, "K"))],
                        pal23.vector_of("R"))
    swaps = enumerate_moves(state2, 1)
    assert Exchange(tuple(vectors(pal23, "K")),
                    tuple(vectors(pal23, "K"))) in swaps
    assert swaps == brute_force_moves(state2, 1)


def test_sub_multiset_enumerator_is_duplicate_free(pal23):
    store = Counter(vectors(pal23, "RRRBBKW"))
    subs = list(ms_mod.iter_sub_multisets(store, 3))
    assert len(subs) == len(set(subs))
    for sub in subs:
        assert 1 <= len(sub) <= 3
        assert tuple(sorted(sub)) == sub
        assert ms_mod.contains(store, sub)
