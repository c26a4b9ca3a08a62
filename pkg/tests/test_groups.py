"""Color arithmetic: the defining combinations, axioms, palettes, traces."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aljabar import (ColorVector, DimensionMismatch, GroupParams,
                     UnsupportedParams, add, addition_table,
                     addition_table_csv, fano_lines, identity, inverse,
                     primaries, reduce_trace, spectrum_pieces,
                     standard_palette, sum_multiset)
from aljabar.verification import REFERENCE_ORDER_23, REFERENCE_TABLE_23

from conftest import vectors


class TestAdd:
    def test_red_plus_blue_is_purple(self, pal23):
        assert add(pal23.vector_of("R"), pal23.vector_of("B")) == pal23.vector_of("P")

    def test_identity_is_neutral(self, pal23):
        k = pal23.vector_of("K")
        for v in pal23.order:
            assert add(v, k) == v

    def test_mod3_componentwise(self):
        a = ColorVector(3, (1, 2))
        b = ColorVector(3, (2, 2))
        assert add(a, b) == ColorVector(3, (0, 1))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            add(ColorVector(2, (1, 0, 0)), ColorVector(2, (1, 0)))
        with pytest.raises(DimensionMismatch):
            add(ColorVector(2, (1, 0)), ColorVector(3, (1, 0)))

    def test_operator_sugar(self, pal23):
        r, b = pal23.vector_of("R"), pal23.vector_of("B")
        assert r + b == pal23.vector_of("P")
        assert -r == r  # self-inverse when m=2


class TestInverse:
    def test_green_is_self_inverse(self, pal23):
        g = pal23.vector_of("G")
        assert inverse(g) == g

    def test_identity(self, p23):
        assert inverse(identity(p23)) == identity(p23)

    def test_mod3_negation(self):
        assert inverse(ColorVector(3, (1, 2))) == ColorVector(3, (2, 1))

    def test_cancels_everywhere(self, p32):
        for v in p32.elements():
            assert add(v, inverse(v)) == identity(p32)


class TestSumMultiset:
    def test_green_white(self, pal23):
        assert sum_multiset(vectors(pal23, "GW")) == pal23.vector_of("R")

    def test_empty_is_identity(self, p23):
        assert sum_multiset([], p23) == identity(p23)
        with pytest.raises(ValueError):
            sum_multiset([])

    def test_three_piece_combinations(self, pal23):
        assert sum_multiset(vectors(pal23, "OPW")) == pal23.vector_of("R")
        assert sum_multiset(vectors(pal23, "RBP")) == pal23.vector_of("K")

    def test_order_independent(self, pal23):
        pieces = vectors(pal23, "RBYWOG")
        for perm in itertools.permutations(pieces):
            assert sum_multiset(perm) == sum_multiset(pieces)


class TestAdditionTable:
    def test_matches_reference(self, pal23):
        order = [pal23.vector_of(c) for c in REFERENCE_ORDER_23]
        for i, a in enumerate(order):
            for j, b in enumerate(order):
                assert pal23.code_of(add(a, b)) == REFERENCE_TABLE_23[i][j]

    def test_symmetric(self, pal32):
        table = addition_table(pal32)
        size = len(pal32.order)
        for i in range(size):
            for j in range(size):
                assert table[i][j] == table[j][i]

    def test_identity_row_reproduces_header(self, pal23):
        table = addition_table(pal23)
        assert table[0] == list(pal23.order)

    def test_csv_export(self, pal23):
        csv_text = addition_table_csv(pal23)
        lines = csv_text.strip().split("\n")
        assert lines[0] == ",K,R,B,Y,P,O,G,W"
        assert len(lines) == 9
        # row B, column Y -> G
        row_b = lines[3].split(",")
        assert row_b[0] == "B"
        assert row_b[4] == "G"


class TestGroupAxioms:
    @pytest.mark.parametrize("m,n", [(2, 3), (3, 2)])
    def test_exhaustive_associativity(self, m, n):
        params = GroupParams(m, n)
        elems = list(params.elements())
        for a, b, c in itertools.product(elems, repeat=3):
            assert add(add(a, b), c) == add(a, add(b, c))

    def test_closure(self, p23):
        universe = set(p23.elements())
        for a, b in itertools.product(universe, repeat=2):
            assert add(a, b) in universe

    def test_closure_exhaustive_larger_group(self):
        # Exhaustive closure/identity stays feasible up to a few hundred
        # elements; (2,8) has 256.
        params = GroupParams(2, 8)
        universe = set(params.elements())
        ident = identity(params)
        for a in universe:
            assert add(a, ident) == a
        for a, b in itertools.product(universe, repeat=2):
            assert add(a, b) in universe

    def test_self_inverse_iff_m_equals_2(self):
        for v in GroupParams(2, 4).elements():
            assert add(v, v) == identity(GroupParams(2, 4))
        p32 = GroupParams(3, 2)
        assert any(add(v, v) != identity(p32) for v in p32.elements())

    def test_m_tuple_cancellation(self):
        for params in (GroupParams(2, 3), GroupParams(3, 2), GroupParams(5, 1)):
            for v in params.elements():
                assert sum_multiset([v] * params.m) == identity(params)

    def test_spectrum_identity(self):
        for params in (GroupParams(2, 3), GroupParams(2, 4), GroupParams(3, 2),
                       GroupParams(4, 2)):
            assert sum_multiset(spectrum_pieces(params)) == identity(params)
            assert len(spectrum_pieces(params)) == params.n + 1


@given(st.data())
@settings(max_examples=300, deadline=None)
def test_random_associativity_larger_groups(data):
    m = data.draw(st.integers(min_value=2, max_value=6))
    n = data.draw(st.integers(min_value=1, max_value=5))
    entry = st.integers(min_value=0, max_value=m - 1)
    vec = st.tuples(*([entry] * n)).map(lambda e: ColorVector(m, e))
    a, b, c = data.draw(vec), data.draw(vec), data.draw(vec)
    assert add(add(a, b), c) == add(a, add(b, c))
    assert add(a, b) == add(b, a)


class TestPalette:
    def test_standard_names(self, pal23):
        assert pal23.name_of(pal23.vector_of("W")) == "white"
        assert pal23.vector_of("W") == ColorVector(2, (1, 1, 1))
        assert pal23.code_of(ColorVector(2, (0, 0, 0))) == "K"
        assert pal23.name_of(ColorVector(2, (0, 0, 0))) == "black/clear"

    def test_shade_palette(self, pal32):
        assert pal32.name_of(ColorVector(3, (2, 2))) == "dark purple"
        assert pal32.name_of(ColorVector(3, (0, 1))) == "light blue"
        assert pal32.name_of(ColorVector(3, (1, 0))) == "light red"
        assert len(pal32.order) == 9

    def test_smallest_group(self):
        pal = standard_palette(GroupParams(2, 1))
        assert len(pal.order) == 2
        assert pal.code_of(ColorVector(2, (0,))) == "K"
        assert pal.code_of(ColorVector(2, (1,))) == "C1"

    def test_generic_names_are_systematic(self):
        pal = standard_palette(GroupParams(4, 2))
        assert pal.name_of(ColorVector(4, (3, 1))) == "C(3,1)"
        assert len(set(pal.codes.values())) == 16

    def test_wire_format_round_trips(self, pal23):
        wire = pal23.to_wire()
        assert wire["order"][0] == "K"
        assert wire["table"][1][2] == "P"          # R + B
        assert wire["entries"]["W"] == [1, 1, 1]
        assert set(wire["swatches"]) == set(wire["names"])


class TestPrimaries:
    def test_standard(self, p23, pal23):
        assert primaries(p23) == vectors(pal23, "RYB")

    def test_unit_vectors(self):
        assert primaries(GroupParams(2, 4)) == [
            ColorVector(2, (1, 0, 0, 0)), ColorVector(2, (0, 1, 0, 0)),
            ColorVector(2, (0, 0, 1, 0)), ColorVector(2, (0, 0, 0, 1))]
        assert primaries(GroupParams(3, 2)) == [
            ColorVector(3, (1, 0)), ColorVector(3, (0, 1))]


class TestFanoLines:
    def test_structure(self, p23, pal23):
        lines = fano_lines(p23)
        assert len(lines) == 7
        assert frozenset(vectors(pal23, "RBP")) in lines
        assert frozenset(vectors(pal23, "GOP")) in lines
        ident = identity(p23)
        counts = {}
        for line in lines:
            assert len(line) == 3
            assert sum_multiset(sorted(line)) == ident
            for v in line:
                counts[v] = counts.get(v, 0) + 1
        assert all(c == 3 for c in counts.values())
        assert len(counts) == 7

    def test_unsupported_params(self, p32):
        with pytest.raises(UnsupportedParams):
            fano_lines(p32)


class TestReduceTrace:
    def test_yellow_orange(self, pal23):
        trace = reduce_trace(vectors(pal23, "YO"), pal23)
        assert trace.final == pal23.vector_of("R")
        intermediates = [step.after for step in trace.steps]
        assert tuple(sorted(vectors(pal23, "RYY"))) in intermediates

    def test_identity_singleton(self, pal23):
        trace = reduce_trace(vectors(pal23, "K"), pal23)
        assert trace.steps == ()
        assert trace.final == pal23.vector_of("K")

    def test_three_colors(self, pal23):
        trace = reduce_trace(vectors(pal23, "YPG"), pal23)
        assert trace.final == pal23.vector_of("R")

    def test_sum_preserved_per_step(self, pal23):
        trace = reduce_trace(vectors(pal23, "WWOGYP"), pal23)
        expected = sum_multiset(vectors(pal23, "WWOGYP"))
        for step in trace.steps:
            assert sum_multiset(step.before, pal23.params) == expected
            assert sum_multiset(step.after, pal23.params) == expected
        assert trace.final == expected

    def test_empty_rejected(self, pal23):
        with pytest.raises(ValueError):
            reduce_trace([], pal23)

    def test_render_mentions_codes(self, pal23):
        text = reduce_trace(vectors(pal23, "YO"), pal23).render(pal23)
        assert "sum = R" in text

    @given(st.data())
    @settings(max_examples=400, deadline=None)
    def test_trace_final_equals_sum(self, data):
        m = data.draw(st.integers(min_value=2, max_value=4))
        n = data.draw(st.integers(min_value=1, max_value=4))
        params = GroupParams(m, n)
        palette = standard_palette(params)
        entry = st.integers(min_value=0, max_value=m - 1)
        vec = st.tuples(*([entry] * n)).map(lambda e: ColorVector(m, e))
        pieces = data.draw(st.lists(vec, min_size=1, max_size=12))
        trace = reduce_trace(pieces, palette)
        assert trace.final == sum_multiset(pieces)

    def test_trace_final_equals_sum_ten_thousand(self):
        # Seeded sweep across group shapes, multiset sizes up to 12.
        from aljabar.rng import GameRng
        rng = GameRng(0x7ACE)
        shapes = [(2, 3), (2, 4), (3, 2), (4, 2), (5, 1)]
        for i in range(10_000):
            m, n = shapes[i % len(shapes)]
            params = GroupParams(m, n)
            palette = standard_palette(params)
            size = 1 + rng.randbelow(12)
            pieces = [ColorVector(m, tuple(rng.randbelow(m) for _ in range(n)))
                      for _ in range(size)]
            assert reduce_trace(pieces, palette).final == sum_multiset(pieces)
