import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mahonian import words
from mahonian.words import Position

small_words = st.lists(st.integers(1, 4), max_size=7).map(tuple)


class TestParsing:
    def test_round_trip_csv(self):
        w = (3, 5, 4, 4, 1, 1, 4, 2, 5, 3)
        assert words.parse_word(words.format_word(w)) == w

    def test_dashed_display_round_trips(self):
        w = (3, 5, 4, 4, 1, 1, 4, 2, 5, 3)
        assert words.format_blocks(w) == "3-54-41-1-42-53"
        assert words.parse_word("3-54-41-1-42-53") == w

    def test_multi_digit_letters(self):
        w = (12, 10, 3)
        assert words.parse_word(words.format_blocks(w)) == w
        assert words.parse_word("54") == (54,)

    def test_empty(self):
        assert words.parse_word("") == ()
        assert words.format_blocks(()) == ""

    @pytest.mark.parametrize("bad", ["0,1", "1,-2", "a,b"])
    def test_rejects_bad_letters(self, bad):
        with pytest.raises(ValueError):
            words.parse_word(bad)

    @given(small_words)
    def test_display_round_trip(self, w):
        assert words.parse_word(words.format_blocks(w)) == w
        assert words.parse_word(words.format_word(w)) == w


class TestReduce:
    @pytest.mark.parametrize(
        "seq,expected",
        [((8, 5, 1, 6), (4, 2, 1, 3)), ((1, 2, 3), (1, 2, 3)), ((9, 4, 7), (3, 1, 2))],
    )
    def test_examples(self, seq, expected):
        assert words.reduce(seq) == expected

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            words.reduce((1, 2, 1))

    @given(st.lists(st.integers(1, 100), max_size=8, unique=True))
    def test_matches_sort_rank_oracle(self, seq):
        order = {v: i + 1 for i, v in enumerate(sorted(seq))}
        assert words.reduce(seq) == tuple(order[v] for v in seq)


class TestDuplicateIndices:
    @pytest.mark.parametrize(
        "w,expected",
        [
            ((4, 3, 1, 4, 4, 2), (1, 1, 1, 2, 3, 1)),
            ((1, 2, 3), (1, 1, 1)),
            ((1, 1, 1), (1, 2, 3)),
        ],
    )
    def test_examples(self, w, expected):
        assert words.duplicate_indices(w) == expected


class TestDescentBlocks:
    def test_mixed_example(self):
        decomp = words.descent_blocks((4, 3, 1, 4, 4, 2))
        assert decomp.blocks == ((0, 3), (3, 4), (4, 6))
        assert decomp.positions == (
            Position.CLOSER,
            Position.INSIDER,
            Position.OPENER,
            Position.OUTSIDER,
            Position.CLOSER,
            Position.OPENER,
        )

    def test_increasing_word_is_all_outsiders(self):
        decomp = words.descent_blocks((1, 2, 3))
        assert decomp.blocks == ((0, 1), (1, 2), (2, 3))
        assert set(decomp.positions) == {Position.OUTSIDER}

    def test_four_block_example(self):
        w = (3, 6, 1, 7, 8, 4)
        blocks = [w[s:e] for s, e in words.descent_blocks(w).blocks]
        assert blocks == [(3,), (6, 1), (7,), (8, 4)]

    def test_structure_invariants(self, corpus5):
        for w in corpus5:
            decomp = words.descent_blocks(w)
            flat = [i for s, e in decomp.blocks for i in range(s, e)]
            assert flat == list(range(len(w)))
            for s, e in decomp.blocks:
                assert all(w[i] > w[i + 1] for i in range(s, e - 1))
            for (_, e), (s, _) in zip(decomp.blocks, decomp.blocks[1:]):
                assert w[e - 1] <= w[s]

    def test_positions_match_descent_roles(self, corpus5):
        # a letter is a descent top iff a descent starts at it, a descent
        # bottom iff one ends at it
        for w in corpus5:
            pos = words.positions(w)
            n = len(w)
            for i in range(n):
                is_top = i + 1 < n and w[i] > w[i + 1]
                is_bottom = i > 0 and w[i - 1] > w[i]
                assert pos[i].is_descent_top == is_top
                assert pos[i].is_descent_bottom == is_bottom

    def test_tops_equal_bottoms_equal_des(self, corpus5):
        for w in corpus5:
            pos = words.positions(w)
            tops = sum(p.is_descent_top for p in pos)
            bottoms = sum(p.is_descent_bottom for p in pos)
            assert tops == bottoms == words.des(w)


class TestEmbracing:
    def test_example_letter(self):
        w = (3, 6, 1, 7, 8, 4)
        assert words.embracing_numbers(w, "right")[3] == 1
        assert words.embracing_numbers(w, "left")[3] == 0

    def test_increasing_word(self):
        for side in ("right", "left"):
            assert words.embracing_numbers((1, 2, 3), side) == (0, 0, 0)

    def test_rejects_bad_side(self):
        with pytest.raises(ValueError):
            words.embracing_numbers((1,), "up")

    def test_strict_vs_interval_rule(self):
        # the rules differ when the letter equals an interior letter of a
        # block: 3 is inside the interval (1, 9) but no consecutive pair of
        # 9,5,3,1 straddles it strictly
        w = (3, 9, 5, 3, 1)
        assert words.embracing_numbers(w, "right")[0] == 0
        assert words.interval_embracing_numbers(w, "right")[0] == 1

    def test_weak_rule_counts_equal_tops(self):
        # block 3,1 weakly embraces a preceding 3
        w = (3, 2, 3, 1)
        assert words.embracing_numbers(w, "right")[0] == 0
        assert words.weak_embracing_numbers(w, "right")[0] == 1


class TestClassicStats:
    @pytest.mark.parametrize(
        "w,name,expected",
        [
            ((3, 6, 1, 7, 8, 4), "des", 2),
            ((1, 2, 1), "maj", 2),
            ((1, 2, 3), "inv", 0),
            ((2, 1), "maj", 1),
        ],
    )
    def test_examples(self, w, name, expected):
        assert words.classic_stat(w, name) == expected

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            words.classic_stat((1,), "foo")

    @given(small_words)
    def test_inv_matches_brute_force(self, w):
        expected = sum(
            1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j]
        )
        assert words.inv(w) == expected


class TestDefinitionalStats:
    def test_dtop_on_single_descent(self):
        # the only descent top of 2,1 has height 2
        assert words.definitional_stat((2, 1), "Dtop") == 2

    def test_res_example(self):
        # independent recount of the weak straddling pairs
        w = (3, 6, 1, 7, 8, 4)
        expected = sum(
            1
            for i in range(len(w))
            for j in range(i + 1, len(w) - 1)
            if w[j] >= w[i] > w[j + 1]
        )
        assert words.definitional_stat(w, "Res") == expected == 3

    @pytest.mark.parametrize("name", words.DEFINITIONAL_STATS)
    def test_increasing_word_is_zero(self, name):
        assert words.definitional_stat((1, 2, 3, 4), name) == 0

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            words.definitional_stat((1,), "nope")

    def test_sixteen_names(self):
        assert len(words.DEFINITIONAL_STATS) == 16

    def test_difference_decompositions(self, corpus5):
        stat = words.definitional_stat
        for w in corpus5:
            assert stat(w, "Ddif_l") == stat(w, "Dtop") - stat(w, "Dbot_l")
            assert stat(w, "Ddif_r") == stat(w, "Dtop") - stat(w, "Dbot_r")
            assert stat(w, "mad_l") == stat(w, "Ddif_l") + stat(w, "Res")
            assert stat(w, "makl_r") == stat(w, "Dbot_r") + stat(w, "Les")


class TestLetterProfiles:
    def test_fields(self):
        profiles = words.letter_profiles((4, 3, 1, 4, 4, 2))
        assert [p.value for p in profiles] == [4, 3, 1, 4, 4, 2]
        assert [p.dup_index for p in profiles] == [1, 1, 1, 2, 3, 1]
        assert profiles[1].r_embr == 1 and profiles[1].position is Position.INSIDER

    def test_right_embracing_never_increases_with_dup(self, corpus5):
        # among equal letters, later copies see no more straddling pairs
        for w in corpus5:
            by_value = {}
            for p in words.letter_profiles(w):
                by_value.setdefault(p.value, []).append(p)
            for group in by_value.values():
                group.sort(key=lambda p: p.dup_index)
                assert all(a.r_embr >= b.r_embr for a, b in zip(group, group[1:]))
