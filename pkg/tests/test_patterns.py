import pytest
from hypothesis import given
from hypothesis import strategies as st

from mahonian import patterns, words
from mahonian.patterns import (
    BUILTIN_NAMES,
    DTOP_VARIANTS,
    PatternError,
    StatCombo,
    VincularPattern,
    builtin,
    count_occurrences,
    count_occurrences_reference,
    count_restricted,
    eval_combo,
    format_combo,
    format_pattern,
    parse_combo,
    parse_pattern,
)

small_words = st.lists(st.integers(1, 4), max_size=7).map(tuple)

POOL = [
    parse_pattern(t)
    for t in (
        "[21]", "[11]", "[12]", "21", "2[31]", "[31]2", "1[32]", "3[21]",
        "[32]1", "[23]1", "[22]1", "[21]1", "1[21]", "[21]2", "2[21]", "231",
        "[13]2", "2211",
    )
]


class TestParsing:
    @pytest.mark.parametrize(
        "text,letters,adjacency",
        [
            ("2[31]", (2, 3, 1), 2),
            ("[21]2", (2, 1, 2), 1),
            ("231", (2, 3, 1), None),
            ("[21]", (2, 1), 1),
            ("[22]1", (2, 2, 1), 1),
        ],
    )
    def test_examples(self, text, letters, adjacency):
        p = parse_pattern(text)
        assert p.letters == letters
        assert p.adjacency == adjacency

    @pytest.mark.parametrize(
        "bad",
        ["31", "2[41]", "[213]", "[2]1", "2[31][21]", "[21", "2]1[", "", "a[21]", "2[30]"],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(PatternError):
            parse_pattern(bad)

    @pytest.mark.parametrize("p", POOL)
    def test_format_round_trip(self, p):
        assert parse_pattern(format_pattern(p)) == p

    def test_adjacency_bounds(self):
        with pytest.raises(PatternError):
            VincularPattern((2, 1), adjacency=2)


class TestCounting:
    def test_classical_example(self):
        assert count_occurrences(parse_pattern("231"), (3, 4, 1, 5, 6, 2)) == 7

    def test_vincular_example(self):
        assert count_occurrences(parse_pattern("2[31]"), (3, 4, 1, 5, 6, 2)) == 4

    def test_no_descent(self):
        assert count_occurrences(parse_pattern("[21]"), (1, 2, 3)) == 0

    def test_pattern_longer_than_word(self):
        assert count_occurrences(parse_pattern("2[31]"), (2, 1)) == 0

    def test_repeated_letters_demand_equality(self):
        # 2,2,1 needs two equal letters above a smaller one
        p = parse_pattern("[22]1")
        assert count_occurrences(p, (3, 3, 1)) == 1
        assert count_occurrences(p, (3, 2, 1)) == 0

    @given(st.sampled_from(POOL), small_words)
    def test_fast_counter_matches_reference(self, p, w):
        assert count_occurrences(p, w) == count_occurrences_reference(p, w)

    @given(st.sampled_from(POOL), small_words, st.sets(st.integers(1, 30), min_size=4, max_size=4))
    def test_relabeling_invariance(self, p, w, targets):
        relabel = dict(zip((1, 2, 3, 4), sorted(targets)))
        mapped = tuple(relabel[x] for x in w)
        assert count_occurrences(p, w) == count_occurrences(p, mapped)


class TestRestrictedCounting:
    def test_example_with_distinct_anchor(self):
        p = parse_pattern("[31]2")
        assert count_restricted(p, 1, 5, (6, 5, 2, 5, 3, 3, 4, 1)) == 4

    def test_example_with_repeated_anchor(self):
        p = parse_pattern("[21]2")
        assert count_restricted(p, 1, 4, (4, 3, 2, 1, 4, 4, 1, 4)) == 4

    def test_absent_value(self):
        p = parse_pattern("[21]2")
        assert count_restricted(p, 1, 9, (4, 3, 2, 1, 4, 4, 1, 4)) == 0

    def test_anchor_out_of_range(self):
        with pytest.raises(PatternError):
            count_restricted(parse_pattern("[21]"), 3, 1, (2, 1))

    def test_restrictions_partition_the_count(self, corpus5):
        pats = [parse_pattern(t) for t in ("2[31]", "[21]2", "[22]1")]
        for w in corpus5:
            for p in pats:
                for anchor in range(1, len(p.letters) + 1):
                    total = sum(
                        count_restricted(p, anchor, v, w) for v in sorted(set(w))
                    )
                    assert total == count_occurrences(p, w)


class TestCombos:
    def test_parse_and_format(self):
        c = parse_combo("2*2[31] + [31]2 + [21]")
        assert format_combo(c) == "2*2[31] + [31]2 + [21]"

    def test_duplicate_terms_merge(self):
        c = parse_combo("[31]2 + 2[31] + [31]2 + [21]")
        assert format_combo(c) == "2*[31]2 + 2[31] + [21]"
        assert c.instance_count() == 4

    def test_rejects_zero_coefficient(self):
        with pytest.raises(PatternError):
            parse_combo("0*[21]")

    def test_rejects_garbage(self):
        with pytest.raises(PatternError):
            parse_combo("[21] + + [11]")

    def test_single_descent_word(self):
        assert eval_combo(builtin("mad1"), (2, 1)) == 1

    def test_maj_combo_matches_direct(self):
        assert eval_combo(builtin("maj_word"), (1, 2, 1)) == 2 == words.maj((1, 2, 1))

    def test_one_letter_word(self):
        for name in BUILTIN_NAMES:
            assert eval_combo(builtin(name), (7,)) == 0

    def test_canonical_ignores_order(self):
        a = parse_combo("[21] + 2[31]")
        b = parse_combo("2[31] + [21]")
        assert a != b and a.canonical() == b.canonical()


class TestBuiltins:
    def test_mad1_exact_terms(self):
        assert format_combo(builtin("mad1")) == "2*2[31] + [31]2 + [21]1 + 2[21] + [21]"

    def test_inv_word_exact_terms(self):
        assert format_combo(builtin("inv_word")) == "[23]1 + [31]2 + [32]1 + [21] + [22]1 + [21]1"

    def test_des_is_single_descent_pattern(self):
        assert format_combo(builtin("des")) == "[21]"

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            builtin("mad9")

    def test_six_instance_budget(self):
        for name in (
            "mad1", "mad2", "mad3", "mad4", "madl1", "madl2", "madl3", "madl4",
            "mak1", "mak2", "makl1", "makl2",
        ):
            assert builtin(name).instance_count() == 6

    def test_all_builtins_parse(self):
        for name in BUILTIN_NAMES:
            assert builtin(name).terms

    def test_distinct_letters_collapse_to_permutation_combo(self, corpus5):
        perms = [w for w in corpus5 if len(set(w)) == len(w)]
        for w in perms:
            base = eval_combo(builtin("mad_perm"), w)
            for name in ("mad1", "mad2", "mad3", "mad4"):
                assert eval_combo(builtin(name), w) == base


class TestStatisticIdentities:
    COMBO_VS_DEFINITIONAL = [
        ("res", "Res"),
        ("les", "Les"),
        ("dbot_l", "Dbot_l"),
        ("dbot_r", "Dbot_r"),
        ("dtop", "Dtop"),
        ("ddif_l", "Ddif_l"),
        ("ddif_r", "Ddif_r"),
        ("mak_l", "mak_l"),
        ("mak_r", "mak_r"),
        ("mad_l", "mad_l"),
        ("mad_r", "mad_r"),
        ("makl_l", "makl_l"),
        ("makl_r", "makl_r"),
        ("madl_l", "madl_l"),
        ("madl_r", "madl_r"),
    ]

    @pytest.mark.parametrize("combo_name,stat_name", COMBO_VS_DEFINITIONAL)
    def test_combo_equals_definitional(self, combo_name, stat_name, corpus5):
        c = builtin(combo_name)
        for w in corpus5:
            assert eval_combo(c, w) == words.definitional_stat(w, stat_name), w

    def test_equal_letter_sums_over_descent_bottoms(self, corpus5):
        left = parse_combo("1[21]")
        right = parse_combo("[21]1")
        height = parse_combo("1[32] + [32]1 + [21]")
        for w in corpus5:
            bottoms = words.descent_bottom_indices(w)
            eq_l = sum(sum(1 for j in range(i) if w[j] == w[i]) for i in bottoms)
            eq_r = sum(
                sum(1 for j in range(i + 1, len(w)) if w[j] == w[i]) for i in bottoms
            )
            assert eval_combo(left, w) == eq_l
            assert eval_combo(right, w) == eq_r
            assert eval_combo(height, w) == words.definitional_stat(w, "height_sum_desbot")

    def test_word_combos_extend_classical_stats(self, corpus5):
        for w in corpus5:
            assert eval_combo(builtin("inv_word"), w) == words.inv(w)
            assert eval_combo(builtin("maj_word"), w) == words.maj(w)

    def test_exactly_one_dtop_variant_holds(self, corpus5):
        statement = parse_combo(DTOP_VARIANTS["statement"])
        proof = parse_combo(DTOP_VARIANTS["proof"])
        statement_ok = all(
            eval_combo(statement, w) == words.definitional_stat(w, "Dtop")
            for w in corpus5
        )
        proof_ok = all(
            eval_combo(proof, w) == words.definitional_stat(w, "Dtop")
            for w in corpus5
        )
        assert statement_ok and not proof_ok
        assert builtin("dtop").canonical() == statement.canonical()
