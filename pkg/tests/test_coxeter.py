from itertools import combinations

import pytest

from kldecomp import build_system
from kldecomp.errors import CartanError, SystemMismatchError, WordError


def subword_reachable(system, word):
    """Independent Bruhat oracle: products of all subwords of `word`."""
    reached = {system.identity}
    for mask in range(1 << len(word)):
        cur = system.identity
        for j, letter in enumerate(word):
            if mask >> j & 1:
                cur = cur * system.simple(letter)
        reached.add(cur)
    return reached


class TestConstruction:
    def test_a1(self, a1):
        assert a1.group_order == 2
        assert len(a1.positive_roots) == 1
        levels = a1.all_elements()
        assert [len(level) for level in levels] == [1, 1]

    def test_a2(self, a2):
        assert a2.group_order == 6
        assert len(a2.positive_roots) == 3
        assert a2.longest_element().length == 3

    def test_b3(self, b3):
        assert b3.group_order == 48
        assert len(b3.positive_roots) == 9
        assert b3.longest_element().length == 9

    def test_a3_level_histogram(self, a3):
        assert [len(level) for level in a3.all_elements()] == [1, 3, 5, 6, 5, 3, 1]

    def test_simple_reflections_square_to_identity(self, b3):
        for i in range(1, b3.rank + 1):
            s = b3.simple(i)
            assert s * s == b3.identity

    def test_braid_relations_as_matrix_orders(self, b3):
        for i, j in combinations(range(1, b3.rank + 1), 2):
            m = b3.bond_order(i, j)
            product = b3.simple(i) * b3.simple(j)
            power = b3.identity
            orders = []
            for k in range(1, 2 * m + 1):
                power = power * product
                if power == b3.identity:
                    orders.append(k)
                    break
            assert orders == [m]

    def test_g2_enumeration(self):
        g2 = build_system("G2")
        assert len(g2.positive_roots) == 6
        assert [len(level) for level in g2.all_elements()] == [1, 2, 2, 2, 2, 2, 1]

    def test_f4_enumeration(self):
        f4 = build_system("F4")
        assert len(f4.positive_roots) == 24
        levels = f4.all_elements()
        assert sum(len(level) for level in levels) == 1152
        assert f4.longest_element().length == 24

    def test_build_from_string_or_datum(self):
        from kldecomp.cartan import CartanType

        assert build_system("G2").group_order == 12
        assert build_system(CartanType.parse("G2")).group_order == 12
        with pytest.raises(CartanError):
            build_system("H4")
        with pytest.raises(CartanError):
            build_system(123)


class TestElementOps:
    def test_multiply_identity_and_involution(self, a2):
        s1 = a2.simple(1)
        assert a2.identity * s1 == s1
        assert s1 * s1 == a2.identity

    def test_multiply_builds_longest(self, a2):
        s1, s2 = a2.simple(1), a2.simple(2)
        w = (s1 * s2) * s1
        assert w.length == 3
        assert w == a2.longest_element()

    def test_system_mismatch(self, a2, a3):
        with pytest.raises(SystemMismatchError):
            a2.multiply(a2.simple(1), a3.simple(1))

    def test_descents(self, a2):
        s1, s2 = a2.simple(1), a2.simple(2)
        assert not any(a2.identity.has_right_descent(i) for i in (1, 2))
        assert s1.has_right_descent(1)
        assert not (s1 * s2).has_right_descent(1)
        assert (s1 * s2).has_right_descent(2)

    def test_left_right_descent_symmetry(self, a3):
        for level in a3.all_elements():
            for w in level:
                inv = w.inverse()
                for i in range(1, 4):
                    assert w.has_left_descent(i) == inv.has_right_descent(i)

    def test_length_changes_by_one(self, a3):
        for level in a3.all_elements():
            for w in level:
                for i in range(1, a3.rank + 1):
                    assert abs((w * a3.simple(i)).length - w.length) == 1

    def test_inverse_matrix_is_carried(self, b3):
        w = b3.require_reduced((1, 2, 3, 2))
        assert w * w.inverse() == b3.identity


class TestWords:
    def test_lexmin_examples(self, a2):
        assert a2.lex_min_reduced_word(a2.identity) == ()
        assert a2.lex_min_reduced_word(a2.simple(2)) == (2,)
        assert a2.lex_min_reduced_word(a2.longest_element()) == (1, 2, 1)
        assert a2.lex_max_reduced_word(a2.longest_element()) == (2, 1, 2)

    def test_b2_longest_words(self, b2):
        w0 = b2.longest_element()
        assert b2.lex_min_reduced_word(w0) == (1, 2, 1, 2)
        assert b2.lex_max_reduced_word(w0) == (2, 1, 2, 1)

    def test_words_reproduce_elements(self, b3):
        for level in b3.all_elements():
            for w in level:
                word = b3.lex_min_reduced_word(w)
                assert len(word) == w.length
                assert b3.require_reduced(word) == w

    def test_element_from_word_validates_letters(self, a2):
        with pytest.raises(WordError) as err:
            a2.element_from_word((1, 5, 2))
        assert err.value.position == 2

    def test_require_reduced(self, a2):
        with pytest.raises(WordError) as err:
            a2.require_reduced((1, 1))
        assert err.value.position == 2
        with pytest.raises(WordError) as err:
            a2.require_reduced((1, 2, 1, 2))
        assert err.value.position == 4


class TestBruhatOrder:
    def test_identity_is_minimum(self, a2):
        for level in a2.all_elements():
            for w in level:
                assert a2.bruhat_leq(a2.identity, w)

    def test_length_monotone(self, a2):
        w0 = a2.longest_element()
        assert not a2.bruhat_leq(w0, a2.simple(1))

    def test_a2_examples(self, a2):
        s1 = a2.simple(1)
        s2 = a2.simple(2)
        s2s1 = s2 * s1
        s1s2 = s1 * s2
        assert a2.bruhat_leq(s1, s2s1)
        assert not a2.bruhat_leq(s1s2, s2s1)

    def test_longest_dominates(self, b3):
        w0 = b3.longest_element()
        for level in b3.all_elements():
            for w in level:
                assert b3.bruhat_leq(w, w0)

    @pytest.mark.parametrize("name", ["A3", "B3"])
    def test_agrees_with_subword_oracle(self, name, request):
        system = request.getfixturevalue(name.lower())
        reachable = {
            w: subword_reachable(system, system.lex_min_reduced_word(w))
            for level in system.all_elements() for w in level
        }
        for level in system.all_elements():
            for w in level:
                below = set(system.below(w))
                assert below == reachable[w]

    def test_recursive_path_matches_bitsets(self):
        # a fresh system exercises the pre-enumeration recursion
        fresh = build_system("A3")
        s = [fresh.simple(i) for i in (1, 2, 3)]
        v = s[1] * s[0]
        w = s[1] * s[0] * s[2] * s[1]
        assert fresh.bruhat_leq(v, w)
        assert not fresh.bruhat_leq(w, v)
        fresh.all_elements()
        assert fresh.bruhat_leq(v, w)

    def test_below_sorted_by_length_then_word(self, a3):
        w0 = a3.longest_element()
        interval = a3.below(w0)
        keys = [(w.length, w.word) for w in interval]
        assert keys == sorted(keys)
        assert len(interval) == 24
