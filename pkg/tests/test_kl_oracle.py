from kldecomp import classical_kl_table
from kldecomp.laurent import LaurentPolynomial


class TestClassicalTable:
    def test_a2_is_all_ones(self, a2):
        table = classical_kl_table(a2)
        assert len(table) == 19
        assert all(poly == 1 for poly in table.values())

    def test_identity_row(self, a3):
        table = classical_kl_table(a3)
        e = a3.identity
        assert table[(e, e)] == 1

    def test_a3_landmark_entry(self, a3):
        table = classical_kl_table(a3)
        w = a3.require_reduced((2, 1, 3, 2))
        one_plus_q = LaurentPolynomial({0: 1, 1: 1})
        assert table[(w, a3.simple(2))] == one_plus_q
        assert table[(w, a3.identity)] == one_plus_q

    def test_a3_full_nontrivial_locus(self, a3):
        # the two singular Schubert varieties of the rank-3 flag manifold
        table = classical_kl_table(a3)
        one_plus_q = LaurentPolynomial({0: 1, 1: 1})
        first = a3.require_reduced((2, 1, 3, 2))
        second = a3.require_reduced((1, 2, 3, 2, 1))
        expected = {(first, u) for u in a3.below(a3.simple(2))}
        expected |= {(second, u) for u in a3.below(a3.simple(1) * a3.simple(3))}
        nontrivial = {pair for pair, poly in table.items() if poly != 1}
        assert nontrivial == expected
        assert all(table[pair] == one_plus_q for pair in expected)

    def test_supports_are_bruhat_pairs(self, b2):
        table = classical_kl_table(b2)
        pairs = {(w, u) for level in b2.all_elements() for w in level for u in b2.below(w)}
        assert set(table) == pairs

    def test_self_check_properties(self, b3):
        table = classical_kl_table(b3)
        for (w, u), poly in table.items():
            assert poly.coefficient(0) == 1
            assert not poly.has_negative_coefficient()
            if u != w:
                assert 2 * (poly.degree or 0) <= w.length - u.length - 1
            else:
                assert poly == 1
