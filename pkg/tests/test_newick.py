from fractions import Fraction

import pytest

from ultragreed.newick import (
    ClockViolationError,
    NewickError,
    parse_newick,
    triple_from_tree,
)


class TestParsing:
    def test_balanced_tree(self):
        tree = parse_newick("((A:1,B:1):1,C:2);")
        assert tree.leaf_names == ["A", "B", "C"]
        assert tree.leaf_depths() == {
            "A": Fraction(2),
            "B": Fraction(2),
            "C": Fraction(2),
        }

    def test_default_branch_lengths(self):
        tree = parse_newick("(A,B);")
        assert tree.leaf_depths() == {"A": Fraction(1), "B": Fraction(1)}

    def test_single_leaf(self):
        tree = parse_newick("A;")
        assert tree.leaf_names == ["A"]

    def test_internal_names_allowed(self):
        tree = parse_newick("((A:1,B:1)anc:1,C:2)root;")
        assert tree.leaf_names == ["A", "B", "C"]

    def test_decimal_lengths_are_exact(self):
        tree = parse_newick("(A:0.1,B:0.1);")
        assert tree.leaf_depths()["A"] == Fraction(1, 10)

    def test_whitespace_tolerated(self):
        tree = parse_newick(" ( A : 1 , B : 1 ) ; ")
        assert tree.leaf_names == ["A", "B"]

    def test_syntax_error_carries_position(self):
        with pytest.raises(NewickError) as exc:
            parse_newick("((A,B);")
        assert exc.value.position == 6

    def test_missing_semicolon(self):
        with pytest.raises(NewickError, match="';'"):
            parse_newick("(A,B)")

    def test_trailing_garbage(self):
        with pytest.raises(NewickError, match="trailing"):
            parse_newick("(A,B); x")

    def test_duplicate_leaf_names(self):
        with pytest.raises(NewickError, match="duplicate"):
            parse_newick("(A,A);")

    def test_negative_length_rejected(self):
        with pytest.raises(NewickError, match="nonnegative"):
            parse_newick("(A:-1,B:1);")

    def test_missing_length_after_colon(self):
        with pytest.raises(NewickError, match="branch length"):
            parse_newick("(A:,B);")


class TestTripleFromTree:
    def test_balanced_tree_distances(self):
        t = triple_from_tree(parse_newick("((A:1,B:1):1,C:2);"))
        assert t.labels == ("A", "B", "C")
        assert t.d("A", "B") == 1
        assert t.d("A", "C") == 2
        assert t.d("B", "C") == 2
        assert all(w == 0 for w in t.weights.values())

    def test_single_leaf(self):
        t = triple_from_tree(parse_newick("A;"))
        assert t.labels == ("A",)

    def test_star_tree(self):
        t = triple_from_tree(parse_newick("(A:1,B:1,C:1);"))
        assert {t.d(a, b) for a, b in (("A", "B"), ("A", "C"), ("B", "C"))} == {1}
        assert t.mcs() == 3

    def test_clock_violation_witness(self):
        tree = parse_newick("((A:1,B:2):1,C:2);")
        with pytest.raises(ClockViolationError) as exc:
            triple_from_tree(tree)
        assert exc.value.witness == ("A", "B")

    def test_rational_lengths_scale_to_integers(self):
        t = triple_from_tree(parse_newick("((A:0.5,B:0.5):0.5,C:1);"))
        assert t.d("A", "B") == 1
        assert t.d("A", "C") == 2

    def test_unbalanced_depth_inside_subtree(self):
        tree = parse_newick("(((A:1,B:1):1,C:2):1,D:2);")
        with pytest.raises(ClockViolationError) as exc:
            triple_from_tree(tree)
        assert exc.value.witness == ("A", "D")

    def test_output_is_always_a_valid_triple(self):
        for text in (
            "((A:1,B:1):1,C:2);",
            "(A:1,B:1,C:1);",
            "(((a:1,b:1):1,(c:0.5,d:0.5):1.5):2,(e:2,f:2):2);",
        ):
            t = triple_from_tree(parse_newick(text))
            assert len(t) >= 2
