import pytest

import mtdist

WORKED = [(1, 0, 3.0), (2, 1, 3.0), (3, 2, 4.0), (4, 2, 1.5), (5, 1, 5.0)]


def test_worked_example():
    t1 = mtdist.MergeTree.from_edges(WORKED)
    t2 = mtdist.MergeTree.from_edges([(1, 0, 10.0)])
    assert mtdist.distance(t1, t2) == 6.5
    d, pairs = mtdist.distance_with_mapping(t1, t2)
    assert d == 6.5
    assert pairs == [([0, 1, 2, 3], [0, 1])]


def test_empty_tree_and_round_trip():
    t = mtdist.MergeTree.from_edges(WORKED)
    assert mtdist.distance(t, mtdist.MergeTree()) == t.total_persistence() == 16.5
    back = mtdist.parse_tree(mtdist.format_tree(t))
    assert back.canonical_form() == t.canonical_form()


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        mtdist.MergeTree.from_edges([(1, 0, 1.0), (2, 1, 1.0)])
    with pytest.raises(ValueError):
        mtdist.parse_tree("nonsense")


def test_join_tree_and_matrix():
    t = mtdist.join_tree([[0.0, 2.0, 1.0, 3.0]])
    assert sorted(label for _, _, label in t.edges()) == [1.0, 1.0, 2.0]
    assert mtdist.simplify(t, 1.5).edge_count() == 1
    trees = [mtdist.random_tree(seed, 9) for seed in range(4)]
    m = mtdist.distance_matrix(trees, workers=2)
    assert all(m[i][i] == 0.0 for i in range(4))
    assert all(m[i][j] == m[j][i] for i in range(4) for j in range(4))
