from __future__ import annotations

import pytest

from funspace import (
    build_hasse,
    children,
    count_consistent,
    enumerate_all,
    hasse_slice,
    inf_shape,
    make_shape,
    parent_step,
    parents,
    random_path,
    shape_leq,
    siblings,
    sup_shape,
    true_count,
    verify_rules,
)
from funspace.errors import ArityTooLarge, DedekindUnknown, NotAParent


def shp(text: str, p: int):
    """'{{1},{2,3}}' -> shape (test shorthand)."""
    groups = text.strip("{}").split("},{")
    return make_shape([[int(x) for x in g.split(",")] for g in groups], p)


# ---------------------------------------------------------------------------
# Worked example: f = s1 | (s2 & !s3)


def test_worked_example_neighbors():
    center = shp("{{1},{2,3}}", 3)
    ps = parents(center)
    assert len(ps) == 1
    assert ps[0].shape == sup_shape(3)
    assert ps[0].rule == "parent-r3"
    assert ps[0].delta == 2
    cs = children(center)
    assert len(cs) == 1
    assert cs[0].shape == shp("{{1,2},{1,3},{2,3}}", 3)
    assert cs[0].rule == "child"
    assert cs[0].delta == 1
    assert set(siblings(center)) == {
        shp("{{2},{1,3}}", 3), shp("{{3},{1,2}}", 3)
    }
    # the co-parents of its unique child are the same two shapes here
    assert set(siblings(center, via="children")) == set(siblings(center))
    assert set(siblings(center, via="both")) == set(siblings(center))


def test_extremes():
    assert parents(sup_shape(3)) == ()
    assert {st.shape for st in children(sup_shape(3))} == {
        shp("{{1},{2,3}}", 3), shp("{{2},{1,3}}", 3), shp("{{3},{1,2}}", 3)
    }
    assert children(inf_shape(3)) == ()
    assert {st.shape for st in parents(inf_shape(3))} == {
        shp("{{1,2},{1,3}}", 3), shp("{{1,2},{2,3}}", 3), shp("{{1,3},{2,3}}", 3)
    }
    # p=1: the single shape has no neighbors at all
    only = sup_shape(1)
    assert parents(only) == () and children(only) == ()
    assert siblings(only) == ()


# ---------------------------------------------------------------------------
# The full p=3 diagram (9 nodes / 12 edges)


P3_EDGES = [
    ("{{1},{2,3}}", "{{1},{2},{3}}"),
    ("{{2},{1,3}}", "{{1},{2},{3}}"),
    ("{{3},{1,2}}", "{{1},{2},{3}}"),
    ("{{1,2},{1,3}}", "{{1,2},{1,3},{2,3}}"),
    ("{{1,2},{1,3},{2,3}}", "{{1},{2,3}}"),
    ("{{1,2},{1,3},{2,3}}", "{{2},{1,3}}"),
    ("{{1,2},{1,3},{2,3}}", "{{3},{1,2}}"),
    ("{{1,2},{2,3}}", "{{1,2},{1,3},{2,3}}"),
    ("{{1,3},{2,3}}", "{{1,2},{1,3},{2,3}}"),
    ("{{1,2,3}}", "{{1,2},{1,3}}"),
    ("{{1,2,3}}", "{{1,2},{2,3}}"),
    ("{{1,2,3}}", "{{1,3},{2,3}}"),
]


def test_p3_diagram():
    hd = build_hasse(3)
    assert len(hd.shapes) == 9
    assert len(hd.edges) == 12
    got = {(str(hd.shapes[lo]), str(hd.shapes[hi])) for lo, hi in hd.edges}
    assert got == set(P3_EDGES)


def test_diagram_helpers_match_rules():
    hd = build_hasse(3)
    for s in hd.shapes:
        assert set(hd.parents_of(s)) == {st.shape for st in parents(s)}
        assert set(hd.children_of(s)) == {st.shape for st in children(s)}


# ---------------------------------------------------------------------------
# Rules vs. brute-force oracle


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_rules_match_oracle(p):
    assert verify_rules(p) == []


def test_duality():
    for p in (2, 3, 4):
        for s in enumerate_all(p):
            for st in parents(s):
                assert s in {c.shape for c in children(st.shape)}
            for st in children(s):
                assert s in {q.shape for q in parents(st.shape)}


def test_edge_deltas_match_true_set_growth():
    for p in (2, 3, 4):
        for s in enumerate_all(p):
            for st in parents(s):
                assert st.delta == true_count(st.shape) - true_count(s)
                assert st.delta in (1, 2)
            for st in children(s):
                assert st.delta == true_count(s) - true_count(st.shape)
                assert st.delta in (1, 2)


def test_neighbors_pairwise_incomparable():
    for p in (3, 4):
        for s in enumerate_all(p):
            ups = [st.shape for st in parents(s)]
            for i, a in enumerate(ups):
                for b in ups[i + 1:]:
                    assert not shape_leq(a, b) and not shape_leq(b, a)
            downs = [st.shape for st in children(s)]
            for i, a in enumerate(downs):
                for b in downs[i + 1:]:
                    assert not shape_leq(a, b) and not shape_leq(b, a)


def test_levels_never_decrease_upward():
    from funspace import level, level_leq
    for p in (2, 3, 4):
        hd = build_hasse(p)
        for lo, hi in hd.edges:
            assert level_leq(level(hd.shapes[lo]), level(hd.shapes[hi]))


# ---------------------------------------------------------------------------
# Not a lattice at p = 4


def test_not_a_lattice_at_p4():
    s1 = shp("{{3},{1,2,4}}", 4)
    s2 = shp("{{2,3},{1,4}}", 4)
    shapes = list(enumerate_all(4))
    ubs = [u for u in shapes if shape_leq(s1, u) and shape_leq(s2, u)]
    minimal = [u for u in ubs
               if not any(v != u and shape_leq(v, u) for v in ubs)]
    # two incomparable minimal upper bounds -> no least upper bound
    assert set(minimal) == {
        shp("{{1,2},{3},{1,4}}", 4), shp("{{3},{1,4},{2,4}}", 4)
    }
    a, b = minimal
    assert not shape_leq(a, b) and not shape_leq(b, a)
    # {{1,2},{3},{4}} is an upper bound too, but not a minimal one
    loose = shp("{{1,2},{3},{4}}", 4)
    assert loose in ubs and loose not in minimal


# ---------------------------------------------------------------------------
# Enumeration and counting


def test_enumeration_matches_counts():
    for p in range(1, 6):
        shapes = list(enumerate_all(p))
        assert len(shapes) == count_consistent(p)
        assert len(set(shapes)) == len(shapes)  # no duplicates


def test_counts_table():
    expect = {
        1: 1,
        2: 2,
        3: 9,
        4: 114,
        5: 6894,
        6: 7785062,
        7: 2414627396434,
        8: 56130437209370320359966,
    }
    for p, n in expect.items():
        assert count_consistent(p) == n
    with pytest.raises(DedekindUnknown):
        count_consistent(9)


def test_enumeration_guards():
    with pytest.raises(ArityTooLarge):
        list(enumerate_all(7))
    with pytest.raises(ArityTooLarge):
        build_hasse(6)


def test_enumeration_emits_valid_shapes():
    for s in enumerate_all(4):
        # re-validating through the strict constructor must succeed
        assert make_shape(s.index_sets(), 4) == s


# ---------------------------------------------------------------------------
# Single steps and random paths


def test_parent_step():
    lower = shp("{{1},{2,3}}", 3)
    st = parent_step(lower, sup_shape(3))
    assert st.rule == "parent-r3" and st.delta == 2
    with pytest.raises(NotAParent):
        parent_step(inf_shape(3), sup_shape(3))  # comparable, not an edge
    with pytest.raises(NotAParent):
        parent_step(shp("{{1},{2,3}}", 3), shp("{{2},{1,3}}", 3))


def test_random_path_seeded():
    p1 = random_path(4, seed=11)
    p2 = random_path(4, seed=11)
    assert p1 == p2
    assert p1[0] == inf_shape(4)
    assert p1[-1] == sup_shape(4)
    for lo, hi in zip(p1, p1[1:]):
        parent_step(lo, hi)  # raises if not a Hasse step
    assert random_path(1) == [sup_shape(1)]


def test_random_path_seeds_differ():
    seen = {tuple(random_path(4, seed=s)) for s in range(8)}
    assert len(seen) > 1


def test_hasse_slice_bundle():
    sl = hasse_slice(shp("{{1},{2,3}}", 3), sibling_via="both")
    assert sl.center == shp("{{1},{2,3}}", 3)
    assert len(sl.parents) == 1 and len(sl.children) == 1
    assert len(sl.siblings) == 2
