from __future__ import annotations

import random

import pytest

from funspace import (
    FunctionShape,
    RegulatorContext,
    enumerate_all,
    evaluate,
    inf_shape,
    is_consistent,
    level,
    level_leq,
    majority_rule,
    make_shape,
    minimize,
    no_inhibitors,
    shape_from_truth_table,
    shape_leq,
    shape_lt,
    signatures,
    state_from_string,
    state_to_string,
    sup_shape,
    true_count,
    true_states,
)
from funspace.errors import (
    ArityTooLarge,
    EmptyClauseSet,
    NoActivators,
    NotAntichain,
    NotConsistent,
    NotCover,
    ThresholdOutOfRange,
)


def all_contexts(p):
    for bits in range(1 << p):
        yield RegulatorContext.from_str(
            "".join("-" if bits & (1 << k) else "+" for k in range(p))
        )


# ---------------------------------------------------------------------------
# Construction and validation


def test_make_shape_canonical_form():
    s = make_shape([[2, 3], [1]], 3)
    assert s.arity == 3
    assert s.index_sets() == ((1,), (2, 3))
    assert str(s) == "{{1},{2,3}}"
    # structural equality regardless of input order
    assert s == make_shape([[1], [3, 2]], 3)
    assert hash(s) == hash(make_shape([[1], [2, 3]], 3))


def test_make_shape_rejects_absorbable():
    with pytest.raises(NotAntichain):
        make_shape([[1], [1, 2]], 2)


def test_make_shape_rejects_non_cover():
    with pytest.raises(NotCover):
        make_shape([[1], [2]], 3)


def test_make_shape_rejects_empty():
    with pytest.raises(EmptyClauseSet):
        make_shape([], 2)


def test_make_shape_index_range():
    with pytest.raises(ValueError):
        make_shape([[0, 1]], 2)
    with pytest.raises(ValueError):
        make_shape([[1, 4]], 3)


def test_arity_cap():
    with pytest.raises(ArityTooLarge):
        make_shape([[1]], 17)
    # 16 is the documented maximum and must work
    make_shape([list(range(1, 17))], 16)


def test_minimize_absorbs_and_checks_cover():
    assert minimize([[1], [1, 2], [2, 3]], 3) == make_shape([[1], [2, 3]], 3)
    with pytest.raises(NotCover):
        minimize([[1], [1, 2]], 2)  # absorption leaves regulator 2 unused


def test_extremal_shapes():
    assert sup_shape(3) == make_shape([[1], [2], [3]], 3)
    assert inf_shape(3) == make_shape([[1, 2, 3]], 3)
    assert sup_shape(1) == inf_shape(1)


def test_majority_rule():
    assert majority_rule(3, 2) == make_shape([[1, 2], [1, 3], [2, 3]], 3)
    assert majority_rule(3, 1) == sup_shape(3)
    assert majority_rule(3, 3) == inf_shape(3)
    with pytest.raises(ThresholdOutOfRange):
        majority_rule(3, 4)
    with pytest.raises(ThresholdOutOfRange):
        majority_rule(3, 0)


# ---------------------------------------------------------------------------
# Evaluation, order, and truth tables


def test_evaluate_worked_example():
    # f = s1 | (s2 & !s3)
    s = make_shape([[1], [2, 3]], 3)
    ctx = RegulatorContext.from_str("++-")
    truth = {
        state_to_string(x, 3) for x in range(8) if evaluate(s, ctx, x)
    }
    assert truth == {"100", "101", "110", "111", "010"}
    assert true_count(s) == 5
    assert true_states(s, ctx) == frozenset(
        state_from_string(t) for t in truth
    )


def test_order_equivalence_exhaustive_p3():
    # shape_leq(a, b) must coincide with truth-set inclusion for every
    # context; the partial order is purely structural.
    shapes = list(enumerate_all(3))
    for ctx in all_contexts(3):
        tsets = {s: true_states(s, ctx) for s in shapes}
        for a in shapes:
            for b in shapes:
                assert shape_leq(a, b) == (tsets[a] <= tsets[b])


def test_order_equivalence_p4_all_contexts():
    shapes = list(enumerate_all(4))
    for ctx in all_contexts(4):
        tsets = [true_states(s, ctx) for s in shapes]
        for i, a in enumerate(shapes):
            for j, b in enumerate(shapes):
                assert shape_leq(a, b) == (tsets[i] <= tsets[j])


def test_bounded_poset():
    for p in range(1, 5):
        bot, top = inf_shape(p), sup_shape(p)
        for s in enumerate_all(p):
            assert shape_leq(bot, s)
            assert shape_leq(s, top)


def test_shape_lt_is_strict():
    a = make_shape([[1], [2, 3]], 3)
    assert not shape_lt(a, a)
    assert shape_lt(a, sup_shape(3))
    assert not shape_lt(sup_shape(3), a)


def test_true_count_matches_enumeration():
    for p in (2, 3, 4):
        ctx = RegulatorContext.all_positive(p)
        for s in enumerate_all(p):
            assert true_count(s) == len(true_states(s, ctx))


def test_operative_corners():
    # the all-operative state satisfies every clause's literals; the
    # all-non-operative state satisfies none (holds for every valid shape)
    for p in range(1, 5):
        for ctx in all_contexts(p):
            for s in enumerate_all(p):
                assert evaluate(s, ctx, ctx.all_operative_state())
                assert not evaluate(s, ctx, ctx.all_non_operative_state())


def test_consistency_round_trip():
    for p in (1, 2, 3):
        for ctx in all_contexts(p):
            for s in enumerate_all(p):
                table = [evaluate(s, ctx, x) for x in range(1 << p)]
                assert is_consistent(table, ctx)
                assert shape_from_truth_table(table, ctx) == s


def test_inconsistent_tables_rejected():
    ctx = RegulatorContext.from_str("++")
    assert not is_consistent([0, 1, 1, 0], ctx)  # xor: sign violation
    with pytest.raises(NotConsistent):
        shape_from_truth_table([0, 1, 1, 0], ctx)
    with pytest.raises(NotConsistent):
        shape_from_truth_table([1, 1, 1, 1], ctx)  # constant
    with pytest.raises(NotConsistent):
        shape_from_truth_table([0, 0, 0, 0], ctx)  # constant
    with pytest.raises(NotConsistent):
        shape_from_truth_table([0, 1, 0, 1], ctx)  # s2 not essential
    # against-sign: declared inhibitor acting as activator
    assert not is_consistent([0, 0, 0, 1], RegulatorContext.from_str("+-"))


# ---------------------------------------------------------------------------
# Signatures


def test_signature_worked_example():
    # f = (s1 & s2) | (s1 & !s3), signs ++-
    s = make_shape([[1, 2], [1, 3]], 3)
    ctx = RegulatorContext.from_str("++-")
    sigs = signatures(s, ctx)
    assert [g.pattern(ctx) for g in sigs] == ["11*", "1*0"]
    assert set(sigs[0].states(ctx)) == {
        state_from_string("110"), state_from_string("111")
    }
    assert set(sigs[1].states(ctx)) == {
        state_from_string("100"), state_from_string("110")
    }
    # default glyphs: operative activator o, operative inhibitor ō, free ★
    assert sigs[0].render(ctx) == "(o,o,★)"
    assert sigs[1].render(ctx) == "(o,★,ō)"


def test_signature_union_is_truth_set():
    for p in (2, 3):
        for ctx in all_contexts(p):
            for s in enumerate_all(p):
                union = set()
                for g in signatures(s, ctx):
                    union.update(g.states(ctx))
                assert union == set(true_states(s, ctx))


# ---------------------------------------------------------------------------
# Levels


def test_level_values():
    assert level(make_shape([[1], [2, 3]], 3)) == (2, 1)
    assert level(sup_shape(3)) == (2, 2, 2)
    assert level(inf_shape(3)) == (0,)
    assert level(majority_rule(3, 2)) == (1, 1, 1)


def test_level_leq_total_order():
    rng = random.Random(20260816)
    pool = [tuple(sorted((rng.randrange(0, 5) for _ in range(rng.randrange(1, 6))),
                         reverse=True))
            for _ in range(60)]
    pool += [level(s) for s in enumerate_all(4)]
    for a in pool:
        assert level_leq(a, a)
        for b in pool:
            assert level_leq(a, b) or level_leq(b, a)  # total
            if level_leq(a, b) and level_leq(b, a):
                assert a == b  # antisymmetric
            for c in pool[:20]:
                if level_leq(a, b) and level_leq(b, c):
                    assert level_leq(a, c)  # transitive


# ---------------------------------------------------------------------------
# Contexts and special shapes


def test_context_basics():
    ctx = RegulatorContext.from_str("+-+")
    assert str(ctx) == "+-+"
    assert ctx.pos_mask == 0b101
    assert ctx.neg_mask == 0b010
    assert ctx.all_operative_state() == 0b101
    assert ctx.all_non_operative_state() == 0b010
    assert RegulatorContext.all_positive(3).neg_mask == 0


def test_context_self_sign():
    ctx = RegulatorContext.from_str("++-", self_index=3)
    assert ctx.self_index == 3
    assert ctx.self_sign() == -1


def test_no_inhibitors():
    # each activator fires only with every inhibitor off
    assert no_inhibitors(RegulatorContext.from_str("++-")) == \
        make_shape([[1, 3], [2, 3]], 3)
    assert no_inhibitors(RegulatorContext.from_str("+--")) == \
        make_shape([[1, 2, 3]], 3)
    assert no_inhibitors(RegulatorContext.from_str("++")) == sup_shape(2)
    with pytest.raises(NoActivators):
        no_inhibitors(RegulatorContext.from_str("--"))


def test_state_strings():
    assert state_to_string(0b1010, 4) == "0101"  # component 1 leftmost
    assert state_from_string("0101") == 0b1010
    for x in range(16):
        assert state_from_string(state_to_string(x, 4)) == x
    with pytest.raises(ValueError):
        state_from_string("01a")


def test_shapes_are_immutable():
    s = make_shape([[1], [2, 3]], 3)
    with pytest.raises(Exception):
        s.arity = 4  # frozen dataclass
    assert isinstance(s, FunctionShape)
