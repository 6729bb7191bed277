import numpy as np
import pytest
from helpers import adversarial_rules

from wmrr.consistency import (
    Condition,
    check_pair,
    co_matchable,
    conflict_candidates,
    find_violations,
    is_consistent,
    resolve_all_pairs,
    resolve_inconsistency,
)
from wmrr.model import CellValue, FunctionalDependency
from wmrr.rules import WMRR

s = CellValue.string
NAME, DEPT, NATION, CAPITAL = range(4)
NATION_CAPITAL = FunctionalDependency((NATION,), CAPITAL)


def rule(rid, lhs, rhs, director, wrong, correct, w1=0.8, w2=0.4):
    fd = FunctionalDependency(tuple(lhs), rhs)
    return WMRR(rid, fd, tuple(zip(lhs, (s(v) for v in director))), {s(v) for v in wrong}, s(correct), w1, w2)


@pytest.fixture
def r_a():
    return rule(1, [NATION], CAPITAL, ["China"], ["HongKong"], "Beijing", 0.8)


def test_condition_1(r_a):
    r_b = rule(2, [NATION], CAPITAL, ["China"], ["HongKong"], "Shanghai", 0.5)
    assert check_pair(r_a, r_b).condition is Condition.SHARED_WRONG_DIFFERENT_CORRECT


def test_disjoint_rules_consistent(r_a):
    r_c = rule(3, [DEPT], NAME, ["CS"], ["Li"], "Wu")
    assert check_pair(r_a, r_c).consistent


def test_condition_3(r_a):
    # r_d's director value for Capital is wrong for r_a
    r_d = rule(4, [CAPITAL], DEPT, ["HongKong"], ["AI"], "CS")
    assert check_pair(r_a, r_d).condition is Condition.DIRECTOR_OF_J_WRONG_IN_I
    assert check_pair(r_d, r_a).condition is Condition.DIRECTOR_OF_I_WRONG_IN_J


def test_condition_4(r_a):
    r_e = rule(5, [CAPITAL], NATION, ["HongKong"], ["China"], "Japan")
    assert check_pair(r_a, r_e).condition is Condition.MUTUAL_DIRECTOR_WRONG


def test_gate_blocks_incompatible_directors(r_a):
    r_b = rule(2, [NATION], CAPITAL, ["Japan"], ["HongKong"], "Tokyo")
    assert not co_matchable(r_a, r_b)
    assert check_pair(r_a, r_b).consistent
    r_near = rule(2, [NATION], CAPITAL, ["Chiena"], ["HongKong"], "Tokyo")
    assert check_pair(r_a, r_near).condition is Condition.SHARED_WRONG_DIFFERENT_CORRECT


def test_resolution_keeps_stronger(r_a):
    r_b = rule(2, [NATION], CAPITAL, ["China"], ["HongKong"], "Shanghai", 0.5, 0.1)
    kept, log = resolve_inconsistency([r_b, r_a])
    assert kept == [r_a]
    assert log.removed_ids == [2] and log.removals[0].survivor == 1


def test_resolution_tie_breaks():
    a = rule(1, [NATION], CAPITAL, ["China"], ["HongKong"], "Beijing", 0.8, 0.4)
    b = rule(2, [NATION], CAPITAL, ["China"], ["HongKong"], "Shanghai", 0.8, 0.2)
    assert resolve_inconsistency([a, b])[1].removed_ids == [2]
    c = rule(3, [NATION], CAPITAL, ["China"], ["HongKong"], "Tokyo", 0.8, 0.4)
    assert resolve_inconsistency([a, c])[1].removed_ids == [3]


def test_consistent_set_unchanged(r_a):
    r_c = rule(3, [DEPT], NAME, ["CS"], ["Li"], "Wu")
    kept, log = resolve_inconsistency([r_a, r_c])
    assert kept == [r_a, r_c] and len(log) == 0


def test_three_way_conflict():
    rs = [rule(i, [NATION], CAPITAL, ["China"], ["HongKong"], c, w)
          for i, (c, w) in enumerate([("Beijing", 0.9), ("Shanghai", 0.7), ("Tokyo", 0.6)])]
    kept, log = resolve_inconsistency(rs)
    assert [r.rule_id for r in kept] == [0]
    assert find_violations(kept) == []


def test_duplicate_ids_rejected(r_a):
    with pytest.raises(ValueError):
        resolve_inconsistency([r_a, r_a])


def test_candidate_pruning_matches_full_sweep():
    rng = np.random.default_rng(21)
    for _ in range(150):
        rules = adversarial_rules(rng, int(rng.integers(2, 40)))
        fast, fast_log = resolve_inconsistency(rules)
        full, full_log = resolve_all_pairs(rules)
        assert fast == full and fast_log == full_log
        candidates = set(conflict_candidates(rules))
        for v in find_violations(rules):
            assert tuple(sorted(v.pair)) in candidates
        assert is_consistent(fast)
        assert is_consistent(rules) == (find_violations(rules) == [])
