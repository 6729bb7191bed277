import numpy as np
import pytest
from helpers import random_dataset, random_fds

from wmrr.consistency import resolve_inconsistency
from wmrr.discovery import discover_rules
from wmrr.errors import InconsistentRuleSet
from wmrr.model import AttributeValuePair, CellValue, Dataset, FunctionalDependency, Row
from wmrr.repair import (
    build_rule_index,
    candidate_rules,
    filter_matching_rules,
    find_matching_rules,
    get_fd_rules,
    repair_dataset,
    repair_tuple,
)
from wmrr.rules import WMRR, ActionKind
from wmrr.similarity import approx_match

s = CellValue.string
NATION, CAPITAL = 2, 3


@pytest.fixture
def rules(dirty, fds):
    return discover_rules(dirty, fds, 0.6)


def by_id(d, tid):
    return next(r for r in d.rows if r.tuple_id == tid)


def test_index_exact_and_similar(rules):
    index = build_rule_index(rules)
    assert index.lookup(AttributeValuePair(NATION, s("China"))) == {0}
    assert index.lookup(AttributeValuePair(NATION, s("Chiena"))) == set()
    assert index.similar(AttributeValuePair(NATION, s("Chiena"))) == {0}
    assert index.similar(AttributeValuePair(CAPITAL, s("Beijing"))) == set()


def test_candidates_from_misspelled_tuple(rules, dirty):
    index = build_rule_index(rules)
    assert candidate_rules(by_id(dirty, "t6"), index) == {0}


def test_get_fd_rules(rules, fds):
    assert get_fd_rules(fds[0], rules) == rules
    assert get_fd_rules(FunctionalDependency((0,), 1), rules) == []


def test_find_matching_rules(rules, dirty):
    assert find_matching_rules(rules, by_id(dirty, "t4")) == rules
    assert find_matching_rules(rules, by_id(dirty, "t3")) == rules
    brazil = Row("x", (s("A"), s("B"), s("Brazil"), s("HongKong")))
    assert find_matching_rules(rules, brazil) == []


def test_filter_prefers_distance_then_w2(fds):
    fd = fds[0]
    r1 = WMRR(1, fd, ((NATION, s("China")),), {s("HongKong")}, s("Beijing"), 0.8, 0.5)
    r2 = WMRR(2, fd, ((NATION, s("Chena")),), {s("HongKong")}, s("Beijing"), 0.8, 0.6)
    t2 = Row("t2", (s("Li"), s("CS"), s("China"), s("HongKong")))
    assert filter_matching_rules([r2, r1], t2) == [r1]
    r3 = WMRR(3, fd, ((NATION, s("Chinb")),), {s("HongKong")}, s("Beijing"), 0.8, 0.1)
    t6 = Row("t6", (s("Pei"), s("MC"), s("Chiena"), s("HongKong")))
    assert filter_matching_rules([r3, r1], t6) == [r1]
    assert filter_matching_rules([r1], t6) == [r1]


def test_repair_tuple_worked_example(rules, dirty, fds):
    index = build_rule_index(rules)
    new, va, actions = repair_tuple(by_id(dirty, "t6"), index, fds)
    assert new.values[NATION] == s("China") and new.values[CAPITAL] == s("Beijing")
    assert va == {NATION, CAPITAL}
    new, _, actions = repair_tuple(by_id(dirty, "t1"), index, fds)
    assert new == by_id(dirty, "t1")
    assert actions and all(a.kind is ActionKind.VERIFY for a in actions)
    lone = Row("z", (s("A"), s("B"), s("Japan"), s("Tokyo")))
    assert repair_tuple(lone, index, fds) == (lone, frozenset(), [])


def test_repair_dataset_worked_example(rules, dirty, clean, fds):
    repaired, report = repair_dataset(dirty, rules, fds)
    assert repaired == clean
    assert report.n_repairs == 5
    assert report.n_verifies == 11
    assert report.rectified_cells() == {("t2", CAPITAL), ("t4", CAPITAL), ("t6", CAPITAL),
                                        ("t3", NATION), ("t6", NATION)}
    assert report.per_fd[fds[0]] == 5


def test_inconsistent_rules_rejected(fds, dirty):
    fd = fds[0]
    a = WMRR(1, fd, ((NATION, s("China")),), {s("HongKong")}, s("Beijing"), 0.8, 0.5)
    b = WMRR(2, fd, ((NATION, s("China")),), {s("HongKong")}, s("Shanghai"), 0.7, 0.5)
    with pytest.raises(InconsistentRuleSet):
        repair_dataset(dirty, [a, b], fds)


def test_verified_attributes_never_rewritten():
    d = Dataset.from_records(["A", "B", "C"], [("a", "b", "c")])
    fds = [FunctionalDependency((0,), 1), FunctionalDependency((1,), 2), FunctionalDependency((2,), 1)]
    rules = [
        WMRR(0, fds[0], ((0, s("a")),), {s("b")}, s("B"), 1.0, 1.0),
        WMRR(1, fds[2], ((2, s("c")),), {s("B")}, s("q"), 1.0, 1.0),
    ]
    repaired, report = repair_dataset(d, rules, fds, check=False)
    assert repaired.rows[0].values == (s("a"), s("B"), s("c"))
    # the second rule still matches, but may only verify its unverified lhs cell
    assert [(a.attribute, a.kind) for a in report.all_actions] == [
        (1, ActionKind.RECTIFY), (0, ActionKind.VERIFY), (2, ActionKind.VERIFY)]


def _scan_candidates(row, rules):
    found = set()
    for attr, value in enumerate(row.values):
        exact = {r.rule_id for r in rules if (attr, value) in r.director}
        if exact:
            found |= exact
        else:
            found |= {r.rule_id for r in rules for a, v in r.director if a == attr and approx_match(v, value)}
    return found


def test_candidates_match_linear_scan():
    rng = np.random.default_rng(31)
    for _ in range(40):
        d = random_dataset(rng, numeric_prob=0.3)
        fds = random_fds(rng, d.schema)
        rules, _ = resolve_inconsistency(discover_rules(d, fds, 0.0))
        index = build_rule_index(rules)
        for row in d.rows:
            assert candidate_rules(row, index) == _scan_candidates(row, rules)
