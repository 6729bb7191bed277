"""Pairwise rule consistency checking and automatic conflict resolution."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .rules import WMRR
from .similarity import DEFAULT_THRESHOLD, SimilarityThreshold, approx_match


class Condition(Enum):
    SHARED_WRONG_DIFFERENT_CORRECT = 1
    DIRECTOR_OF_I_WRONG_IN_J = 2
    DIRECTOR_OF_J_WRONG_IN_I = 3
    MUTUAL_DIRECTOR_WRONG = 4


@dataclass(frozen=True)
class ConsistencyVerdict:
    pair: tuple[int, int]
    condition: Condition | None = None

    @property
    def consistent(self) -> bool:
        return self.condition is None


@dataclass(frozen=True)
class Removal:
    removed: int
    survivor: int
    condition: Condition
    removed_w1: float
    survivor_w1: float


@dataclass
class ResolutionLog:
    removals: list[Removal] = field(default_factory=list)

    def __len__(self):
        return len(self.removals)

    def __iter__(self):
        return iter(self.removals)

    @property
    def removed_ids(self) -> list[int]:
        return [r.removed for r in self.removals]


def co_matchable(ri: WMRR, rj: WMRR, th: SimilarityThreshold = DEFAULT_THRESHOLD) -> bool:
    """True when one tuple could match both rules' directors."""
    dj = dict(rj.director)
    return all(approx_match(v, dj[a], th) for a, v in ri.director if a in dj)


def check_pair(ri: WMRR, rj: WMRR, th: SimilarityThreshold = DEFAULT_THRESHOLD) -> ConsistencyVerdict:
    pair = (ri.rule_id, rj.rule_id)
    if not co_matchable(ri, rj, th):
        return ConsistencyVerdict(pair)
    yi, yj = ri.rhs, rj.rhs
    xi, xj = set(ri.lhs), set(rj.lhs)
    if yi == yj:
        if ri.correct_pattern != rj.correct_pattern and ri.wrong_patterns & rj.wrong_patterns:
            return ConsistencyVerdict(pair, Condition.SHARED_WRONG_DIFFERENT_CORRECT)
    elif yj in xi and yi not in xj and ri.director_value(yj) in rj.wrong_patterns:
        return ConsistencyVerdict(pair, Condition.DIRECTOR_OF_I_WRONG_IN_J)
    elif yi in xj and yj not in xi and rj.director_value(yi) in ri.wrong_patterns:
        return ConsistencyVerdict(pair, Condition.DIRECTOR_OF_J_WRONG_IN_I)
    elif (yi in xj and yj in xi and rj.director_value(yi) in ri.wrong_patterns
          and ri.director_value(yj) in rj.wrong_patterns):
        return ConsistencyVerdict(pair, Condition.MUTUAL_DIRECTOR_WRONG)
    return ConsistencyVerdict(pair)


def _confidence(rule: WMRR) -> tuple:
    # the minimum loses: lower w1, then lower w2, then the larger id
    return (rule.w1, rule.w2, -rule.rule_id)


def conflict_candidates(rules: Iterable[WMRR]) -> list[tuple[int, int]]:
    """Id pairs ``(i, j)``, ``i < j``, that could violate some condition.

    Every condition needs a value that one rule treats as wrong for an
    attribute while the other rule holds that same value, either as a wrong
    pattern on the same rhs or as a director value. Pairs without such a
    shared (attribute, value) are consistent and are not returned.
    """
    wrong_on: dict[tuple, list[int]] = defaultdict(list)
    director_on: dict[tuple, list[int]] = defaultdict(list)
    for r in rules:
        for v in r.wrong_patterns:
            wrong_on[(r.rhs, v)].append(r.rule_id)
        for a, v in r.director:
            director_on[(a, v)].append(r.rule_id)
    pairs = set()
    for key, ids in wrong_on.items():
        others = ids + director_on.get(key, [])
        for i in ids:
            for j in others:
                if i != j:
                    pairs.add((min(i, j), max(i, j)))
    return sorted(pairs)


def _resolve(by_id: dict[int, WMRR], pairs: Iterable[tuple[int, int]], th) -> tuple[list[WMRR], ResolutionLog]:
    alive = dict(by_id)
    log = ResolutionLog()
    for i, j in pairs:
        if i not in alive or j not in alive:
            continue
        verdict = check_pair(alive[i], alive[j], th)
        if verdict.consistent:
            continue
        loser, winner = sorted((alive[i], alive[j]), key=_confidence)
        del alive[loser.rule_id]
        log.removals.append(Removal(loser.rule_id, winner.rule_id, verdict.condition, loser.w1, winner.w1))
    return [alive[k] for k in sorted(alive)], log


def _index(rules: Sequence[WMRR]) -> dict[int, WMRR]:
    by_id = {}
    for r in rules:
        if r.rule_id in by_id:
            raise ValueError(f"duplicate rule id {r.rule_id}")
        by_id[r.rule_id] = r
    return by_id


def resolve_inconsistency(
    rules: Sequence[WMRR], th: SimilarityThreshold = DEFAULT_THRESHOLD
) -> tuple[list[WMRR], ResolutionLog]:
    """Drop the less confident rule of every inconsistent pair.

    Pairs are visited in ascending ``(i, j)`` id order and a dropped rule is
    never checked again. Only pairs from :func:`conflict_candidates` are
    checked; the others cannot be inconsistent, so the outcome equals a sweep
    over all pairs.
    """
    by_id = _index(rules)
    return _resolve(by_id, conflict_candidates(by_id.values()), th)


def resolve_all_pairs(
    rules: Sequence[WMRR], th: SimilarityThreshold = DEFAULT_THRESHOLD
) -> tuple[list[WMRR], ResolutionLog]:
    """Same contract as :func:`resolve_inconsistency`, sweeping every pair."""
    by_id = _index(rules)
    ids = sorted(by_id)
    pairs = ((a, b) for n, a in enumerate(ids) for b in ids[n + 1:])
    return _resolve(by_id, pairs, th)


def find_violations(rules: Sequence[WMRR], th: SimilarityThreshold = DEFAULT_THRESHOLD) -> list[ConsistencyVerdict]:
    """Exhaustive check of every ordered-by-id pair; returns the inconsistent ones."""
    ordered = sorted(rules, key=lambda r: r.rule_id)
    found = []
    for n, ri in enumerate(ordered):
        for rj in ordered[n + 1:]:
            verdict = check_pair(ri, rj, th)
            if not verdict.consistent:
                found.append(verdict)
    return found


def is_consistent(rules: Sequence[WMRR], th: SimilarityThreshold = DEFAULT_THRESHOLD) -> bool:
    """Fast consistency decision over the candidate pairs only."""
    by_id = _index(rules)
    return all(check_pair(by_id[i], by_id[j], th).consistent for i, j in conflict_candidates(by_id.values()))
