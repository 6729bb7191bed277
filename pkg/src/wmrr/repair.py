"""Rule-based repair of a dataset with a consistent rule set.

Each tuple is repaired on its own: candidate rules are collected through the
rule index, then for every FD in order the matching rules are filtered down
to the closest, best supported one and applied under the verified-attribute
guards.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .consistency import is_consistent
from .errors import InconsistentRuleSet
from .model import AttributeValuePair, Dataset, FunctionalDependency, Row, tuple_pairs
from .rules import WMRR, ActionKind, MatchKind, RepairAction, apply_rule, match_rule
from .similarity import DEFAULT_THRESHOLD, SimilarityProbe, SimilarityThreshold, rule_tuple_distance


class RuleIndex:
    """Attribute-value pair -> ids of rules whose director holds that pair.

    ``listing[a]`` keeps ``(director value, rule id)`` for every rule with
    ``a`` in its lhs; similarity probes only scan (an index over) the listing
    of the probed attribute.
    """

    def __init__(self, rules: Iterable[WMRR], th: SimilarityThreshold = DEFAULT_THRESHOLD):
        self.th = th
        self.rules: dict[int, WMRR] = {}
        self.exact: dict[AttributeValuePair, set[int]] = defaultdict(set)
        self.listing: dict[int, list[tuple]] = defaultdict(list)
        for rule in sorted(rules, key=lambda r: r.rule_id):
            if rule.rule_id in self.rules:
                raise ValueError(f"duplicate rule id {rule.rule_id}")
            self.rules[rule.rule_id] = rule
            for attr, value in rule.director:
                self.exact[AttributeValuePair(attr, value)].add(rule.rule_id)
                self.listing[attr].append((value, rule.rule_id))
        self.exact = dict(self.exact)
        self.listing = dict(self.listing)
        self._probes = {a: SimilarityProbe(entries, th) for a, entries in self.listing.items()}

    def __len__(self):
        return len(self.exact)

    def lookup(self, pair: AttributeValuePair) -> set[int]:
        return self.exact.get(pair, set())

    def similar(self, pair: AttributeValuePair) -> set[int]:
        probe = self._probes.get(pair.attribute)
        if probe is None:
            return set()
        return set(probe.probe(pair.value))


def build_rule_index(rules: Iterable[WMRR], th: SimilarityThreshold = DEFAULT_THRESHOLD) -> RuleIndex:
    return RuleIndex(rules, th)


def candidate_rules(row: Row, index: RuleIndex) -> set[int]:
    found: set[int] = set()
    for pair in tuple_pairs(row):
        hits = index.lookup(pair)
        if hits:
            found |= hits
        else:
            found |= index.similar(pair)
    return found


def get_fd_rules(fd: FunctionalDependency, candidates: Iterable[WMRR]) -> list[WMRR]:
    return [r for r in candidates if r.lhs == fd.lhs and r.rhs == fd.rhs]


def find_matching_rules(rules: Iterable[WMRR], row: Row, th: SimilarityThreshold = DEFAULT_THRESHOLD) -> list[WMRR]:
    return [r for r in rules if match_rule(r, row, th) is not MatchKind.NO_MATCH]


def filter_matching_rules(rules: Sequence[WMRR], row: Row) -> list[WMRR]:
    """Keep the closest rules, then the best supported (largest ``w2``).

    A remaining tie is broken by rule content rather than by id, so the choice
    does not depend on how rules were numbered.
    """
    if not rules:
        return []
    distances = [rule_tuple_distance(r.director, row) for r in rules]
    nearest = min(distances)
    closest = [r for r, dist in zip(rules, distances) if dist == nearest]
    best = max(r.w2 for r in closest)
    closest = [r for r in closest if r.w2 == best]
    return [min(closest, key=WMRR.content_key)]


def repair_tuple(
    row: Row,
    index: RuleIndex,
    fds: Sequence[FunctionalDependency],
    th: SimilarityThreshold = DEFAULT_THRESHOLD,
) -> tuple[Row, frozenset[int], list[RepairAction]]:
    """Repair one tuple; returns the repaired tuple, its verified attributes and the action log.

    Candidates come from the input tuple. Matching, distance and application
    use the tuple as repaired so far.
    """
    candidates = [index.rules[i] for i in sorted(candidate_rules(row, index))]
    current = row
    verified: frozenset[int] = frozenset()
    actions: list[RepairAction] = []
    if not candidates:
        return current, verified, actions
    for fd in fds:
        fd_rules = get_fd_rules(fd, candidates)
        if not fd_rules:
            continue
        matching = find_matching_rules(fd_rules, current, th)
        if not matching:
            continue
        for rule in filter_matching_rules(matching, current):
            current, verified, done = apply_rule(rule, current, verified, th)
            actions.extend(done)
    return current, verified, actions


@dataclass
class RepairReport:
    actions: dict[Hashable, list[RepairAction]] = field(default_factory=dict)
    per_fd: Counter = field(default_factory=Counter)

    @property
    def all_actions(self) -> list[RepairAction]:
        return [a for acts in self.actions.values() for a in acts]

    @property
    def n_repairs(self) -> int:
        return sum(a.kind is ActionKind.RECTIFY for acts in self.actions.values() for a in acts)

    @property
    def n_verifies(self) -> int:
        return sum(a.kind is ActionKind.VERIFY for acts in self.actions.values() for a in acts)

    def rectified_cells(self) -> set[tuple[Hashable, int]]:
        return {(a.tuple_id, a.attribute) for a in self.all_actions if a.kind is ActionKind.RECTIFY}


def repair_dataset(
    d: Dataset,
    rules: Sequence[WMRR],
    fds: Sequence[FunctionalDependency],
    th: SimilarityThreshold = DEFAULT_THRESHOLD,
    check: bool = True,
) -> tuple[Dataset, RepairReport]:
    if check and not is_consistent(rules, th):
        raise InconsistentRuleSet("rule set is not consistent; resolve it before repairing")
    index = build_rule_index(rules, th)
    fd_of = {r.rule_id: r.fd for r in rules}
    report = RepairReport()
    repaired = []
    for row in d.rows:
        new_row, _, actions = repair_tuple(row, index, fds, th)
        repaired.append(new_row)
        if actions:
            report.actions[row.tuple_id] = actions
            for a in actions:
                if a.kind is ActionKind.RECTIFY:
                    report.per_fd[fd_of[a.rule_id]] += 1
    return d.with_rows(repaired), report
