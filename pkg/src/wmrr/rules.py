"""Weighted matching rectifying rules: structure, weights, matching and application."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Hashable, Iterable

from .errors import EmptySupport, NotMatching, SchemaMismatch
from .model import CellValue, Dataset, FunctionalDependency, Row, Schema
from .similarity import DEFAULT_THRESHOLD, SimilarityThreshold, pattern_match


@dataclass(frozen=True)
class WMRR:
    """``[X ≈ director] ∧ [y ∈ wrong_patterns] ⇒ [director] ∧ [correct_pattern]``.

    ``director`` lists ``(attribute id, value)`` for every lhs attribute of
    ``fd`` in ascending id order. The director doubles as the correction
    written into the lhs cells when the rule is applied.
    """

    rule_id: int
    fd: FunctionalDependency
    director: tuple[tuple[int, CellValue], ...]
    wrong_patterns: frozenset[CellValue]
    correct_pattern: CellValue
    w1: float
    w2: float

    def __post_init__(self):
        director = tuple(sorted(((int(a), v) for a, v in self.director), key=lambda p: p[0]))
        object.__setattr__(self, "director", director)
        object.__setattr__(self, "wrong_patterns", frozenset(self.wrong_patterns))
        if tuple(a for a, _ in director) != self.fd.lhs:
            raise SchemaMismatch(f"rule {self.rule_id}: director must cover exactly the lhs attributes")
        if not self.wrong_patterns:
            raise SchemaMismatch(f"rule {self.rule_id}: wrong patterns must be non-empty")
        if self.correct_pattern in self.wrong_patterns:
            raise SchemaMismatch(f"rule {self.rule_id}: correct pattern is listed as wrong")
        if not 0.0 <= self.w2 <= self.w1 <= 1.0:
            raise SchemaMismatch(f"rule {self.rule_id}: weights must satisfy 0 <= w2 <= w1 <= 1")

    @property
    def lhs(self) -> tuple[int, ...]:
        return self.fd.lhs

    @property
    def rhs(self) -> int:
        return self.fd.rhs

    def director_value(self, attr_id: int) -> CellValue:
        for a, v in self.director:
            if a == attr_id:
                return v
        raise KeyError(attr_id)

    def content_key(self) -> tuple:
        """Total order over rule content, independent of ``rule_id``."""
        return (
            self.fd.lhs,
            self.fd.rhs,
            tuple(v.key for _, v in self.director),
            self.correct_pattern.key,
            tuple(sorted(v.key for v in self.wrong_patterns)),
            -self.w1,
            -self.w2,
        )

    def with_id(self, rule_id: int) -> WMRR:
        return WMRR(rule_id, self.fd, self.director, self.wrong_patterns, self.correct_pattern, self.w1, self.w2)

    def describe(self, schema: Schema) -> str:
        lhs = " ∧ ".join(f"{schema.name_of(a)} ≈ {v.text!r}" for a, v in self.director)
        wrong = ", ".join(sorted(repr(v.text) for v in self.wrong_patterns))
        y = schema.name_of(self.rhs)
        return (f"r{self.rule_id}: [{lhs}] ∧ [{y} ∈ {{{wrong}}}] ⇒ {y} := {self.correct_pattern.text!r}"
                f"  (w1={self.w1:.4g}, w2={self.w2:.4g})")


class MatchKind(Enum):
    NO_MATCH = "no_match"
    WRONG_Y = "wrong_y"
    CORRECT_Y = "correct_y"


class ActionKind(Enum):
    RECTIFY = "rectify"
    VERIFY = "verify"


@dataclass(frozen=True, slots=True)
class RepairAction:
    tuple_id: Hashable
    attribute: int
    old: CellValue
    new: CellValue
    rule_id: int
    kind: ActionKind


def match_rule(rule: WMRR, row: Row, th: SimilarityThreshold = DEFAULT_THRESHOLD) -> MatchKind:
    y = row.values[rule.rhs]
    if y == rule.correct_pattern:
        kind = MatchKind.CORRECT_Y
    elif y in rule.wrong_patterns:
        kind = MatchKind.WRONG_Y
    else:
        return MatchKind.NO_MATCH
    if not pattern_match(rule.director, row, th):
        return MatchKind.NO_MATCH
    return kind


def _write(row: Row, rule: WMRR, attr: int, new: CellValue, updates: dict, actions: list):
    old = row.values[attr]
    kind = ActionKind.VERIFY if old == new else ActionKind.RECTIFY
    if kind is ActionKind.RECTIFY:
        updates[attr] = new
    actions.append(RepairAction(row.tuple_id, attr, old, new, rule.rule_id, kind))


def apply_rule(
    rule: WMRR,
    row: Row,
    verified: Iterable[int] = (),
    th: SimilarityThreshold = DEFAULT_THRESHOLD,
) -> tuple[Row, frozenset[int], list[RepairAction]]:
    """Apply a matching rule under the verified-attribute guards.

    The rhs cell is written (and verified) unless it is already verified.
    When the lhs is not entirely verified, its unverified cells are written
    with the director values and all of the lhs becomes verified. A cell that
    is already verified is never written.
    """
    if match_rule(rule, row, th) is MatchKind.NO_MATCH:
        raise NotMatching(f"tuple {row.tuple_id!r} does not match rule {rule.rule_id}")
    va = set(verified)
    updates: dict[int, CellValue] = {}
    actions: list[RepairAction] = []
    if rule.rhs not in va:
        _write(row, rule, rule.rhs, rule.correct_pattern, updates, actions)
        va.add(rule.rhs)
    if not set(rule.lhs) <= va:
        for attr, value in rule.director:
            if attr not in va:
                _write(row, rule, attr, value, updates, actions)
        va.update(rule.lhs)
    return row.replace(updates), frozenset(va), actions


def count_support(director, correct_pattern: CellValue, rhs: int, d: Dataset) -> tuple[int, int]:
    """Exact counts ``(|DP(X)|_D, |DP(X) ∪ cp(y)|_D)`` by a full scan."""
    carrying = both = 0
    for row in d.rows:
        if all(row.values[a] == v for a, v in director):
            carrying += 1
            if row.values[rhs] == correct_pattern:
                both += 1
    return carrying, both


def compute_weights(director, correct_pattern: CellValue, fd: FunctionalDependency, d: Dataset) -> tuple[float, float]:
    """``w1 = |DP ∪ cp| / |DP|`` and ``w2 = |DP ∪ cp| / |D|`` by exact counting."""
    director = tuple(director)
    if not director:
        raise ValueError("director pattern must be non-empty")
    carrying, both = count_support(director, correct_pattern, fd.rhs, d)
    if carrying == 0:
        raise EmptySupport("no tuple carries the director pattern")
    return both / carrying, both / len(d)
