"""Cell similarity: edit distance for strings, absolute difference for numbers.

A pattern value approximately matches a tuple value when their distance is
strictly below the threshold of the pattern's kind.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .errors import KindMismatch
from .model import CellValue, Kind, Row


@dataclass(frozen=True)
class SimilarityThreshold:
    """Match thresholds.

    ``string`` is in edit-distance units. For numbers, ``numeric`` is an
    absolute bound when given; otherwise the bound is
    ``max(numeric_rel * |pattern|, numeric_floor)``.
    """

    string: float = 2.0
    numeric: float | None = None
    numeric_rel: float = 1e-3
    numeric_floor: float = 1e-9

    def __post_init__(self):
        for name in ("string", "numeric_rel", "numeric_floor"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} threshold must be non-negative")
        if self.numeric is not None and self.numeric < 0:
            raise ValueError("numeric threshold must be non-negative")

    def numeric_bound(self, pattern: float) -> float:
        if self.numeric is not None:
            return self.numeric
        return max(self.numeric_rel * abs(pattern), self.numeric_floor)

    @property
    def max_edits(self) -> int:
        """Largest integer edit distance still strictly below ``string``."""
        return math.ceil(self.string) - 1


DEFAULT_THRESHOLD = SimilarityThreshold()


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance over code points, unit costs."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        current = [i]
        for j, cb in enumerate(b, 1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def euclidean_distance(a: float, b: float) -> float:
    return abs(a - b)


def sim(a: CellValue, b: CellValue) -> float:
    if a.kind is not b.kind:
        raise KindMismatch(f"cannot compare {a!r} with {b!r}")
    if a.kind is Kind.NUMERIC:
        return euclidean_distance(a.number, b.number)
    return edit_distance(a.text, b.text)


def approx_match(pattern: CellValue, value: CellValue, th: SimilarityThreshold = DEFAULT_THRESHOLD) -> bool:
    if pattern.kind is not value.kind:
        raise KindMismatch(f"cannot compare {pattern!r} with {value!r}")
    if pattern.kind is Kind.NUMERIC:
        return euclidean_distance(pattern.number, value.number) < th.numeric_bound(pattern.number)
    if pattern.text == value.text:
        return 0 < th.string
    # length difference is a lower bound on the edit distance
    if abs(len(pattern.text) - len(value.text)) >= th.string:
        return False
    return edit_distance(pattern.text, value.text) < th.string


def pattern_match(
    dp: Sequence[tuple[int, CellValue]], row: Row, th: SimilarityThreshold = DEFAULT_THRESHOLD
) -> bool:
    return all(approx_match(value, row.values[attr], th) for attr, value in dp)


def rule_tuple_distance(dp: Sequence[tuple[int, CellValue]], row: Row) -> float:
    return sum(sim(value, row.values[attr]) for attr, value in dp)


def deletion_variants(text: str, k: int) -> set[str]:
    variants = {text}
    for n in range(1, min(k, len(text)) + 1):
        for drop in combinations(range(len(text)), n):
            dropped = set(drop)
            variants.add("".join(c for i, c in enumerate(text) if i not in dropped))
    return variants


class SimilarityProbe:
    """Finds the patterns of one attribute that approximately match a value.

    Holds the (pattern, payload) listing and answers ``probe(value)`` with
    every payload whose pattern satisfies ``approx_match(pattern, value)``.
    String patterns are looked up through a symmetric-deletion index when the
    threshold admits at most two edits, numeric ones through a sorted array;
    every candidate is confirmed with ``approx_match`` before it is returned.
    """

    MAX_INDEXED_EDITS = 2

    def __init__(self, entries: Iterable[tuple[CellValue, Hashable]], th: SimilarityThreshold = DEFAULT_THRESHOLD):
        self.th = th
        self.entries = list(entries)
        self._by_pattern: dict[CellValue, list[Hashable]] = defaultdict(list)
        for pattern, payload in self.entries:
            self._by_pattern[pattern].append(payload)
        self._k = th.max_edits
        self._deletion_index: dict[str, set[CellValue]] | None = None
        strings = [p for p in self._by_pattern if p.kind is Kind.STRING]
        if 0 <= self._k <= self.MAX_INDEXED_EDITS:
            self._deletion_index = defaultdict(set)
            for p in strings:
                for variant in deletion_variants(p.text, self._k):
                    self._deletion_index[variant].add(p)
        self._strings = strings
        numbers = sorted((p for p in self._by_pattern if p.kind is Kind.NUMERIC), key=lambda p: p.number)
        self._numbers = numbers
        self._number_keys = [p.number for p in numbers]

    def __len__(self):
        return len(self.entries)

    def _string_candidates(self, value: CellValue) -> Iterable[CellValue]:
        if self._k < 0:
            return ()
        if self._deletion_index is not None:
            found = set()
            for variant in deletion_variants(value.text, self._k):
                found |= self._deletion_index.get(variant, set())
            return found
        return self._strings

    def _numeric_candidates(self, value: CellValue) -> Iterable[CellValue]:
        v = value.number
        th = self.th
        if th.numeric is not None:
            width = th.numeric
        elif th.numeric_rel < 1:
            # any matching pattern p has |p| < (|v| + floor) / (1 - rel)
            width = th.numeric_rel * (abs(v) + th.numeric_floor) / (1 - th.numeric_rel) + th.numeric_floor
            width *= 1 + 1e-9
        else:
            return self._numbers
        lo = bisect_left(self._number_keys, v - width)
        hi = bisect_right(self._number_keys, v + width)
        return self._numbers[lo:hi]

    def probe(self, value: CellValue) -> list[Hashable]:
        if value.kind is Kind.NUMERIC:
            candidates = self._numeric_candidates(value)
        else:
            candidates = self._string_candidates(value)
        hits = []
        for pattern in candidates:
            if approx_match(pattern, value, self.th):
                hits.extend(self._by_pattern[pattern])
        return hits
