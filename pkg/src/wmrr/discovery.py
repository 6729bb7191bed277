"""Rule discovery from a dirty dataset and its functional dependencies.

For each FD the tuples are projected onto ``X ∪ {y}`` and grouped by their
exact X pattern. Inside a group the most frequent y value is taken as correct
and every strictly less frequent one as wrong; the resulting rule is kept when
its validity weight ``w1`` reaches ``theta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import CellValue, Dataset, FunctionalDependency
from .rules import WMRR, compute_weights

Pattern = tuple[CellValue, ...]


@dataclass(frozen=True)
class ColumnCodes:
    """A column as dense integer codes; ``values[c]`` is the cell behind code ``c``."""

    codes: np.ndarray
    values: list[CellValue]


def encode_column(d: Dataset, attr: int) -> ColumnCodes:
    # a column holds a single kind, so the bare text or number is an exact key
    seen: dict = {}
    values: list[CellValue] = []
    codes = np.empty(len(d), dtype=np.int64)
    for i, row in enumerate(d.rows):
        v = row.values[attr]
        k = v.text if v.number is None else v.number
        c = seen.get(k)
        if c is None:
            c = seen[k] = len(values)
            values.append(v)
        codes[i] = c
    return ColumnCodes(codes, values)


@dataclass(frozen=True)
class VerticalProjection:
    """The dataset restricted to ``X ∪ {y}`` of one FD, column-encoded."""

    fd: FunctionalDependency
    lhs: tuple[ColumnCodes, ...]
    rhs: ColumnCodes

    def __len__(self):
        return len(self.rhs.codes)

    def pattern(self, i: int) -> Pattern:
        return tuple(col.values[col.codes[i]] for col in self.lhs)


@dataclass(frozen=True)
class PartitionMap:
    """X pattern -> {y value: frequency}; both levels keep first-occurrence order."""

    fd: FunctionalDependency
    entries: dict[Pattern, dict[CellValue, int]]

    def __len__(self):
        return len(self.entries)

    def total(self) -> int:
        return sum(sum(ys.values()) for ys in self.entries.values())


def get_vertical_projection(
    d: Dataset, fd: FunctionalDependency, cache: dict[int, ColumnCodes] | None = None
) -> VerticalProjection:
    """Project onto the FD attributes. ``cache`` shares column encodings across FDs."""
    cache = {} if cache is None else cache
    for a in fd.attributes:
        if a not in cache:
            cache[a] = encode_column(d, a)
    return VerticalProjection(fd, tuple(cache[a] for a in fd.lhs), cache[fd.rhs])


def _group_ids(columns: Sequence[ColumnCodes]) -> np.ndarray:
    """Dense ids of the distinct code combinations across ``columns``."""
    key = columns[0].codes
    for col in columns[1:]:
        width = len(col.values)
        if key.size and int(key.max()) >= (2**62) // max(width, 1):
            key = np.unique(key, return_inverse=True)[1].reshape(-1)
        key = key * width + col.codes
    return key


def get_horizontal_projection(vp: VerticalProjection) -> PartitionMap:
    entries: dict[Pattern, dict[CellValue, int]] = {}
    n = len(vp)
    if n == 0:
        return PartitionMap(vp.fd, entries)
    x = np.unique(_group_ids(vp.lhs), return_inverse=True)[1].reshape(-1)
    pair = x * len(vp.rhs.values) + vp.rhs.codes
    _, first, counts = np.unique(pair, return_index=True, return_counts=True)
    x_first = np.full(int(x.max()) + 1, n, dtype=np.int64)
    np.minimum.at(x_first, x, np.arange(n))
    # partitions in order of first appearance, y values likewise within each
    order = np.lexsort((first, x_first[x[first]]))
    ys_values = vp.rhs.values
    current, ys = -1, None
    for k in order.tolist():
        i = int(first[k])
        g = int(x[i])
        if g != current:
            current = g
            ys = entries.setdefault(vp.pattern(i), {})
        ys[ys_values[vp.rhs.codes[i]]] = int(counts[k])
    return PartitionMap(vp.fd, entries)


def classify_partition(ys: dict[CellValue, int]) -> tuple[CellValue, frozenset[CellValue]] | None:
    """Pick ``(correct, wrong)`` y values, or None when the group yields no rule.

    Empty y values are ignored. A group needs two distinct y values and a
    single most frequent one.
    """
    counted = [(y, n) for y, n in ys.items() if not y.is_empty]
    if len(counted) < 2:
        return None
    top = max(n for _, n in counted)
    leaders = [y for y, n in counted if n == top]
    if len(leaders) != 1:
        return None
    return leaders[0], frozenset(y for y, n in counted if n < top)


def discover_rules(d: Dataset, fds: Sequence[FunctionalDependency], theta: float = 0.6) -> list[WMRR]:
    """Discover rules for every FD, in FD order then first-occurrence order.

    Each candidate rule gets the next id whether or not it is adopted, so a
    rule keeps its id when ``theta`` changes.
    """
    if not 0.0 <= theta <= 1.0:
        raise ValueError("theta must lie in [0, 1]")
    n = len(d)
    rules = []
    next_id = 0
    cache: dict = {}
    for fd in fds:
        xy = get_horizontal_projection(get_vertical_projection(d, fd, cache))
        for x, ys in xy.entries.items():
            if any(v.is_empty for v in x):
                continue
            classified = classify_partition(ys)
            if classified is None:
                continue
            correct, wrong = classified
            both = ys[correct]
            w1 = both / sum(ys.values())
            w2 = both / n
            rule_id = next_id
            next_id += 1
            if w1 >= theta:
                rules.append(WMRR(rule_id, fd, tuple(zip(fd.lhs, x)), wrong, correct, w1, w2))
    return rules


def brute_force_discover(d: Dataset, fds: Sequence[FunctionalDependency], theta: float = 0.6) -> list[WMRR]:
    """Quadratic reference for :func:`discover_rules`; no hashing of patterns.

    Tuples are grouped by pairwise comparison with earlier tuples and weights
    are recounted over the whole dataset.
    """
    rows = d.rows
    rules = []
    next_id = 0
    for fd in fds:
        lhs, rhs = fd.lhs, fd.rhs
        leaders: list[int] = []
        members: dict[int, list[int]] = {}
        for i, row in enumerate(rows):
            for leader in leaders:
                if all(rows[leader].values[a] == row.values[a] for a in lhs):
                    members[leader].append(i)
                    break
            else:
                leaders.append(i)
                members[i] = [i]
        for leader in leaders:
            x = [rows[leader].values[a] for a in lhs]
            if any(v.is_empty for v in x):
                continue
            distinct: list[CellValue] = []
            counts: list[int] = []
            for i in members[leader]:
                y = rows[i].values[rhs]
                if y.is_empty:
                    continue
                for k, seen in enumerate(distinct):
                    if seen == y:
                        counts[k] += 1
                        break
                else:
                    distinct.append(y)
                    counts.append(1)
            if len(distinct) < 2:
                continue
            top = max(counts)
            if counts.count(top) != 1:
                continue
            correct = distinct[counts.index(top)]
            wrong = frozenset(y for y, c in zip(distinct, counts) if c < top)
            director = tuple(zip(lhs, x))
            w1, w2 = compute_weights(director, correct, fd, d)
            rule_id = next_id
            next_id += 1
            if w1 >= theta:
                rules.append(WMRR(rule_id, fd, director, wrong, correct, w1, w2))
    return rules
