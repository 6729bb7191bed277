"""Noise injection, accuracy metrics and the end-to-end experiment driver."""

from __future__ import annotations

import math
import string
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Sequence

import numpy as np

from .consistency import resolve_inconsistency
from .discovery import classify_partition, discover_rules, get_horizontal_projection, get_vertical_projection
from .errors import Misaligned
from .model import CellValue, Dataset, FunctionalDependency, Kind, Row, cell_kind, fd_attributes
from .repair import repair_dataset
from .rules import WMRR, MatchKind, match_rule
from .similarity import DEFAULT_THRESHOLD, SimilarityProbe, SimilarityThreshold, edit_distance

TYPO_ALPHABET = string.ascii_letters


class ErrorKind(Enum):
    TYPO = "typo"
    ACTIVE_DOMAIN = "active_domain"


@dataclass(frozen=True)
class NoiseSpec:
    """How to corrupt a clean dataset.

    ``noise_rate`` is the fraction of FD-covered cells to corrupt and
    ``typo_rate`` the share of those that become typos rather than values
    copied from other tuples. With ``lhs_typos_only`` the attributes on the
    left of some FD only ever receive typos.
    """

    noise_rate: float = 0.10
    typo_rate: float = 0.5
    seed: int = 0
    attributes: tuple[int, ...] | None = None
    lhs_typos_only: bool = False

    def __post_init__(self):
        for name in ("noise_rate", "typo_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")


@dataclass(frozen=True)
class ErrorEntry:
    tuple_id: Hashable
    attribute: int
    clean: CellValue
    dirty: CellValue
    kind: ErrorKind


@dataclass
class ErrorLog:
    entries: list[ErrorEntry] = field(default_factory=list)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def cells(self) -> set[tuple[Hashable, int]]:
        return {(e.tuple_id, e.attribute) for e in self.entries}


def make_typo(value: CellValue, rng: np.random.Generator) -> CellValue:
    """One random edit that is guaranteed to change the value.

    Strings get a single insertion, deletion or substitution (no deletion for
    one-character strings). Numbers get one digit replaced.
    """
    if value.kind is Kind.NUMERIC:
        return _numeric_typo(value, rng)
    text = value.text
    ops = ["insert"]
    if len(text) >= 1:
        ops.append("substitute")
    if len(text) >= 2:
        ops.append("delete")
    op = ops[rng.integers(len(ops))]
    if op == "insert":
        pos = int(rng.integers(len(text) + 1))
        new = text[:pos] + TYPO_ALPHABET[rng.integers(len(TYPO_ALPHABET))] + text[pos:]
    elif op == "delete":
        pos = int(rng.integers(len(text)))
        new = text[:pos] + text[pos + 1:]
    else:
        pos = int(rng.integers(len(text)))
        choices = TYPO_ALPHABET.replace(text[pos], "")
        new = text[:pos] + choices[rng.integers(len(choices))] + text[pos + 1:]
    return CellValue.string(new)


def _numeric_typo(value: CellValue, rng: np.random.Generator) -> CellValue:
    text = value.text
    positions = [i for i, c in enumerate(text) if c.isdigit()]
    pos = positions[rng.integers(len(positions))]
    leading = pos == positions[0] and len(positions) > 1 and text[pos + 1:pos + 2] not in (".", "")
    choices = [d for d in string.digits if d != text[pos] and not (leading and d == "0")]
    new = text[:pos] + choices[rng.integers(len(choices))] + text[pos + 1:]
    return cell_kind(new, Kind.NUMERIC)


def _active_domain_value(column: list[CellValue], current: CellValue, rng: np.random.Generator) -> CellValue | None:
    """A value copied from a random tuple whose cell differs from ``current``."""
    for _ in range(64):
        candidate = column[rng.integers(len(column))]
        if candidate != current:
            return candidate
    others = [v for v in column if v != current]
    if not others:
        return None
    return others[rng.integers(len(others))]


def inject_noise(clean: Dataset, fds: Sequence[FunctionalDependency], spec: NoiseSpec = NoiseSpec()) -> tuple[Dataset, ErrorLog]:
    """Corrupt ``floor(noise_rate * #cells)`` distinct cells of the FD attributes.

    Cells are drawn uniformly without replacement from a generator seeded by
    ``spec.seed``. An active-domain error falls back to a typo when the
    attribute holds a single distinct value.
    """
    attrs = list(spec.attributes) if spec.attributes is not None else fd_attributes(fds)
    lhs_attrs = {a for fd in fds for a in fd.lhs}
    rng = np.random.default_rng(spec.seed)
    n_cells = len(clean) * len(attrs)
    budget = math.floor(spec.noise_rate * n_cells + 1e-9)
    log = ErrorLog()
    if budget == 0:
        return clean, log
    picked = np.sort(rng.choice(n_cells, size=budget, replace=False))
    columns = {a: clean.column(a) for a in attrs}
    rows = [list(row.values) for row in clean.rows]
    for cell in picked:
        r, a = divmod(int(cell), len(attrs))
        attr = attrs[a]
        original = rows[r][attr]
        want_typo = rng.random() < spec.typo_rate or (spec.lhs_typos_only and attr in lhs_attrs)
        dirty = None if want_typo else _active_domain_value(columns[attr], original, rng)
        kind = ErrorKind.ACTIVE_DOMAIN
        if dirty is None:
            dirty, kind = make_typo(original, rng), ErrorKind.TYPO
        rows[r][attr] = dirty
        log.entries.append(ErrorEntry(clean.rows[r].tuple_id, attr, original, dirty, kind))
    out = clean.with_rows(Row(row.tuple_id, tuple(values)) for row, values in zip(clean.rows, rows))
    return out, log


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f_measure: float
    repair_count: int
    correct_count: int = 0
    wrong_count: int = 0

    def __str__(self):
        return (f"precision={self.precision:.3f} recall={self.recall:.3f} "
                f"f_measure={self.f_measure:.3f} repairs={self.repair_count}")


def f_measure(precision: float, recall: float) -> float:
    total = precision + recall
    return 2 * precision * recall / total if total > 0 else 0.0


def _check_aligned(*datasets: Dataset):
    first = datasets[0]
    key = [(a.name, a.kind) for a in first.schema.attributes]
    ids = [r.tuple_id for r in first.rows]
    for other in datasets[1:]:
        if [(a.name, a.kind) for a in other.schema.attributes] != key:
            raise Misaligned("datasets have different schemas")
        if [r.tuple_id for r in other.rows] != ids:
            raise Misaligned("datasets have different tuple ids or order")


def evaluate(repaired: Dataset, dirty: Dataset, clean: Dataset) -> Metrics:
    """Cell-level precision and recall of a repair.

    Precision is 1.0 when nothing was changed and recall is 1.0 when there
    was nothing to fix.
    """
    _check_aligned(repaired, dirty, clean)
    changed = correct = wrong = 0
    for rr, dr, cr in zip(repaired.rows, dirty.rows, clean.rows):
        for rv, dv, cv in zip(rr.values, dr.values, cr.values):
            if dv != cv:
                wrong += 1
            if rv != dv:
                changed += 1
                if rv == cv:
                    correct += 1
    precision = correct / changed if changed else 1.0
    recall = correct / wrong if wrong else 1.0
    return Metrics(precision, recall, f_measure(precision, recall), changed, correct, wrong)


def precision_preconditions(
    clean: Dataset,
    dirty: Dataset,
    fds: Sequence[FunctionalDependency],
    log: ErrorLog,
    th: SimilarityThreshold = DEFAULT_THRESHOLD,
) -> list[str]:
    """Conditions under which every discovered rule is a correct rule.

    Returns a description of each violation; an empty list means:

    * lhs attributes only carry typos,
    * distinct clean values of each lhs attribute are far enough apart that a
      single typo stays within the match threshold of its own value only,
    * every partition keyed on a clean lhs pattern has one clean y value,
      which strictly dominates every other y value present,
    * partitions keyed on a corrupted lhs pattern yield no rule.
    """
    problems = []
    _check_aligned(clean, dirty)
    lhs_attrs = sorted({a for fd in fds for a in fd.lhs})
    for e in log:
        if e.attribute in lhs_attrs and e.kind is not ErrorKind.TYPO:
            problems.append(f"active-domain error on lhs attribute {e.attribute} of tuple {e.tuple_id!r}")
    for a in lhs_attrs:
        problems.extend(_separation_problems(clean, a, th))
    for fd in fds:
        clean_y = {}
        for row in clean.rows:
            x = tuple(row.values[a] for a in fd.lhs)
            clean_y.setdefault(x, set()).add(row.values[fd.rhs])
        xy = get_horizontal_projection(get_vertical_projection(dirty, fd))
        for x, ys in xy.entries.items():
            if x in clean_y:
                truth = clean_y[x]
                if len(truth) != 1:
                    problems.append(f"clean data violates {fd} at {x!r}")
                    continue
                (good,) = truth
                top = ys.get(good, 0)
                if any(n >= top for y, n in ys.items() if y != good):
                    problems.append(f"{fd}: clean value {good!r} does not dominate at {x!r}")
            elif classify_partition(ys) is not None:
                problems.append(f"{fd}: corrupted pattern {x!r} yields a rule")
    return problems


def _separation_problems(clean: Dataset, attr: int, th: SimilarityThreshold) -> list[str]:
    values = sorted({v for v in clean.column(attr)}, key=lambda v: v.key)
    if not values or values[0].kind is Kind.NUMERIC:
        return []
    need = 2 * max(th.max_edits, 0) + 1
    probe = SimilarityProbe(((v, v) for v in values), SimilarityThreshold(string=need))
    problems = []
    for v in values:
        close = [o for o in probe.probe(v) if o != v]
        for o in close:
            if edit_distance(v.text, o.text) < need and v.key < o.key:
                problems.append(f"attribute {attr}: {v.text!r} and {o.text!r} are too similar")
    return problems


def covered_errors(
    clean: Dataset,
    dirty: Dataset,
    log: ErrorLog,
    rules: Sequence[WMRR],
    th: SimilarityThreshold = DEFAULT_THRESHOLD,
) -> set[tuple[Hashable, int]]:
    """Error cells that some rule can fix directly.

    A cell is covered when a rule mentions its attribute, carries the clean
    lhs and rhs values of its tuple, and matches the dirty tuple.
    """
    clean_rows = {r.tuple_id: r for r in clean.rows}
    dirty_rows = {r.tuple_id: r for r in dirty.rows}
    by_attr: dict[int, list[WMRR]] = {}
    for rule in rules:
        for a in rule.fd.attributes:
            by_attr.setdefault(a, []).append(rule)
    covered = set()
    for e in log:
        c, d = clean_rows[e.tuple_id], dirty_rows[e.tuple_id]
        for rule in by_attr.get(e.attribute, []):
            if rule.correct_pattern != c.values[rule.rhs]:
                continue
            if any(c.values[a] != v for a, v in rule.director):
                continue
            if match_rule(rule, d, th) is not MatchKind.NO_MATCH:
                covered.add((e.tuple_id, e.attribute))
                break
    return covered


@dataclass
class ExperimentRow:
    typo_rate: float
    theta: float
    n_errors: int
    n_rules: int
    n_consistent: int
    n_repair: int
    precision: float
    recall: float
    f_measure: float
    timings: dict[str, float] = field(default_factory=dict)


def run_experiment(
    clean: Dataset,
    fds: Sequence[FunctionalDependency],
    thetas: Sequence[float] = (0.6,),
    typo_rates: Sequence[float] = (0.5,),
    noise_rate: float = 0.10,
    seed: int = 0,
    th: SimilarityThreshold = DEFAULT_THRESHOLD,
    lhs_typos_only: bool = False,
    timings: bool = False,
) -> list[ExperimentRow]:
    """Inject, discover, resolve, repair and evaluate for every sweep point.

    Each typo rate gets one dirty instance (same seed for every rate), shared
    by all values of ``theta``.
    """
    out = []
    for typo_rate in typo_rates:
        spec = NoiseSpec(noise_rate, typo_rate, seed, lhs_typos_only=lhs_typos_only)
        t0 = time.perf_counter()
        dirty, log = inject_noise(clean, fds, spec)
        t_inject = time.perf_counter() - t0
        for theta in thetas:
            t0 = time.perf_counter()
            rules = discover_rules(dirty, fds, theta)
            t1 = time.perf_counter()
            consistent, _ = resolve_inconsistency(rules, th)
            t2 = time.perf_counter()
            repaired, report = repair_dataset(dirty, consistent, fds, th, check=False)
            t3 = time.perf_counter()
            m = evaluate(repaired, dirty, clean)
            t4 = time.perf_counter()
            row = ExperimentRow(typo_rate, theta, len(log), len(rules), len(consistent),
                                report.n_repairs, m.precision, m.recall, m.f_measure)
            if timings:
                row.timings = {"inject": t_inject, "discover": t1 - t0, "resolve": t2 - t1,
                               "repair": t3 - t2, "evaluate": t4 - t3}
            out.append(row)
    return out
