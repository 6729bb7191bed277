"""Random instance builders shared by the property and acceptance tests."""

import numpy as np

from wmrr.model import CellValue, Dataset, FunctionalDependency, Kind, Row, Schema
from wmrr.rules import WMRR

VOCAB = ["a", "b", "c", "ab", "ba", "abc", "x", "xy", ""]


def random_dataset(rng: np.random.Generator, n_tuples=None, n_attrs=None, numeric_prob=0.25) -> Dataset:
    """Small-vocabulary table, so partitions collide and rules appear."""
    n_tuples = int(rng.integers(1, 201)) if n_tuples is None else n_tuples
    n_attrs = int(rng.integers(2, 6)) if n_attrs is None else n_attrs
    names = [f"A{i}" for i in range(n_attrs)]
    kinds = {n: Kind.NUMERIC if rng.random() < numeric_prob else Kind.STRING for n in names}
    schema = Schema.from_names(names, kinds)
    vocab_size = [int(rng.integers(2, 7)) for _ in names]
    rows = []
    for i in range(n_tuples):
        cells = []
        for a, attr in enumerate(schema.attributes):
            k = int(rng.integers(vocab_size[a]))
            if attr.kind is Kind.NUMERIC:
                cells.append(CellValue.numeric(float(k) * 10.0))
            else:
                cells.append(CellValue.string(VOCAB[k] if k < len(VOCAB) else f"v{k}"))
        rows.append(Row(i, tuple(cells)))
    return Dataset(schema, tuple(rows))


def random_fds(rng: np.random.Generator, schema: Schema, max_fds=4) -> list[FunctionalDependency]:
    n = len(schema.attributes)
    fds = []
    for _ in range(int(rng.integers(1, max_fds + 1))):
        rhs = int(rng.integers(n))
        others = [a for a in range(n) if a != rhs]
        size = int(rng.integers(1, min(2, len(others)) + 1))
        lhs = sorted(int(a) for a in rng.choice(others, size=size, replace=False))
        fds.append(FunctionalDependency(tuple(lhs), rhs))
    return fds


STRINGS = [CellValue.string(s) for s in ("China", "Chiena", "Beijing", "HongKong", "Shanghai", "CS", "AI")]


def random_rule(rng: np.random.Generator, rule_id: int, fd: FunctionalDependency) -> WMRR:
    director = tuple((a, STRINGS[int(rng.integers(len(STRINGS)))]) for a in fd.lhs)
    correct = STRINGS[int(rng.integers(len(STRINGS)))]
    pool = [v for v in STRINGS if v != correct]
    k = int(rng.integers(1, 4))
    wrong = frozenset(pool[int(i)] for i in rng.choice(len(pool), size=k, replace=False))
    w1 = float(rng.choice([0.6, 0.7, 0.75, 0.8, 1.0]))
    w2 = float(rng.choice([0.1, 0.2, 0.3])) * w1
    return WMRR(rule_id, fd, director, wrong, correct, w1, w2)


def adversarial_rules(rng: np.random.Generator, n_rules: int) -> list[WMRR]:
    """Rules over three attributes, with seeded conflicts of every condition."""
    fds = [FunctionalDependency((0,), 1), FunctionalDependency((1,), 0), FunctionalDependency((0,), 2),
           FunctionalDependency((1,), 2), FunctionalDependency((0, 1), 2)]
    rules: list[WMRR] = []
    ids = [int(i) for i in rng.permutation(10 * n_rules)[:n_rules]]
    while len(rules) < n_rules:
        rid = ids[len(rules)]
        if rules and rng.random() < 0.5:
            base = rules[int(rng.integers(len(rules)))]
            rules.append(_conflicting(rng, rid, base, fds))
        else:
            rules.append(random_rule(rng, rid, fds[int(rng.integers(len(fds)))]))
    return rules


def _conflicting(rng, rid: int, base: WMRR, fds) -> WMRR:
    """A rule that violates some condition against ``base`` when co-matchable."""
    choice = int(rng.integers(3))
    if choice == 0:
        # same rhs, shared wrong pattern, another correct pattern
        shared = min(base.wrong_patterns, key=lambda v: v.key)
        correct = next(v for v in STRINGS if v != base.correct_pattern and v != shared)
        return WMRR(rid, base.fd, base.director, {shared}, correct, base.w1, base.w2)
    if choice == 1 and len(base.lhs) == 1:
        # director value of base is wrong in the new rule, whose rhs is base's lhs
        x = base.lhs[0]
        fd = next((f for f in fds if f.rhs == x and base.rhs not in f.lhs), None)
        if fd is not None:
            wrong_val = base.director_value(x)
            correct = next(v for v in STRINGS if v != wrong_val)
            director = tuple((a, STRINGS[int(rng.integers(len(STRINGS)))]) for a in fd.lhs)
            w1 = float(rng.choice([0.6, 0.8, 1.0]))
            return WMRR(rid, fd, director, {wrong_val}, correct, w1, 0.1 * w1)
    if len(base.lhs) == 1:
        # mutual: each director value is wrong in the other rule
        x, y = base.lhs[0], base.rhs
        fd = next((f for f in fds if f.lhs == (y,) and f.rhs == x), None)
        if fd is not None:
            wrong_val = base.director_value(x)
            options = sorted(base.wrong_patterns, key=lambda v: v.key)
            dval = options[int(rng.integers(len(options)))]
            correct = next(v for v in STRINGS if v != wrong_val)
            return WMRR(rid, fd, ((y, dval),), {wrong_val}, correct, base.w1, base.w2)
    return random_rule(rng, rid, base.fd)
