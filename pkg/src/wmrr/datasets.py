"""Built-in data: the researcher table fixture and synthetic clean-data generators."""

from __future__ import annotations

import string

import numpy as np

from .model import CellValue, Dataset, FunctionalDependency, Kind, Row, Schema
from .similarity import deletion_variants, edit_distance

TABLE1_NAMES = ["Name", "Dept", "Nation", "Capital"]

# (id, Name, Dept, Nation dirty, Nation clean, Capital dirty, Capital clean)
_TABLE1 = [
    ("t1", "Wu", "CS", "China", "China", "Beijing", "Beijing"),
    ("t2", "Li", "CS", "China", "China", "HongKong", "Beijing"),
    ("t3", "Kum", "AI", "Chiena", "China", "Beijing", "Beijing"),
    ("t4", "Shi", "AI", "China", "China", "Shanghai", "Beijing"),
    ("t5", "Xu", "MC", "China", "China", "Beijing", "Beijing"),
    ("t6", "Pei", "MC", "Chiena", "China", "HongKong", "Beijing"),
    ("t7", "Wei", "CS", "China", "China", "Beijing", "Beijing"),
    ("t8", "Wang", "CS", "China", "China", "Beijing", "Beijing"),
]


def table1() -> Dataset:
    """Researchers with their nation and its capital; five cells are dirty."""
    return Dataset.from_records(
        TABLE1_NAMES, [(n, d, nd, cd) for _, n, d, nd, _, cd, _ in _TABLE1], ids=[r[0] for r in _TABLE1]
    )


def table1_clean() -> Dataset:
    return Dataset.from_records(
        TABLE1_NAMES, [(n, d, nc, cc) for _, n, d, _, nc, _, cc in _TABLE1], ids=[r[0] for r in _TABLE1]
    )


def table1_fds(schema: Schema | None = None) -> list[FunctionalDependency]:
    schema = schema or table1().schema
    return [FunctionalDependency.from_names(schema, ["Nation"], "Capital")]


def distinct_codes(n: int, length: int, alphabet: str, rng: np.random.Generator, min_distance: int = 3) -> list[str]:
    """``n`` random codes whose pairwise edit distance is at least ``min_distance``.

    Candidates within ``min_distance - 1`` edits of an accepted code are
    rejected through a deletion-neighbourhood index.
    """
    k = min_distance - 1
    letters = np.array(list(alphabet))
    seen: dict[str, list[str]] = {}
    codes: list[str] = []
    attempts = 0
    while len(codes) < n:
        attempts += 1
        if attempts > 50 * n + 1000:
            raise ValueError(f"cannot draw {n} codes of length {length} at distance {min_distance}")
        code = "".join(rng.choice(letters, length))
        variants = deletion_variants(code, k)
        clash = False
        for v in variants:
            if any(edit_distance(code, other) < min_distance for other in seen.get(v, ())):
                clash = True
                break
        if clash:
            continue
        for v in variants:
            seen.setdefault(v, []).append(code)
        codes.append(code)
    return codes


def _words(n: int, rng: np.random.Generator, length: int = 7, suffix: str = "") -> list[str]:
    out, used = [], set()
    while len(out) < n:
        w = "".join(rng.choice(list(string.ascii_lowercase), length)).capitalize() + suffix
        if w not in used:
            used.add(w)
            out.append(w)
    return out


GENERATOR_NAMES = ["PN", "HN", "Phone", "ZIP", "City", "State", "MC", "MN"]
GENERATOR_FDS = [
    (["PN"], "HN"),
    (["PN"], "Phone"),
    (["PN"], "ZIP"),
    (["Phone"], "ZIP"),
    (["ZIP"], "City"),
    (["ZIP"], "State"),
    (["MC"], "MN"),
]


def generate_clean(
    n_tuples: int,
    multiplicity: float = 10.0,
    seed: int = 0,
    n_measures: int = 20,
) -> tuple[Dataset, list[FunctionalDependency]]:
    """Synthetic provider/measure table that satisfies its FDs exactly.

    ``multiplicity`` is the mean number of tuples per provider; large values
    give frequent patterns, values near 1 give sparse ones. Clean values of
    every lhs attribute are pairwise at edit distance 3 or more, so a single
    typo stays closer to its own value than to any other.
    """
    rng = np.random.default_rng(seed)
    n_prov = max(1, int(round(n_tuples / multiplicity)))
    n_zip = max(1, n_prov // 4)
    n_city = max(1, n_zip // 2)
    n_state = max(1, min(50, n_city // 2 or 1))
    upper = string.ascii_uppercase
    pns = distinct_codes(n_prov, 8, upper, rng)
    phones = distinct_codes(n_prov, 10, string.digits, rng)
    zips = distinct_codes(n_zip, 6, upper + string.digits, rng)
    mcs = distinct_codes(n_measures, 6, upper, rng)
    hospitals = _words(n_prov, rng, suffix=" Hospital")
    cities = _words(n_city, rng)
    states = _words(n_state, rng, length=5)
    measures = _words(n_measures, rng, length=9)
    city_state = rng.integers(0, n_state, n_city)
    zip_city = rng.integers(0, n_city, n_zip)
    prov_zip = rng.integers(0, n_zip, n_prov)
    owners = np.arange(n_tuples) % n_prov
    rng.shuffle(owners)
    measure_of = rng.integers(0, n_measures, n_tuples)
    schema = Schema.from_names(GENERATOR_NAMES)
    s = CellValue.string
    rows = []
    for i in range(n_tuples):
        p = owners[i]
        z = prov_zip[p]
        c = zip_city[z]
        m = measure_of[i]
        rows.append(Row(i, (
            s(pns[p]), s(hospitals[p]), s(phones[p]), s(zips[z]),
            s(cities[c]), s(states[city_state[c]]), s(mcs[m]), s(measures[m]),
        )))
    fds = [FunctionalDependency.from_names(schema, lhs, rhs) for lhs, rhs in GENERATOR_FDS]
    return Dataset(schema, tuple(rows)), fds


def numeric_fixture(n_tuples: int = 100, n_groups: int = 10, seed: int = 0) -> tuple[Dataset, Dataset, list[FunctionalDependency]]:
    """Sensor readings where ``Code -> Rate`` relates two numeric columns.

    Returns ``(clean, dirty, fds)``. In every group one tuple carries a wrong
    rate (another group's rate) and one tuple a slightly perturbed code, well
    inside the default relative numeric threshold.
    """
    rng = np.random.default_rng(seed)
    names = ["Sensor", "Code", "Rate"]
    schema = Schema.from_names(names, {"Code": Kind.NUMERIC, "Rate": Kind.NUMERIC})
    codes = [1000.0 * (g + 1) for g in range(n_groups)]
    rates = [round(1.5 * (g + 1), 2) for g in range(n_groups)]
    group = np.arange(n_tuples) % n_groups
    clean_rows, dirty_rows = [], []
    wrong_done, shift_done = set(), set()
    for i in range(n_tuples):
        g = int(group[i])
        sensor = CellValue.string(f"s{i:03d}")
        code, rate = codes[g], rates[g]
        clean_rows.append(Row(i, (sensor, CellValue.numeric(code), CellValue.numeric(rate))))
        d_code, d_rate = code, rate
        if g not in wrong_done:
            wrong_done.add(g)
            d_rate = rates[(g + 1) % n_groups]
        elif g not in shift_done:
            shift_done.add(g)
            d_code = code + float(rng.uniform(0.05, 0.5)) * (1 if rng.random() < 0.5 else -1)
        dirty_rows.append(Row(i, (sensor, CellValue.numeric(d_code), CellValue.numeric(d_rate))))
    fds = [FunctionalDependency.from_names(schema, ["Code"], "Rate")]
    return Dataset(schema, tuple(clean_rows)), Dataset(schema, tuple(dirty_rows)), fds
