"""
Discovering and applying a rule on the researcher table
========================================================

Eight researchers with their nation and its capital. Three capitals and two
nation names are wrong. One FD, Nation -> Capital, is enough to find and fix
all five cells.
"""

from pathlib import Path

from wmrr import discover_rules, evaluate, repair_dataset, resolve_inconsistency
from wmrr.formats import load_csv, parse_fd_file

DATA = Path(__file__).parent / "data"

dirty = load_csv(DATA / "table1.csv", id_column="id")
clean = load_csv(DATA / "table1_clean.csv", id_column="id")
fds = parse_fd_file(DATA / "res.fd", dirty.schema)

for row in dirty:
    print(row.tuple_id, [v.text for v in row.values])

# %%
# The "China" partition holds Beijing x4, HongKong x1, Shanghai x1, so Beijing
# is taken as correct. The "Chiena" partition is a 1:1 tie and is skipped.
rules = discover_rules(dirty, fds, theta=0.6)
for r in rules:
    print(r.describe(dirty.schema))

rules, log = resolve_inconsistency(rules)
print("removed during resolution:", log.removed_ids)

# %%
# "Chiena" is one edit away from "China", so t3 and t6 match the rule too and
# get their nation rewritten from the director pattern.
repaired, report = repair_dataset(dirty, rules, fds)
for tid, actions in report.actions.items():
    for a in actions:
        if a.kind.value == "rectify":
            print(f"{tid}: {dirty.schema.name_of(a.attribute)} {a.old.text!r} -> {a.new.text!r}")

print(evaluate(repaired, dirty, clean))
