"""
Repairing synthetic noise
=========================

A clean provider table is corrupted with typos and active-domain errors,
then repaired with rules discovered from the dirty copy alone.
"""

from wmrr import NoiseSpec, discover_rules, evaluate, inject_noise, repair_dataset, resolve_inconsistency
from wmrr.datasets import generate_clean

clean, fds = generate_clean(5000, multiplicity=10, seed=0)
for fd in fds:
    print(fd.describe(clean.schema))

dirty, log = inject_noise(clean, fds, NoiseSpec(noise_rate=0.10, typo_rate=0.5, seed=0))
print(len(log), "cells corrupted")
for e in log.entries[:5]:
    print(f"  {e.tuple_id} {clean.schema.name_of(e.attribute)}: {e.clean.text!r} -> {e.dirty.text!r} ({e.kind.value})")

# %%
rules = discover_rules(dirty, fds, theta=0.6)
consistent, resolution = resolve_inconsistency(rules)
print(len(rules), "rules discovered,", len(resolution), "dropped as inconsistent")

repaired, report = repair_dataset(dirty, consistent, fds)
print(f"#Repair={report.n_repairs} #Verify={report.n_verifies}")
for fd, n in report.per_fd.items():
    print(f"  {fd.describe(clean.schema)}: {n}")

print(evaluate(repaired, dirty, clean))

# %%
# Active-domain errors on an lhs attribute move a tuple into another group,
# where a rule may "fix" it towards the wrong provider. With typos only on
# lhs attributes every change made is correct.
dirty, log = inject_noise(clean, fds, NoiseSpec(0.10, 0.5, seed=0, lhs_typos_only=True))
consistent, _ = resolve_inconsistency(discover_rules(dirty, fds, 0.6))
repaired, _ = repair_dataset(dirty, consistent, fds)
print("lhs typos only:", evaluate(repaired, dirty, clean))
