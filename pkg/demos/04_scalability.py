"""
Discovery time against data size
================================

Discovery groups each FD projection by hashing, so its cost grows roughly
linearly with the number of tuples.
"""

import time

import numpy as np

from wmrr import NoiseSpec, discover_rules, inject_noise, repair_dataset, resolve_inconsistency
from wmrr.datasets import generate_clean

sizes = [10000, 20000, 40000, 80000]
times = {"discover": [], "resolve": [], "repair": []}
for n in sizes:
    clean, fds = generate_clean(n, multiplicity=50, seed=0)
    dirty, _ = inject_noise(clean, fds, NoiseSpec(0.10, 0.5, seed=0))
    t0 = time.perf_counter()
    rules = discover_rules(dirty, fds, 0.6)
    t1 = time.perf_counter()
    rules, _ = resolve_inconsistency(rules)
    t2 = time.perf_counter()
    repair_dataset(dirty, rules, fds, check=False)
    t3 = time.perf_counter()
    for key, dt in zip(times, (t1 - t0, t2 - t1, t3 - t2)):
        times[key].append(dt)
    print(f"n={n:6d} rules={len(rules):5d} discover={t1 - t0:.3f}s resolve={t2 - t1:.3f}s repair={t3 - t2:.3f}s")

# %%
# slope of log(time) against log(n); 1.0 means linear
for key, ts in times.items():
    slope = np.polyfit(np.log(sizes), np.log(ts), 1)[0]
    print(f"{key}: growth exponent {slope:.2f}")
