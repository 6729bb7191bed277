"""
Effect of the adoption threshold
================================

Lower thresholds admit more rules. On a fixed dirty instance this raises
recall while precision stays high.
"""

import json
from pathlib import Path

from wmrr import run_experiment
from wmrr.datasets import generate_clean
from wmrr.formats import experiment_report

config = json.loads((Path(__file__).parent / "data" / "experiment.json").read_text())
clean, fds = generate_clean(**config["generator"])

rows = run_experiment(clean, fds, thetas=config["thetas"], typo_rates=config["typo_rates"],
                      noise_rate=config["noise_rate"], seed=config["seed"])
print(experiment_report(rows, delimiter="\t"))

# %%
for typo_rate in config["typo_rates"]:
    sweep = [r for r in rows if r.typo_rate == typo_rate]
    print(f"typo_rate={typo_rate}: rules", [r.n_rules for r in sweep], "f", [round(r.f_measure, 3) for r in sweep])
