"""Drop one hypothesis at a time and let the search find what breaks.

Each hunt reports a self-contained counterexample that reloads with
``hvlab check`` or ``hvlab verify``.

Run: python3 demos/03_weakened_hypotheses.py
"""

from __future__ import annotations

from hvlab.generators import GenConfig, hunt_counterexamples

for theorem, weaken in [
    ("thm32", "none"),
    ("thm32", "product-norm"),
    ("lemma35", "not-onto"),
    ("thm36", "weak-map"),
    ("thm39", "no-core-override"),
]:
    rep = hunt_counterexamples(theorem, weaken, GenConfig(2, 1, seed=0))
    line = f"{theorem:8} weaken={weaken:17} checks={rep['checks']:5} found={rep['found']}"
    if rep["found"]:
        r = rep["counterexample"]["report"]
        line += f"  fails {r['check']} on condition {r['condition']!r}"
    print(line)
