"""
A verification campaign
=======================

Runs every implemented theorem check over all abelian groups of order at
most 24 and tabulates PASS / FAIL / VACUOUS counts.
"""

from golombmod.verify import run_campaign

report = run_campaign(24)
print(report.family)
for tid, counts in report.by_theorem().items():
    print(f"{tid:26s} PASS {counts['PASS']:3d}  FAIL {counts['FAIL']:3d}  VACUOUS {counts['VACUOUS']:3d}")

# which groups carry a topology at all?
carriers = sorted({c.module for c in report.cases if c.id == "BASIS_FG" and c.hypotheses_held},
                  key=lambda s: int(s.split("x")[-1]))
print("in-hypothesis modules:", carriers)
