"""
QFT on random inputs
====================

The same QFT circuit applied to different Haar-random inputs gives
different saturation histories, and the input alone can already fail MMI.
"""

from qentropy.algorithms import QftSpec
from qentropy.runner import RunConfig, execute

for seed in range(4):
    n = 4 + seed % 4
    reports, _ = execute(RunConfig("qft", QftSpec(n), "random", seed=seed))
    mmi = [r["mmi"].failure_ratio for r in reports]
    ing = min(r["ingleton"].min_saturation for r in reports)
    print(f"n={n} seed={seed}: MMI failure ratio per step {[round(x, 3) for x in mmi]}")
    print(f"    smallest Ingleton saturation {ing:.4f}, norm {reports[0].entropy_norm:.3f}"
          f" -> {reports[-1].entropy_norm:.3f}")
