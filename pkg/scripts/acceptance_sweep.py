#!/usr/bin/env python3
"""
Acceptance Sweep
Runs both index routes over seeded random instances, then the nilmanifold
oracle over a grid of constant gamma, and prints a step-by-step summary.
"""

import sys
import time

import numpy as np

from hypoindex.chern_pairing import chern_index
from hypoindex.errors import HypoIndexError
from hypoindex.generators import random_trig_instance
from hypoindex.logs import configure
from hypoindex.nilmanifold_oracle import NotFredholm, analytic_index
from hypoindex.winding_index import fredholm_index


def sweep_instances(count=200, seed=2024):
    """Two-formula agreement on random instances"""
    print(f"\n1. Comparing index routes on {count} random instances (seed {seed})...")
    rng = np.random.default_rng(seed)
    start = time.time()
    failures = 0
    indices = {}

    for i in range(count):
        inst, _ = random_trig_instance(rng, label=f"random-{i}")
        try:
            winding = fredholm_index(inst).index
            chern = chern_index(inst)
        except HypoIndexError as e:
            print(f"   ❌ {inst.manifold_label}: {e}")
            failures += 1
            continue

        if chern.total_rounded != winding:
            print(f"   ❌ {inst.manifold_label}: winding {winding}, chern {chern.total_real!r}")
            failures += 1
        indices[winding] = indices.get(winding, 0) + 1

    print(f"   Index histogram: {dict(sorted(indices.items()))}")
    print(f"   Elapsed: {time.time() - start:.2f}s")
    if failures:
        print(f"   ❌ {failures} disagreement(s)")
    else:
        print("   ✅ Both routes agree everywhere")
    return failures == 0


def sweep_oracle(points=10, bound=6.0):
    """Nilmanifold oracle over an admissible grid plus the odd integers"""
    print(f"\n2. Nilmanifold oracle on a {points}x{points} grid over [-{bound}, {bound}]^2...")
    start = time.time()
    axis = np.linspace(-bound, bound, points)
    nonzero = [complex(re, im) for re in axis for im in axis if analytic_index(complex(re, im)) != 0]
    print(f"   Elapsed: {time.time() - start:.2f}s")
    if nonzero:
        print(f"   ❌ Nonzero index at {nonzero}")
        return False
    print("   ✅ Index 0 on every grid point")

    ok = True
    for gamma in (1, 3, 5):
        verdict = analytic_index(gamma)
        if isinstance(verdict, NotFredholm) and all(verdict.zero_modes.get(n) == n for n in range(1, 21)):
            print(f"   ✅ gamma={gamma}: not Fredholm, {sum(verdict.zero_modes.values())} zero modes")
        else:
            print(f"   ❌ gamma={gamma}: unexpected verdict {verdict}")
            ok = False
    return ok


if __name__ == "__main__":
    configure(quiet=True)
    print("🔧 HYPOINDEX ACCEPTANCE SWEEP")
    print("=" * 50)
    results = [sweep_instances(), sweep_oracle()]
    print("\n" + "=" * 50)
    print("✅ ALL CHECKS PASSED" if all(results) else "❌ SOME CHECKS FAILED")
    sys.exit(0 if all(results) else 1)
