#!/usr/bin/env python3
"""Run the structural checks across the whole catalog.

Self-certifies every entry, then verifies the truncation theorems for a
sweep of degrees on the entries that carry invariants.  Exit status is
nonzero if anything fails.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from takiffalg import catalog
from takiffalg.report import FAIL
from takiffalg.verify import verify_main_theorem, wonderful_diagnostic


@dataclass
class SweepConfig:
    seed: int = 0
    trials: int = 5
    transfer_samples: int = 100
    # degree sweep per entry; dimensions past these get slow without
    # telling us anything new at desk scale
    degrees: dict[str, tuple[int, ...]] = field(default_factory=lambda: {
        "sl2": (1, 2, 3),
        "sl3": (1,),
        "heis1": (1, 2, 3),
        "heis2": (1, 2, 3),
        "affine2": (1,),
        "slnV2": (1, 2),
        "slnV3": (1,),
        "nilrad_sl3": (1, 2),
    })


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--samples", type=int, default=100,
                    help="points per transfer check")
    args = ap.parse_args()
    cfg = SweepConfig(seed=args.seed, trials=args.trials,
                      transfer_samples=args.samples)

    failures = 0
    for name in catalog.NAMES:
        entry = catalog.load(name)
        rep = catalog.self_test(entry, trials=cfg.trials, seed=cfg.seed)
        print(f"self-test {name}: {rep.summary}")
        if rep.summary == FAIL:
            failures += 1
            for line in rep.human_lines():
                print("  " + line)

    for name in catalog.NAMES:
        entry = catalog.load(name)
        for m in cfg.degrees[name]:
            rep = verify_main_theorem(entry.algebra, entry.invariants, m,
                                      trials=cfg.trials, seed=cfg.seed,
                                      transfer_samples=cfg.transfer_samples)
            print(f"verify {name} m={m}: {rep.summary}")
            if rep.summary == FAIL:
                failures += 1
                for line in rep.human_lines():
                    print("  " + line)

    print("\nwonderful-criteria diagnostics (FAIL = criterion refuted, not an error):")
    for name in catalog.NAMES:
        entry = catalog.load(name)
        if not entry.invariants.polys:
            continue
        rep = wonderful_diagnostic(entry.algebra, entry.invariants,
                                   trials=cfg.trials, seed=cfg.seed)
        notes = [c.witness.get("note") for c in rep.checks
                 if c.witness and c.witness.get("note")]
        print(f"  {name}: {rep.summary}" + (f"  ({'; '.join(notes)})" if notes else ""))

    print(f"\n{failures} failing runs" if failures else "\nall runs passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
