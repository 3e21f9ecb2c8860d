"""Basis truncation residuals: how fast coordinate cut-offs converge.

For members of the small space the residual after keeping indices |m| <= M
decreases to zero; the curve below prints that decay for a geometric vector
and for a flat one, in two different spaces.
"""

import random

from orliczseq import (ExpLinear, Power, SeqVector, SpaceParams,
                       WeightSequence, schauder_curve)

W1 = WeightSequence.constant(1.0)


def print_curve(title, params, p):
    curve = schauder_curve(params, p)
    print(f"\n{title}")
    print(f"{'M':>4}  {'residual norm':>16}")
    for m, r in curve:
        print(f"{m:>4}  {r:>16.10g}")
    assert curve[-1][1] == 0.0


def main():
    geometric = SeqVector({m: 0.6 ** abs(m) for m in range(-8, 9)})
    print_curve("geometric decay, square generator, k=1",
                SpaceParams(1.0, Power(2.0), W1), geometric)

    flat = SeqVector({m: 0.25 for m in range(-6, 7)})
    print_curve("flat vector, exponential generator, k=0",
                SpaceParams(0.0, ExpLinear(), W1), flat)

    # random vectors: the curve is always nonincreasing and ends at zero
    rng = random.Random(4)
    params = SpaceParams(0.5, Power(2.0), W1)
    worst_jump = 0.0
    for _ in range(200):
        entries = {rng.randint(-20, 20): rng.uniform(-1, 1) for _ in range(12)}
        p = SeqVector(entries)
        if not p:
            continue
        residuals = [r for _, r in schauder_curve(params, p)]
        for a, b in zip(residuals, residuals[1:]):
            worst_jump = max(worst_jump, b - a)
    print(f"\n200 random curves: largest residual increase {worst_jump:.3g} "
          "(never above solver noise)")


if __name__ == "__main__":
    main()
