"""Walk through modular evaluation and Luxemburg norm solving.

Builds a weighted space, evaluates the modular at several scales, then solves
for the norm and shows how tight the solver bracket is.
"""

import math

from orliczseq import (ExpSquare, Power, SeqVector, SpaceParams,
                       WeightSequence, luxemburg_norm, modular)


def show_space(title, params, p):
    print(f"\n== {title} ==")
    print(f"generator {params.phi.descriptor()}, order k={params.k:g}, "
          f"weights {params.weights.descriptor()}")
    print(f"p: {len(p)} entries, support {p.support}")

    print(f"{'rho':>10}  {'modular(p, rho)':>18}")
    for rho in (0.25, 0.5, 1.0, 2.0, 4.0):
        print(f"{rho:>10.2f}  {modular(params, p, rho):>18.12g}")

    res = luxemburg_norm(params, p)
    lo, hi = res.bracket
    print(f"norm = {res.value:.17g}")
    print(f"bracket width {hi - lo:.3g} after {res.iterations} iterations")
    print(f"modular at the norm: {res.modular_at_value:.15f} (must be <= 1)")
    print(f"modular just below:  {modular(params, p, 0.999 * res.value):.15f} "
          f"(must exceed 1)")


def main():
    p = SeqVector({0: 0.8, 1: 0.5j, -2: complex(0.3, 0.4), 5: 0.05})

    show_space("plain square-summable, unit weights",
               SpaceParams(0.0, Power(2.0), WeightSequence.constant(1.0)), p)

    show_space("first-order polynomial weights",
               SpaceParams(1.0, Power(2.0), WeightSequence.constant(1.0)), p)

    # exponential generator: same vector, much larger norm per unit modular
    show_space("exponential-square generator",
               SpaceParams(0.0, ExpSquare(), WeightSequence.constant(1.0)), p)

    # a one-point vector has a closed-form norm; the solver finds it exactly
    spike = SeqVector({0: 1.0})
    res = luxemburg_norm(SpaceParams(0.0, ExpSquare(), WeightSequence.constant(1.0)), spike)
    print("\nunit spike in the exponential-square space:")
    print(f"  norm = {res.value:.17g}  (exact value 1/sqrt(ln 2) = "
          f"{1.0 / math.sqrt(math.log(2.0)):.17g})")


if __name__ == "__main__":
    main()
