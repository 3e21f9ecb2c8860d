"""Continuous embedding certificates from domination witnesses.

Two routes are shown: a global witness phi(t) <= psi(gamma*t) for all t
(mode a, keeps the weights and drops the order), and a local witness valid
only on (0, t0] (mode b, lands in the order-zero space with a computable
constant).  Both certificates are then spot-checked on random ball samples.
"""

from orliczseq import (ExpSquare, Power, SpaceParams, WeightSequence,
                       check_domination, embedding_constant, sample_ball,
                       verify_embedding)


def spot_check(cert, count=200, seed=0):
    worst = None
    for p in sample_ball(cert.source, 1.0, seed=seed, count=count, max_support=12):
        chk = verify_embedding(cert, p)
        assert chk.ok, (p, chk)
        slack = chk.bound - chk.target_norm
        if worst is None or slack < worst:
            worst = slack
    return worst


def main():
    w = WeightSequence.constant(1.0)

    # global: t^2 <= expm1(t^2) everywhere, so gamma = 1
    witness = check_domination(Power(2.0), ExpSquare(), 1.0)
    print(f"global witness holds: {witness.holds} "
          f"(checked {witness.grid_checked} grid points)")
    cert = embedding_constant("a", witness, SpaceParams(2.0, ExpSquare(), w), 1.0)
    print(f"mode a: order {cert.source.k:g} exponential space embeds into "
          f"order {cert.target.k:g} square space, constant c = {cert.c:g}")
    print(f"  tightest slack over 200 samples: {spot_check(cert):.3e}")

    # local: t^3 <= (gamma t)^2 holds exactly up to t0 = gamma^2
    for gamma in (1.0, 0.7):
        t0 = gamma ** 2.0
        witness = check_domination(Power(3.0), Power(2.0), gamma, t0=t0)
        print(f"\nlocal witness gamma={gamma:g}, t0={t0:g}: holds={witness.holds}")
        for inf_w in (1.0, 0.25):
            source = SpaceParams(1.0, Power(2.0), WeightSequence.constant(inf_w))
            cert = embedding_constant("b", witness, source, 0.0)
            # c = max(psi^{-1}(1/inf w)/t0, gamma)
            print(f"  inf w = {inf_w:g}: constant c = {cert.c:.6g}, "
                  f"tightest slack {spot_check(cert):.3e}")

    # a failing witness refuses to certify anything
    bad = check_domination(Power(1.0), Power(2.0), 1.0)
    print(f"\nlinear vs square with gamma=1: holds={bad.holds}, "
          f"first violation near t={bad.first_violation:g}")


if __name__ == "__main__":
    main()
