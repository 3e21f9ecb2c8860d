"""Weights, sequence vectors, measures, modulars and envelope certificates."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orliczseq import (CertificateError, ComputationOverflowError,
                       DomainError, ExpCompose, ExpLinear, ExpSquare, Power,
                       SeqVector, SpaceParams, TabulatedConvex,
                       WeightSequence, classify, geometric_envelope, modular,
                       modular_tail_bound, mu, parse_weights,
                       weight_poly_bound)

HALF_E_SQUARED = 3.69452804946532511362  # 0.5 * e**2

W1 = WeightSequence.constant(1.0)


def test_weight_sequence_basics():
    w = WeightSequence(1.3, {0: 0.1, 5: 4.0})
    assert w.weight(0) == 0.1
    assert w.weight(5) == 4.0
    assert w.weight(-7) == 1.3
    assert w.inf_w == 0.1
    assert w.sup_w == 4.0
    assert WeightSequence.constant(2.0).inf_w == 2.0


def test_weight_sequence_validation():
    with pytest.raises(DomainError):
        WeightSequence(0.0)
    with pytest.raises(DomainError):
        WeightSequence(1.0, {3: -2.0})
    with pytest.raises(DomainError):
        WeightSequence(1.0, [(3, 1.0), (3, 2.0)])
    with pytest.raises(DomainError):
        WeightSequence(1.0, {0: 0.5}, inf_override=0.7)  # above the listed min
    w = WeightSequence(1.0, {0: 0.5}, inf_override=0.01)
    assert w.inf_w == 0.01


def test_parse_weights(tmp_path):
    assert parse_weights("const:0.25").weight(9) == 0.25
    table = tmp_path / "w.csv"
    table.write_text("0,0.5\n-3,2.0\n")
    w = parse_weights(f"table:{table}:1.5")
    assert w.weight(0) == 0.5 and w.weight(-3) == 2.0 and w.weight(8) == 1.5
    w2 = parse_weights(f"table:{table}")
    assert w2.weight(8) == 1.0
    with pytest.raises(DomainError):
        parse_weights("linear:1")
    with pytest.raises(DomainError):
        parse_weights("table:/nonexistent.csv")


def test_seqvector_canonical_order():
    p = SeqVector([(2, 1.0), (-1, 2.0), (0, 3.0), (1, 4.0), (-2, 5.0)])
    assert p.support == (0, -1, 1, -2, 2)
    # order independent of construction order
    q = SeqVector([(-2, 5.0), (0, 3.0), (1, 4.0), (2, 1.0), (-1, 2.0)])
    assert p == q


def test_seqvector_contract():
    with pytest.raises(DomainError):
        SeqVector([(0, 1.0), (0, 2.0)])
    with pytest.raises(DomainError):
        SeqVector([(0.5, 1.0)])
    with pytest.raises(DomainError):
        SeqVector([(0, complex(math.inf, 0.0))])
    assert len(SeqVector([(0, 0.0), (1, 1.0)])) == 1  # exact zeros dropped
    assert not SeqVector()


def test_seqvector_arithmetic():
    p = SeqVector({0: 1.0, 2: 2.0})
    q = SeqVector({0: -1.0, 3: 1j})
    assert (p + q).support == (2, 3)  # cancellation at 0 drops the index
    assert (p - p).support == ()
    assert p.scaled(2j).values == (2j, 4j)
    assert p.restrict(0).support == (0,)
    assert p.tail(1).support == (2,)


def test_seqvector_csv_round_trip(tmp_path):
    f = tmp_path / "p.csv"
    f.write_text("2,1.5,0\n-1,0,2\n0,3,0\n")
    p = SeqVector.from_csv(f)
    assert p.support == (0, -1, 2)
    assert p.values == (3.0, 2j, 1.5)
    bad = tmp_path / "bad.csv"
    bad.write_text("0,1\n")
    with pytest.raises(DomainError):
        SeqVector.from_csv(bad)


def test_mu_worked_values():
    assert mu(SpaceParams(0.0, Power(2.0), W1), 17) == 1.0
    assert mu(SpaceParams(1.0, Power(2.0), W1), 3) == 10.0
    half = WeightSequence.constant(0.5)
    got = mu(SpaceParams(2.0, ExpSquare(), half), 1)
    assert got == pytest.approx(HALF_E_SQUARED, rel=1e-14)
    assert mu(SpaceParams(1.0, Power(2.0), W1), -3) == 10.0  # symmetric in m


def test_mu_overflow_names_index():
    params = SpaceParams(1.0, ExpSquare(), W1)
    with pytest.raises(ComputationOverflowError) as exc:
        mu(params, 1000)
    assert exc.value.index == 1000
    # negative order: the factor underflows to zero instead of overflowing
    assert mu(SpaceParams(-1.0, ExpSquare(), W1), 1000) == 0.0


def test_modular_worked_values():
    params = SpaceParams(0.0, Power(2.0), W1)
    assert modular(params, SeqVector(), 1.0) == 0.0
    assert modular(params, SeqVector({0: 1.0}), 2.0) == 0.25
    two = SpaceParams(1.0, Power(1.0), W1)
    assert modular(two, SeqVector({-1: 1j, 2: 3.0}), 1.0) == 11.0


def test_modular_validation_and_overflow():
    params = SpaceParams(0.0, ExpSquare(), W1)
    p = SeqVector({0: 1.0})
    for bad in (0.0, -1.0, math.nan):
        with pytest.raises(DomainError):
            modular(params, p, bad)
    with pytest.raises(ComputationOverflowError) as exc:
        modular(params, SeqVector({4: 1.0}), 1e-2)  # expm1(160000) overflows
    assert exc.value.index == 4


def test_modular_reproducible_across_input_order():
    rng = random.Random(3)
    items = [(m, complex(rng.gauss(0, 1), rng.gauss(0, 1))) for m in range(-40, 40)]
    params = SpaceParams(1.5, Power(2.0), WeightSequence(1.0, {3: 0.2}))
    a = modular(params, SeqVector(items), 0.7)
    rng.shuffle(items)
    b = modular(params, SeqVector(items), 0.7)
    assert a == b  # bit-identical, not merely close


def test_modular_monotone_in_scale():
    rng = random.Random(11)
    params = SpaceParams(1.0, ExpLinear(), W1)
    p = SeqVector({m: rng.uniform(-2, 2) for m in range(-6, 7)})
    rhos = [0.25, 0.5, 1.0, 2.0, 4.0]
    vals = [modular(params, p, r) for r in rhos]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.0, max_value=1.0), st.integers(min_value=0, max_value=2 ** 31))
def test_modular_convex_in_the_sequence(lam, seed):
    rng = random.Random(seed)
    p = SeqVector({m: complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for m in range(-4, 5)})
    q = SeqVector({m: complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for m in range(-4, 5)})
    params = SpaceParams(1.0, ExpSquare(), W1)
    mix = p.scaled(lam) + q.scaled(1.0 - lam)
    lhs = modular(params, mix, 1.0)
    rhs = lam * modular(params, p, 1.0) + (1.0 - lam) * modular(params, q, 1.0)
    assert lhs <= rhs * (1.0 + 1e-12) + 1e-15


def test_convex_combination_stays_in_unit_class():
    rng = random.Random(5)
    params = SpaceParams(0.5, ExpLinear(), W1)
    p = SeqVector({m: rng.uniform(-1, 1) for m in range(-5, 6)})
    q = SeqVector({m: rng.uniform(-1, 1) for m in range(-5, 6)})
    lam, nu = 0.3, 0.45  # |lam| + |nu| < 1
    lhs = modular(params, p.scaled(lam) + q.scaled(nu), 1.0)
    rhs = abs(lam) * modular(params, p, 1.0) + abs(nu) * modular(params, q, 1.0)
    assert lhs <= rhs * (1.0 + 1e-12) + 1e-15


def test_weight_poly_bound_rules():
    w = WeightSequence(1.0, {2: 3.0})
    assert weight_poly_bound(SpaceParams(0.0, ExpSquare(), w)) == (3.0, 0.0)
    assert weight_poly_bound(SpaceParams(-2.0, ExpSquare(), w)) == (3.0, 0.0)
    coeff, expo = weight_poly_bound(SpaceParams(2.0, Power(3.0), w))
    assert coeff == 12.0 and expo == 6.0
    tab = TabulatedConvex([(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)])
    coeff, expo = weight_poly_bound(SpaceParams(1.5, tab, W1))
    assert expo == 1.5
    for phi in (ExpSquare(), ExpLinear(), ExpCompose(Power(2.0))):
        with pytest.raises(CertificateError):
            weight_poly_bound(SpaceParams(1.0, phi, W1))


@pytest.mark.parametrize("k,phi", [
    (0.0, ExpSquare()),
    (2.5, Power(3.0)),
    (1.0, Power(1.0)),
    (1.5, TabulatedConvex([(0.0, 0.0), (1.0, 1.0), (2.0, 4.0)])),
    (-1.0, ExpLinear()),
])
def test_weight_poly_bound_certifies(k, phi):
    params = SpaceParams(k, phi, WeightSequence(1.0, {0: 0.3, 4: 2.0}))
    coeff, expo = weight_poly_bound(params)
    for m in (0, 1, 2, 3, 5, 10, 100, 1000):
        assert mu(params, m) <= coeff * (1.0 + m) ** expo * (1.0 + 1e-12)


def test_envelope_validation():
    with pytest.raises(DomainError):
        geometric_envelope(SpaceParams(0.0, Power(2.0), W1), 1.0, 1.0)
    with pytest.raises(DomainError):
        geometric_envelope(SpaceParams(0.0, Power(2.0), W1), -1.0, 0.5)
    with pytest.raises(CertificateError):
        geometric_envelope(SpaceParams(1.0, ExpSquare(), W1), 1.0, 0.5)
    env = geometric_envelope(SpaceParams(0.0, Power(2.0), W1), 2.0, 0.5)
    assert env.dominates(SeqVector({0: 2.0, 3: 0.25}))
    assert not env.dominates(SeqVector({3: 0.5}))


def test_tail_bound_worked_value():
    params = SpaceParams(0.0, Power(1.0), W1)
    env = geometric_envelope(params, 1.0, 0.5)
    bound = modular_tail_bound(params, env, 1.0, 10)
    exact = 2.0 * 2.0 ** -11 / (1.0 - 0.5)  # worst-case tail sums exactly
    assert bound == pytest.approx(2.0 ** -9, rel=1e-12)
    assert exact <= bound <= 4.0 * exact


def test_tail_bound_edge_cases():
    params = SpaceParams(0.0, Power(2.0), W1)
    env = geometric_envelope(params, 0.0, 0.5)
    assert modular_tail_bound(params, env, 1.0, 5) == 0.0
    env2 = geometric_envelope(params, 1.0, 0.5, valid_from=8)
    with pytest.raises(DomainError):
        modular_tail_bound(params, env2, 1.0, 5)
    with pytest.raises(DomainError):
        modular_tail_bound(params, env2, 0.0, 10)
    with pytest.raises(DomainError):
        modular_tail_bound(params, env2, 1.0, 0)


def _brute_tail(params, env, rho, trunc, horizon=1000):
    total = []
    for m in range(trunc + 1, trunc + 1 + horizon):
        for sign in (-1, 1):
            total.append(mu(params, sign * m) * params.phi(env.bound_at(m) / rho))
    return math.fsum(total)


@pytest.mark.parametrize("k,phi,c,r,rho,trunc", [
    (0.0, Power(1.0), 1.0, 0.5, 1.0, 10),
    (1.7, Power(2.0), 3.0, 0.8, 0.37, 12),
    (0.0, ExpSquare(), 0.9, 0.6, 2.0, 4),
    (2.0, Power(1.0), 10.0, 0.3, 5.0, 9),
    (0.0, ExpLinear(), 5.0, 0.9, 7.0, 3),
])
def test_tail_bound_dominates_brute_force(k, phi, c, r, rho, trunc):
    params = SpaceParams(k, phi, WeightSequence(1.0, {1: 0.4}))
    env = geometric_envelope(params, c, r)
    bound = modular_tail_bound(params, env, rho, trunc)
    assert _brute_tail(params, env, rho, trunc) <= bound * (1.0 + 1e-12)


def test_classify_finite_support_is_trivially_member():
    rep = classify(SpaceParams(1.0, ExpSquare(), W1), SeqVector({0: 5.0, 3: 1.0}))
    assert rep.in_class and rep.in_large and rep.in_small


def test_classify_with_envelope():
    params = SpaceParams(0.0, Power(2.0), W1)
    env = geometric_envelope(params, 1.0, 0.5)
    p = SeqVector({m: (0.5 ** abs(m)) for m in range(-5, 6)})
    rep = classify(params, p, env)
    assert rep.in_class and rep.in_large and rep.in_small
    assert rep.large_witness_rho == 1.0
    assert rep.certificates
    # the certified upper bound dominates a long brute-force partial sum
    for cert in rep.certificates:
        if cert.modular_upper is None:
            continue
        brute = math.fsum(
            mu(params, m) * params.phi(env.bound_at(m) / cert.rho)
            for m in range(-2000, 2001))
        assert brute <= cert.modular_upper * (1.0 + 1e-9)


def test_classify_envelope_must_dominate():
    params = SpaceParams(0.0, Power(2.0), W1)
    env = geometric_envelope(params, 1.0, 0.5)
    with pytest.raises(DomainError):
        classify(params, SeqVector({4: 1.0}), env)


def test_classify_exponential_generator_flat_order():
    params = SpaceParams(0.0, ExpLinear(), WeightSequence.constant(0.5))
    env = geometric_envelope(params, 2.0, 0.7)
    rep = classify(params, SeqVector(), env)
    assert rep.in_class and rep.in_small
    assert not (rep.in_large and not rep.in_small)
