"""Luxemburg norm solver, norm axioms and basis truncation."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orliczseq import (ComputationOverflowError, DomainError, ExpLinear,
                       ExpSquare, Power, SeqVector, SpaceParams,
                       WeightSequence, luxemburg_norm, modular,
                       schauder_curve, schauder_truncate, verify_norm_axioms)
from helpers import power_norm_oracle, random_vector

# sqrt(ln 2) and its reciprocal, the unit-weight ExpSquare spike constants
SQRT_LN2 = 0.83255461115769775635
INV_SQRT_LN2 = 1.2011224087864497948578

W1 = WeightSequence.constant(1.0)
TOL = 1e-12


def test_spike_norm_is_exact():
    params = SpaceParams(0.0, Power(2.0), W1)
    res = luxemburg_norm(params, SeqVector({0: 1.0}))
    assert res.value == 1.0
    assert res.bracket == (1.0, 1.0)
    assert res.iterations == 0
    assert res.modular_at_value == 1.0


def test_empty_vector_norm_zero():
    params = SpaceParams(1.0, ExpSquare(), W1)
    res = luxemburg_norm(params, SeqVector())
    assert res.value == 0.0 and res.iterations == 0


def test_expsquare_spike_frozen_value():
    params = SpaceParams(0.0, ExpSquare(), W1)
    for a in (1.0, 0.03, 250.0, 1j * 7.0):
        res = luxemburg_norm(params, SeqVector({2: a}))
        assert res.value == pytest.approx(abs(a) * INV_SQRT_LN2, rel=2e-12)
    # cross-check the constant itself: modular(p, a/sqrt(ln2)) = expm1(ln 2) = 1
    res = luxemburg_norm(params, SeqVector({2: 1.0}))
    assert res.value * SQRT_LN2 == pytest.approx(1.0, rel=2e-12)


def test_power_norm_matches_closed_form():
    rng = random.Random(2024)
    weights = WeightSequence(1.0, {0: 0.2, 7: 3.0})
    for s in (1.0, 1.5, 2.0, 3.0):
        for k in (0.0, 1.0, 2.5):
            params = SpaceParams(k, Power(s), weights)
            for _ in range(5):
                p = random_vector(rng, 30, 200)
                want = power_norm_oracle(k, s, weights.weight, p)
                got = luxemburg_norm(params, p).value
                assert got == pytest.approx(want, rel=1e-11)


def test_norm_scaling_bracket_and_crucial_relation():
    rng = random.Random(77)
    params = SpaceParams(1.0, ExpLinear(), W1)
    for _ in range(20):
        p = random_vector(rng, 12, 8, decades=(-2, 2))
        res = luxemburg_norm(params, p)
        lo, hi = res.bracket
        assert 0.0 < lo <= res.value == hi
        assert hi - lo <= TOL * hi * (1.0 + 1e-9)
        # modular at the returned norm never exceeds one
        assert res.modular_at_value <= 1.0
        # just below the norm the modular exceeds one
        assert modular(params, p, res.value * (1.0 - 10.0 * TOL)) > 1.0
        assert modular(params, p, 0.999 * res.value) > 1.0


def test_homogeneity_including_complex_scalars():
    rng = random.Random(5)
    params = SpaceParams(0.5, ExpSquare(), W1)
    p = random_vector(rng, 10, 6, decades=(-1, 1))
    base = luxemburg_norm(params, p).value
    for lam in (0.0, 2.0, -3.5, 1j, complex(0.6, -0.8), complex(3, 4)):
        got = luxemburg_norm(params, p.scaled(lam)).value
        assert got == pytest.approx(abs(lam) * base, rel=1e-11, abs=1e-300)


def test_triangle_inequality_randomized():
    rng = random.Random(13)
    params = SpaceParams(1.0, Power(2.0), WeightSequence(1.0, {2: 0.3}))
    for _ in range(50):
        p = random_vector(rng, 20, 50)
        q = random_vector(rng, 20, 50)
        n_p = luxemburg_norm(params, p).value
        n_q = luxemburg_norm(params, q).value
        n_s = luxemburg_norm(params, p + q).value
        assert n_s <= (n_p + n_q) * (1.0 + 1e-11)


def test_verify_norm_axioms_report():
    rng = random.Random(99)
    params = SpaceParams(0.0, ExpLinear(), W1)
    p = random_vector(rng, 8, 5, decades=(-1, 1))
    q = random_vector(rng, 8, 5, decades=(-1, 1))
    rep = verify_norm_axioms(params, p, q, lam=complex(1.2, -0.7))
    assert rep.all_ok
    assert rep.homogeneity_ok and rep.triangle_ok and rep.definiteness_ok
    assert rep.norm_sum <= rep.norm_p + rep.norm_q + 1e-9 * max(
        1.0, rep.norm_p + rep.norm_q)
    empty = verify_norm_axioms(params, SeqVector(), q, lam=2.0)
    assert empty.all_ok and empty.norm_p == 0.0


def test_norm_monotone_in_weight_order():
    rng = random.Random(31)
    phi = Power(2.0)
    for _ in range(20):
        p = random_vector(rng, 15, 40)
        k_lo, k_hi = sorted(rng.uniform(0.0, 2.5) for _ in range(2))
        n_lo = luxemburg_norm(SpaceParams(k_lo, phi, W1), p).value
        n_hi = luxemburg_norm(SpaceParams(k_hi, phi, W1), p).value
        assert n_lo <= n_hi * (1.0 + 1e-11)


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 31))
def test_normalized_vector_has_unit_modular_bound(seed):
    rng = random.Random(seed)
    params = SpaceParams(1.0, Power(2.0), W1)
    p = random_vector(rng, 10, 30)
    res = luxemburg_norm(params, p)
    unit = p.scaled(1.0 / res.value)
    assert modular(params, unit, 1.0) <= 1.0 + 1e-12


def test_norm_overflow_is_reported():
    params = SpaceParams(1.0, ExpSquare(), W1)
    with pytest.raises(ComputationOverflowError) as exc:
        luxemburg_norm(params, SeqVector({1000: 1.0}))
    assert exc.value.index == 1000


def test_norm_rejects_bad_tolerance():
    params = SpaceParams(0.0, Power(2.0), W1)
    p = SeqVector({0: 1.0})
    for bad in (0.0, -1e-3, math.nan):
        with pytest.raises(DomainError):
            luxemburg_norm(params, p, tol_rel=bad)


def test_schauder_truncate():
    p = SeqVector({0: 1.0, -2: 2.0, 2: 3.0, 5: 4.0})
    assert schauder_truncate(p, 2).support == (0, -2, 2)
    assert schauder_truncate(p, 0).support == (0,)
    assert schauder_truncate(p, 99) == p
    with pytest.raises(DomainError):
        schauder_truncate(p, -1)


def test_schauder_curve_spike():
    params = SpaceParams(0.0, Power(2.0), W1)
    curve = schauder_curve(params, SeqVector({5: 2.0}))
    assert len(curve) == 6
    assert all(r == 2.0 for _, r in curve[:5])
    assert curve[5] == (5, 0.0)


def test_schauder_curve_nonincreasing_to_zero():
    rng = random.Random(8)
    params = SpaceParams(1.0, ExpLinear(), W1)
    for _ in range(10):
        p = random_vector(rng, 10, 12, decades=(-1, 1))
        curve = schauder_curve(params, p)
        assert curve[0][0] == 0 and curve[-1] == (p.max_abs_index, 0.0)
        residuals = [r for _, r in curve]
        for a, b in zip(residuals, residuals[1:]):
            assert b <= a * (1.0 + 1e-9) + 1e-15
    assert schauder_curve(params, SeqVector()) == [(0, 0.0)]
