"""Luxemburg norm of finitely supported sequences.

The norm is inf{rho > 0 : modular(p, rho) <= 1}.  For a finite support the
modular is continuous and strictly decreasing in rho wherever positive, so
the infimum is attained and bracketed bisection resolves it.

The lower bracket comes from single-term necessity: each term alone forces
mu(m) * phi(|p_m|/rho) <= 1, i.e. rho >= |p_m| / phi^{-1}(1/mu(m)).  At or
above the largest such rho every individual term is at most 1, so no modular
evaluation inside the bracket can overflow.  The upper bracket doubles from
there.  The returned value is the smallest scale found with modular <= 1,
hence modular(p, value) <= 1 holds exactly for the reported value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ComputationOverflowError, DomainError
from .spaces import SeqVector, SpaceParams, modular, mu

DEFAULT_TOL_REL = 1e-12
_MAX_DOUBLINGS = 1100
_MAX_BISECTIONS = 4000


@dataclass(frozen=True)
class NormResult:
    """Solved norm with its final bracket and diagnostic counters.

    ``value`` is the upper bracket end (smallest scale observed with modular
    at most 1); ``bracket`` is (rho_low, rho_high) with modular > 1 strictly
    below and <= 1 at the top; ``modular_at_value`` is the modular evaluated
    at ``value``; ``iterations`` counts bisection steps.
    """

    value: float
    bracket: tuple
    modular_at_value: float
    iterations: int


def luxemburg_norm(params: SpaceParams, p: SeqVector,
                   tol_rel: float = DEFAULT_TOL_REL) -> NormResult:
    """Solve the Luxemburg norm to relative bracket width tol_rel."""
    tol_rel = float(tol_rel)
    if not math.isfinite(tol_rel) or tol_rel <= 0:
        raise DomainError("tol_rel must be finite and positive")
    if not p:
        return NormResult(0.0, (0.0, 0.0), 0.0, 0)

    phi = params.phi
    support = p.support
    mus = np.array([mu(params, m) for m in support], dtype=float)
    avals = p.abs_values()

    # Single-term necessity: rho >= |p_m| / phi^{-1}(1/mu(m)) for each m.
    rho_low = 0.0
    for a, w in zip(avals.tolist(), mus.tolist()):
        if w == 0.0:
            continue  # underflowed measure; the term never binds
        t = phi.inverse(1.0 / w)
        if t > 0.0:
            rho_low = max(rho_low, a / t)
    if rho_low == 0.0 or math.isinf(rho_low):
        raise ComputationOverflowError(
            "norm bracket not representable: measure weights underflowed "
            "or single-term scale overflowed double range")

    def modular_at(rho: float) -> float:
        args = avals / rho
        bad = np.flatnonzero(~np.isfinite(args))
        if bad.size:
            m = support[int(bad[0])]
            raise ComputationOverflowError(
                f"scaled argument overflow at index {m} during norm solve", index=m)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            terms = mus * phi.eval(args)
        bad = np.flatnonzero(~np.isfinite(terms))
        if bad.size:
            m = support[int(bad[0])]
            raise ComputationOverflowError(
                f"modular term overflow at index {m} during norm solve", index=m)
        return math.fsum(terms)

    m_low = modular_at(rho_low)
    if m_low <= 1.0:
        return NormResult(rho_low, (rho_low, rho_low), m_low, 0)

    lo, hi = rho_low, rho_low
    m_hi = m_low
    for _ in range(_MAX_DOUBLINGS):
        lo, hi = hi, hi * 2.0
        if math.isinf(hi):
            raise ComputationOverflowError("upper norm bracket overflowed double range")
        m_hi = modular_at(hi)
        if m_hi <= 1.0:
            break
    else:
        raise ComputationOverflowError("norm bracket did not close after doubling")

    iters = 0
    while hi - lo > tol_rel * hi and iters < _MAX_BISECTIONS:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket exhausted at float resolution
        m_mid = modular_at(mid)
        if m_mid <= 1.0:
            hi, m_hi = mid, m_mid
        else:
            lo = mid
        iters += 1
    return NormResult(hi, (lo, hi), m_hi, iters)


@dataclass(frozen=True)
class AxiomReport:
    """Norm-axiom spot check on concrete vectors at a given tolerance."""

    homogeneity_ok: bool
    triangle_ok: bool
    definiteness_ok: bool
    norm_p: float
    norm_q: float
    norm_sum: float
    norm_scaled: float
    scale: complex

    @property
    def all_ok(self) -> bool:
        return self.homogeneity_ok and self.triangle_ok and self.definiteness_ok


def verify_norm_axioms(params: SpaceParams, p: SeqVector, q: SeqVector,
                       lam: complex, tol: float = 1e-9) -> AxiomReport:
    """Check absolute homogeneity, the triangle inequality and definiteness.

    Comparisons carry the relative slack tol*max(1, scale of the quantities);
    failures are report entries, never exceptions.
    """
    if not math.isfinite(tol) or tol <= 0:
        raise DomainError("tolerance must be finite and positive")
    lam = complex(lam)
    n_p = luxemburg_norm(params, p).value
    n_q = luxemburg_norm(params, q).value
    n_sum = luxemburg_norm(params, p + q).value
    n_scaled = luxemburg_norm(params, p.scaled(lam)).value
    target = abs(lam) * n_p
    hom_ok = abs(n_scaled - target) <= tol * max(1.0, target)
    tri_ok = n_sum <= n_p + n_q + tol * max(1.0, n_p + n_q)
    def_ok = ((n_p == 0.0) == (len(p) == 0)) and ((n_q == 0.0) == (len(q) == 0))
    return AxiomReport(hom_ok, tri_ok, def_ok, n_p, n_q, n_sum, n_scaled, lam)


def schauder_truncate(p: SeqVector, max_abs: int) -> SeqVector:
    """Partial sum keeping indices with |m| <= max_abs."""
    if int(max_abs) != max_abs or max_abs < 0:
        raise DomainError("truncation index must be a nonnegative integer")
    return p.restrict(int(max_abs))


def schauder_curve(params: SpaceParams, p: SeqVector,
                   tol_rel: float = DEFAULT_TOL_REL):
    """Residual norms ||p - truncation(p, M)|| for M = 0 .. max support index.

    The curve is nonincreasing and its last entry is exactly 0 (the final
    truncation keeps the whole support).  The empty sequence yields [(0, 0)].
    """
    if not p:
        return [(0, 0.0)]
    out = []
    for m_cut in range(p.max_abs_index + 1):
        resid = luxemburg_norm(params, p.tail(m_cut + 1), tol_rel).value
        out.append((m_cut, resid))
    return out


__all__ = ["NormResult", "luxemburg_norm", "AxiomReport", "verify_norm_axioms",
           "schauder_truncate", "schauder_curve", "DEFAULT_TOL_REL"]
