"""Weighted sequence-space primitives.

The measure of an integer index m under parameters (k, phi, w) is

    mu(m) = w_m * (1 + phi(|m|))**k

and the modular of a finitely supported complex sequence p at scale rho > 0 is

    modular(p, rho) = sum_m mu(m) * phi(|p_m| / rho)

summed in canonical support order: increasing |m|, negative index before
positive at equal |m|.  Canonical order plus exact summation (math.fsum)
makes modular values reproducible bit for bit across runs and input orders.

Geometric envelopes |p_m| <= C * r**|m| with a certified polynomial bound on
the measure give closed-form tail majorants, which in turn certify membership
of infinite envelopes in the modular class and in the large and small spaces
without truncating blindly.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CertificateError, ComputationOverflowError, DomainError
from .functions import (ExpCompose, ExpLinear, ExpSquare, OrliczFunction,
                        Power, TabulatedConvex, parse_orlicz)

DYADIC_PROBE_DEPTH = 20
_ENVELOPE_SLACK = 1.0 + 1e-12


class WeightSequence:
    """Strictly positive weights w_m with a certified infimum.

    A constant sequence is a table with no entries.  ``inf_override`` lets a
    caller certify a smaller infimum than the listed entries show (a finite
    table is often a window into an infinite weight sequence); it must not
    exceed the minimum of the listed values.
    """

    def __init__(self, default: float, entries=None, inf_override: float | None = None):
        default = float(default)
        if not math.isfinite(default) or default <= 0:
            raise DomainError("default weight must be finite and positive")
        table = {}
        for m, w in (entries.items() if isinstance(entries, dict) else (entries or ())):
            m = int(m)
            w = float(w)
            if not math.isfinite(w) or w <= 0:
                raise DomainError(f"weight at index {m} must be finite and positive")
            if m in table:
                raise DomainError(f"duplicate weight index {m}")
            table[m] = w
        self._default = default
        self._table = dict(sorted(table.items()))
        listed_min = min([default, *self._table.values()])
        listed_max = max([default, *self._table.values()])
        if inf_override is not None:
            inf_override = float(inf_override)
            if not (0 < inf_override <= listed_min):
                raise DomainError(
                    "inf override must be positive and no larger than every listed weight")
        self._inf = inf_override if inf_override is not None else listed_min
        self._sup = listed_max
        self._override = inf_override

    @classmethod
    def constant(cls, w: float) -> "WeightSequence":
        return cls(w)

    def weight(self, m: int) -> float:
        return self._table.get(int(m), self._default)

    @property
    def inf_w(self) -> float:
        return self._inf

    @property
    def sup_w(self) -> float:
        return self._sup

    @property
    def default(self) -> float:
        return self._default

    @property
    def entries(self):
        return dict(self._table)

    def with_inf(self, inf_override: float) -> "WeightSequence":
        return WeightSequence(self._default, self._table, inf_override)

    def descriptor(self) -> str:
        if not self._table and self._override is None:
            return f"const:{self._default:.17g}"
        body = ";".join(f"{m},{w:.17g}" for m, w in self._table.items())
        return f"table:{self._default:.17g}:[{body}]:inf={self._inf:.17g}"

    def __eq__(self, other):
        return (isinstance(other, WeightSequence)
                and self.descriptor() == other.descriptor())

    def __hash__(self):
        return hash(self.descriptor())

    def __repr__(self):
        return f"WeightSequence[{self.descriptor()}]"


def parse_weights(descriptor: str, inf_override: float | None = None) -> WeightSequence:
    """Build weights from ``const:<w>`` or ``table:<csv-path>[:<default>]``.

    Table CSVs hold ``m,w`` rows; the optional trailing field sets the weight
    at unlisted indices (1.0 if omitted).
    """
    desc = descriptor.strip()
    if desc.startswith("const:"):
        try:
            return WeightSequence(float(desc[len("const:"):]), inf_override=inf_override)
        except ValueError as exc:
            raise DomainError(f"bad constant weight descriptor {descriptor!r}") from exc
    if desc.startswith("table:"):
        rest = desc[len("table:"):]
        path, default = rest, 1.0
        if ":" in rest:
            path, tail = rest.rsplit(":", 1)
            try:
                default = float(tail)
            except ValueError:
                path = rest
        entries = []
        try:
            with open(path, newline="") as fh:
                for row in csv.reader(fh):
                    if not row or not row[0].strip():
                        continue
                    if len(row) != 2:
                        raise DomainError(f"weight rows must be 'm,w', got {row!r}")
                    entries.append((int(row[0]), float(row[1])))
        except OSError as exc:
            raise DomainError(f"cannot read weight table {path!r}: {exc}") from exc
        except ValueError as exc:
            raise DomainError(f"bad weight table row in {path!r}") from exc
        return WeightSequence(default, entries, inf_override=inf_override)
    raise DomainError(f"unknown weight descriptor {descriptor!r}")


@dataclass(frozen=True)
class SpaceParams:
    """Parameters (k, phi, w) of a weighted Orlicz sequence space."""

    k: float
    phi: OrliczFunction
    weights: WeightSequence = field(default_factory=lambda: WeightSequence(1.0))

    def __post_init__(self):
        k = float(self.k)
        if not math.isfinite(k):
            raise DomainError("order k must be finite")
        object.__setattr__(self, "k", k)
        if not isinstance(self.phi, OrliczFunction):
            raise DomainError("phi must be an OrliczFunction")
        if not isinstance(self.weights, WeightSequence):
            raise DomainError("weights must be a WeightSequence")

    def space_key(self):
        return (self.k, self.phi.descriptor(), self.weights.descriptor())


def _canonical_key(m: int):
    return (abs(m), m >= 0)


class SeqVector:
    """Finitely supported complex sequence in canonical support order.

    Construction accepts an iterable of (index, value) pairs or a dict.
    Duplicate indices are a hard error; exact zero values are dropped so the
    stored support is the true support.
    """

    __slots__ = ("_items",)

    def __init__(self, items=()):
        pairs = items.items() if isinstance(items, dict) else items
        seen = {}
        for m, v in pairs:
            if int(m) != m:
                raise DomainError(f"index {m!r} is not an integer")
            m = int(m)
            v = complex(v)
            if m in seen:
                raise DomainError(f"duplicate index {m} in sequence construction")
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise DomainError(f"value at index {m} must be finite")
            seen[m] = v
        self._items = tuple(sorted(
            ((m, v) for m, v in seen.items() if v != 0), key=lambda kv: _canonical_key(kv[0])))

    @classmethod
    def from_csv(cls, path) -> "SeqVector":
        pairs = []
        try:
            with open(path, newline="") as fh:
                for row in csv.reader(fh):
                    if not row or not row[0].strip():
                        continue
                    if len(row) != 3:
                        raise DomainError(f"sequence rows must be 'm,re,im', got {row!r}")
                    pairs.append((int(row[0]), complex(float(row[1]), float(row[2]))))
        except OSError as exc:
            raise DomainError(f"cannot read sequence file {path!r}: {exc}") from exc
        except ValueError as exc:
            raise DomainError(f"bad sequence row in {path!r}") from exc
        return cls(pairs)

    @property
    def items(self):
        return self._items

    @property
    def support(self):
        return tuple(m for m, _ in self._items)

    @property
    def values(self):
        return tuple(v for _, v in self._items)

    def abs_values(self) -> np.ndarray:
        return np.array([abs(v) for _, v in self._items], dtype=float)

    @property
    def max_abs_index(self) -> int:
        return abs(self._items[-1][0]) if self._items else 0

    def __len__(self):
        return len(self._items)

    def __bool__(self):
        return bool(self._items)

    def __eq__(self, other):
        return isinstance(other, SeqVector) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def scaled(self, lam: complex) -> "SeqVector":
        lam = complex(lam)
        if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
            raise DomainError("scale factor must be finite")
        return SeqVector([(m, lam * v) for m, v in self._items])

    def __add__(self, other: "SeqVector") -> "SeqVector":
        if not isinstance(other, SeqVector):
            return NotImplemented
        acc = dict(self._items)
        for m, v in other._items:
            acc[m] = acc.get(m, 0j) + v
        return SeqVector(acc)

    def __sub__(self, other: "SeqVector") -> "SeqVector":
        if not isinstance(other, SeqVector):
            return NotImplemented
        return self + other.scaled(-1.0)

    def restrict(self, max_abs: int) -> "SeqVector":
        """Keep indices with |m| <= max_abs."""
        return SeqVector([(m, v) for m, v in self._items if abs(m) <= max_abs])

    def tail(self, min_abs: int) -> "SeqVector":
        """Keep indices with |m| >= min_abs."""
        return SeqVector([(m, v) for m, v in self._items if abs(m) >= min_abs])

    def __repr__(self):
        body = ", ".join(f"{m}: {v}" for m, v in self._items[:6])
        more = "" if len(self._items) <= 6 else f", ... ({len(self._items)} terms)"
        return f"SeqVector({{{body}{more}}})"


def mu(params: SpaceParams, m: int) -> float:
    """Measure of index m: w_m * (1 + phi(|m|))**k.

    Raises ComputationOverflowError naming m when the factor leaves double
    range (k > 0 with a fast-growing generator).  For k < 0 the factor may
    underflow to exactly 0.0; that is accepted, the true value being below
    anything representable.
    """
    m = int(m)
    w = params.weights.weight(m)
    if params.k == 0:
        return w
    base = 1.0 + params.phi.eval(float(abs(m)))
    try:
        factor = base ** params.k
    except OverflowError:
        factor = math.inf
    val = w * factor
    if math.isinf(val) or math.isnan(val):
        raise ComputationOverflowError(
            f"measure overflow at index {m}: (1 + phi({abs(m)}))**{params.k:g} "
            "exceeds double range", index=m)
    return val


def _term_arrays(params: SpaceParams, p: SeqVector):
    mus = np.array([mu(params, m) for m in p.support], dtype=float)
    return mus, p.abs_values()


def modular(params: SpaceParams, p: SeqVector, rho: float) -> float:
    """Weighted modular sum_m mu(m) * phi(|p_m| / rho) at scale rho > 0."""
    rho = float(rho)
    if not math.isfinite(rho) or rho <= 0:
        raise DomainError("scale rho must be finite and positive")
    if not p:
        return 0.0
    mus, avals = _term_arrays(params, p)
    args = avals / rho
    bad = np.flatnonzero(~np.isfinite(args))
    if bad.size:
        m = p.support[int(bad[0])]
        raise ComputationOverflowError(
            f"scaled argument overflow at index {m} for rho={rho:g}", index=m)
    terms = mus * params.phi.eval(args)
    bad = np.flatnonzero(~np.isfinite(terms))
    if bad.size:
        m = p.support[int(bad[0])]
        raise ComputationOverflowError(
            f"modular term overflow at index {m} for rho={rho:g}", index=m)
    return math.fsum(terms)


@dataclass(frozen=True)
class GeometricEnvelope:
    """Certificate |p_m| <= amplitude * ratio**|m| with a measure majorant.

    ``poly_w`` and ``poly_a`` certify mu(m) <= poly_w * (1 + |m|)**poly_a for
    every |m| >= valid_from; build envelopes through geometric_envelope so the
    majorant is derived rather than asserted.
    """

    amplitude: float
    ratio: float
    poly_w: float
    poly_a: float
    valid_from: int = 0

    def __post_init__(self):
        amp = float(self.amplitude)
        r = float(self.ratio)
        if not math.isfinite(amp) or amp < 0:
            raise DomainError("envelope amplitude must be finite and nonnegative")
        if not 0.0 < r < 1.0:
            raise DomainError("envelope ratio must lie strictly inside (0, 1)")
        if not math.isfinite(self.poly_w) or self.poly_w <= 0:
            raise DomainError("measure majorant coefficient must be finite and positive")
        if not math.isfinite(self.poly_a) or self.poly_a < 0:
            raise DomainError("measure majorant exponent must be finite and nonnegative")
        if int(self.valid_from) != self.valid_from or self.valid_from < 0:
            raise DomainError("valid_from must be a nonnegative integer")
        object.__setattr__(self, "amplitude", amp)
        object.__setattr__(self, "ratio", r)
        object.__setattr__(self, "poly_w", float(self.poly_w))
        object.__setattr__(self, "poly_a", float(self.poly_a))
        object.__setattr__(self, "valid_from", int(self.valid_from))

    def bound_at(self, m: int) -> float:
        return self.amplitude * self.ratio ** abs(m)

    def dominates(self, p: SeqVector) -> bool:
        return all(abs(v) <= self.bound_at(m) * _ENVELOPE_SLACK for m, v in p.items)


def weight_poly_bound(params: SpaceParams):
    """Certified (W, a) with mu(m) <= W * (1 + |m|)**a for all m.

    k <= 0 gives (sup w, 0).  Powers give (sup w * 2**k, s*k) via
    1 + m**s <= 2 * max(1, m)**s.  Tabulated generators are eventually
    linear, so 1 + phi(m) <= (1 + v_last + slope_last) * (1 + m).  The
    exponential families grow faster than any polynomial, so k > 0 admits no
    such majorant and a CertificateError is raised.
    """
    w_sup = params.weights.sup_w
    k = params.k
    if k <= 0:
        return w_sup, 0.0
    phi = params.phi
    if isinstance(phi, Power):
        return w_sup * 2.0 ** k, phi.s * k
    if isinstance(phi, TabulatedConvex):
        b = 1.0 + phi.final_value + max(phi.final_slope, 0.0)
        return w_sup * b ** k, k
    if isinstance(phi, (ExpSquare, ExpLinear, ExpCompose)):
        raise CertificateError(
            "measure grows superpolynomially (exponential generator with k > 0); "
            "no polynomial majorant exists")
    raise CertificateError(f"no measure majorant rule for {type(phi).__name__}")


def geometric_envelope(params: SpaceParams, amplitude: float, ratio: float,
                       valid_from: int = 0) -> GeometricEnvelope:
    """Build an envelope for (params)-spaces, deriving the measure majorant."""
    poly_w, poly_a = weight_poly_bound(params)
    return GeometricEnvelope(amplitude, ratio, poly_w, poly_a, valid_from)


def _poly_geometric_tail(a: float, r: float, start: int) -> float:
    """Upper bound for sum_{m >= start} (1+m)**a * r**m via a ratio-test majorant.

    Consecutive-term ratios r*((m+2)/(m+1))**a decrease toward r, so once the
    current ratio q drops below (1+r)/2 < 1 the remaining tail is at most
    f(m) * q/(1-q).
    """
    q_cap = 0.5 * (1.0 + r)
    m = start
    f = (1.0 + m) ** a * r ** m
    terms = []
    for _ in range(1_000_000):
        if f == 0.0:
            return math.fsum(terms)
        q = r * ((m + 2.0) / (m + 1.0)) ** a
        terms.append(f)
        if q <= q_cap:
            return math.fsum(terms) + f * q / (1.0 - q)
        f *= q
        m += 1
    raise CertificateError("tail ratio test failed to stabilize (ratio too close to 1)")


def modular_tail_bound(params: SpaceParams, envelope: GeometricEnvelope,
                       rho: float, trunc: int) -> float:
    """Certified upper bound on sum_{|m| > trunc} mu(m) * phi(|p_m|/rho)
    for every p dominated by the envelope.

    Uses phi(x) <= (phi(t*)/t*) * x for x <= t* (convexity through the
    origin) at t* = amplitude * ratio**trunc / rho, then sums the resulting
    polynomial-geometric majorant in closed form.
    """
    rho = float(rho)
    if not math.isfinite(rho) or rho <= 0:
        raise DomainError("scale rho must be finite and positive")
    if int(trunc) != trunc or trunc < 1:
        raise DomainError("truncation index must be an integer >= 1")
    trunc = int(trunc)
    if trunc < envelope.valid_from:
        raise DomainError(
            f"truncation index {trunc} precedes envelope validity {envelope.valid_from}")
    if envelope.amplitude == 0.0:
        return 0.0
    t_star = envelope.amplitude * envelope.ratio ** trunc / rho
    if t_star == 0.0:
        # Every dominated tail value underflows, so all representable tails are 0.
        return 0.0
    slope = params.phi.eval(t_star) / t_star
    if math.isinf(slope):
        raise ComputationOverflowError(
            f"linearization point {t_star:g} overflows the generator; "
            "increase the truncation index or the scale")
    s = _poly_geometric_tail(envelope.poly_a, envelope.ratio, trunc + 1)
    bound = 2.0 * envelope.poly_w * slope * (envelope.amplitude / rho) * s
    if math.isinf(bound) or math.isnan(bound):
        raise ComputationOverflowError("tail bound overflowed double range")
    return bound


@dataclass(frozen=True)
class TailCertificate:
    """One certified scale: explicit part plus tail majorant at that rho."""

    rho: float
    trunc: int
    tail_bound: float
    modular_upper: float | None


@dataclass(frozen=True)
class MembershipReport:
    """Verdicts for the modular class, the large space and the small space."""

    in_class: bool
    in_large: bool
    in_small: bool
    large_witness_rho: float | None
    certificates: tuple
    note: str = ""


def classify(params: SpaceParams, p: SeqVector | None = None,
             envelope: GeometricEnvelope | None = None,
             probe_depth: int = DYADIC_PROBE_DEPTH) -> MembershipReport:
    """Classify membership of p (or of every envelope-dominated sequence).

    Finitely supported sequences with no envelope belong to all three sets.
    With an envelope the verdicts come from tail certificates: the modular
    class and the large space need some scale rho in {1, 2, 4, ...} with a
    finite certified modular bound, the small space needs every dyadic scale
    down to 2**-probe_depth.  The truncation index is chosen per scale so the
    linearization point stays at or below 1; explicit partial sums may still
    overflow at tiny scales, which is reported (modular_upper = None) without
    affecting the finiteness verdict.
    """
    if p is None:
        p = SeqVector()
    if envelope is None:
        return MembershipReport(True, True, True, 1.0, (),
                                "finitely supported; member of every scale")
    if not envelope.dominates(p):
        bad = next(m for m, v in p.items if abs(v) > envelope.bound_at(m) * _ENVELOPE_SLACK)
        raise DomainError(f"envelope does not dominate the sequence at index {bad}")

    base_trunc = max(1, envelope.valid_from, p.max_abs_index)
    log_r = math.log(envelope.ratio)

    def certify(rho: float) -> TailCertificate:
        trunc = base_trunc
        if envelope.amplitude > rho:
            # smallest M with amplitude * ratio**M <= rho, so t* <= 1
            need = math.ceil(math.log(rho / envelope.amplitude) / log_r)
            trunc = max(trunc, int(need))
        tail = modular_tail_bound(params, envelope, rho, trunc)
        supp = set(p.support)
        upper: float | None
        try:
            explicit = modular(params, p, rho)
            off = math.fsum(
                mu(params, m) * params.phi.eval(envelope.bound_at(m) / rho)
                for m in range(-trunc, trunc + 1) if m not in supp)
            upper = explicit + off + tail
        except ComputationOverflowError:
            upper = None
        return TailCertificate(rho, trunc, tail, upper)

    certs = []
    in_class = False
    large_witness = None
    for j in range(probe_depth + 1):
        rho = 2.0 ** j
        try:
            certs.append(certify(rho))
            in_class = True
            large_witness = rho
            break
        except (CertificateError, ComputationOverflowError):
            continue
    in_small = True
    for j in range(1, probe_depth + 1):
        rho = 2.0 ** (-j)
        try:
            certs.append(certify(rho))
        except (CertificateError, ComputationOverflowError):
            in_small = False
            break
    note = "tail-certified on dyadic scales" if in_class else "no scale certified"
    return MembershipReport(in_class, in_class, in_small and in_class,
                            large_witness, tuple(certs), note)


__all__ = [
    "WeightSequence", "parse_weights", "SpaceParams", "SeqVector", "mu",
    "modular", "GeometricEnvelope", "geometric_envelope", "weight_poly_bound",
    "modular_tail_bound", "TailCertificate", "MembershipReport", "classify",
    "parse_orlicz",
]
