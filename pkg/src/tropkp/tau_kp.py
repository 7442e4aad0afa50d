"""Finite exponential tau sums, their bilinear residuals, and KP checks.

A tau function here is a finite sum of exponentials of linear forms in
(x, y, t): each term has an exact rational coefficient, an integer label
(a lattice point or a 0/1 column indicator), and an exact rational wave
triple.  Two layers of certification operate on them:

* exact: ``hirota_residual`` groups the quadratic terms of the bilinear
  operator D_x^4 - 4 D_x D_t + 3 D_y^2 applied to tau * tau by the label sum
  of the contributing pair and returns every group value as a Fraction.  The
  sum vanishes group by group precisely when tau solves the bilinear
  equation, so an all-zero dictionary is a proof, not an approximation.
* numeric: ``kp_residual_numeric`` evaluates
  (-4 u_t + 6 u u_x + u_xxx)_x + 3 u_yy for u = 2 (log tau)_xx at sample
  points via truncated Taylor jets in multiple precision (mpmath); the x
  partials are carried to order 6, which the fourth x-derivative of u needs.

Per-point exponent shifts keep the numerics stable: subtracting the largest
exponent at a sample is a constant shift of log tau and drops out of every
derivative taken here.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from mpmath import mp

from .hirota_parametrization import (
    GrassmannPoint,
    HirotaPoint,
    hypersimplex_labels,
    label_lattice_point,
    vandermonde_minor,
)
from .tropical_limit import KappaConfig, PeriodVectors

__all__ = [
    "TauTerm",
    "TauFunction",
    "tau_from_grassmannian",
    "tau_from_theta",
    "tau_from_hirota_point",
    "lattice_alphas",
    "hirota_residual",
    "evaluate_u",
    "kp_residual_numeric",
    "spacetime_inversion_check",
]

Wave = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class TauTerm:
    coeff: Fraction
    label: tuple[int, ...]
    wave: Wave


@dataclass(frozen=True)
class TauFunction:
    """Sum of coeff * exp(wave . (x, y, t)) over the terms."""

    terms: tuple[TauTerm, ...]

    def normalized_signature(self) -> tuple[tuple[Wave, Fraction], ...]:
        """Gauge-invariant fingerprint: merge equal waves, shift so the
        lexicographically smallest wave is zero, scale its coefficient to 1.

        Two tau functions describe the same solution exactly when they differ
        by a nonzero constant factor and a shared exponential-linear factor,
        and that holds exactly when their signatures match.
        """
        merged: dict[Wave, Fraction] = {}
        for term in self.terms:
            merged[term.wave] = merged.get(term.wave, Fraction(0)) + term.coeff
        merged = {w: v for w, v in merged.items() if v != 0}
        if not merged:
            raise ValueError("tau function is identically zero")
        base = min(merged)
        scale = merged[base]
        sig = tuple(
            sorted(
                (tuple(a - b for a, b in zip(w, base)), v / scale)
                for w, v in merged.items()
            )
        )
        return sig


def tau_from_grassmannian(gp: GrassmannPoint, kc: KappaConfig) -> TauFunction:
    """tau = sum over column sets J of (minor_J * K_J) exp(theta_J), where
    theta_J collects kappa_j x + kappa_j^2 y + kappa_j^3 t over j in J.
    Terms with vanishing minor are dropped."""
    if gp.n != kc.n:
        raise ValueError("matrix and node configuration have different sizes")
    terms = []
    for J in hypersimplex_labels(gp.n, gp.k):
        coeff = gp.pluecker[J] * vandermonde_minor(kc, J)
        if coeff == 0:
            continue
        wave = (
            sum((kc.kappa(j) for j in J), Fraction(0)),
            sum((kc.kappa(j) ** 2 for j in J), Fraction(0)),
            sum((kc.kappa(j) ** 3 for j in J), Fraction(0)),
        )
        indicator = tuple(1 if j in J else 0 for j in range(1, gp.n + 1))
        terms.append(TauTerm(coeff=coeff, label=indicator, wave=wave))
    return TauFunction(terms=tuple(terms))


def tau_from_theta(
    alphas: dict[tuple[int, ...], Fraction],
    pv: PeriodVectors,
    points: Optional[Iterable[Sequence[int]]] = None,
) -> TauFunction:
    """tau = sum over lattice points c of alpha_c exp((c.U) x + (c.V) y + (c.W) t)."""
    if points is None:
        points = sorted(alphas)
    terms = []
    for point in points:
        c = tuple(int(v) for v in point)
        coeff = alphas[c]
        if coeff == 0:
            continue
        if len(c) != len(pv.U):
            raise ValueError(f"point {c} does not match the period vectors")
        wave = (
            sum((x * u for x, u in zip(c, pv.U)), Fraction(0)),
            sum((x * v for x, v in zip(c, pv.V)), Fraction(0)),
            sum((x * w for x, w in zip(c, pv.W)), Fraction(0)),
        )
        terms.append(TauTerm(coeff=coeff, label=c, wave=wave))
    return TauFunction(terms=tuple(terms))


def lattice_alphas(hp: HirotaPoint) -> dict[tuple[int, ...], Fraction]:
    """Reindex a coefficient family from column sets to lattice points.

    For the first graph vertex this is the label bijection of the canonical
    class-k vertex; for the second, labels are complements and the matching
    lattice points are the negatives of the class-(n-k) ones, which is what
    pairs correctly with the sign-flipped period vectors.
    """
    n = len(hp.uvw.U) + 1
    out: dict[tuple[int, ...], Fraction] = {}
    for label, val in hp.alphas.items():
        c = label_lattice_point(n, len(label), label)
        if hp.vertex_choice == "v2":
            c = tuple(-x for x in c)
        out[c] = val
    return out


def tau_from_hirota_point(hp: HirotaPoint) -> TauFunction:
    return tau_from_theta(lattice_alphas(hp), hp.uvw)


def _quartic(dx: Fraction, dy: Fraction, dt: Fraction) -> Fraction:
    """P(x, y, t) = x^4 - 4 x t + 3 y^2, the symbol of the bilinear operator."""
    return dx**4 - 4 * dx * dt + 3 * dy**2


def hirota_residual(tau: TauFunction) -> dict[tuple[int, ...], Fraction]:
    """Exact bilinear residual, grouped by the label sum of each term pair.

    Every unordered pair of distinct terms contributes
    coeff_i coeff_j P(wave_i - wave_j) to the group of label_i + label_j
    (P is even, so the pair order is immaterial).  Diagonal pairs would
    contribute P(0) = 0 and are omitted.  tau solves the bilinear equation
    iff every returned value is zero.
    """
    groups: dict[tuple[int, ...], Fraction] = {}
    for t1, t2 in itertools.combinations(tau.terms, 2):
        d = tuple(a + b for a, b in zip(t1.label, t2.label))
        dw = tuple(a - b for a, b in zip(t1.wave, t2.wave))
        val = t1.coeff * t2.coeff * _quartic(*dw)
        groups[d] = groups.get(d, Fraction(0)) + val
    return groups


# ---------------------------------------------------------------------------
# numeric layer: truncated Taylor jets of log tau in multiple precision
# ---------------------------------------------------------------------------

_XCAP, _YCAP, _TCAP = 6, 2, 1
_MAX_TOTAL = _XCAP + _YCAP + _TCAP


def _precision() -> int:
    raw = os.environ.get("TROPKP_PRECISION", "30")
    try:
        dps = int(raw)
    except ValueError as exc:
        raise ValueError(f"TROPKP_PRECISION must be an integer, got {raw!r}") from exc
    return max(dps, 15)


def _to_mpf(q: Fraction):
    return mp.mpf(q.numerator) / mp.mpf(q.denominator)


def _jet_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for (a1, b1, c1), v1 in f.items():
        for (a2, b2, c2), v2 in g.items():
            a, b, c = a1 + a2, b1 + b2, c1 + c2
            if a > _XCAP or b > _YCAP or c > _TCAP:
                continue
            key = (a, b, c)
            prev = out.get(key)
            out[key] = v1 * v2 if prev is None else prev + v1 * v2
    return out


def _jet_log(f: dict) -> dict:
    """log of a jet with nonzero constant term, via the alternating series in
    eps = f/f0 - 1 (nilpotent to order > total degree cap)."""
    f0 = f[(0, 0, 0)]
    eps = {k: v / f0 for k, v in f.items() if k != (0, 0, 0)}
    out = {(0, 0, 0): mp.log(f0)}
    power = dict(eps)
    for m in range(1, _MAX_TOTAL + 1):
        if not power:
            break
        coef = mp.mpf(1 if m % 2 else -1) / m
        for k, v in power.items():
            prev = out.get(k)
            out[k] = coef * v if prev is None else prev + coef * v
        power = _jet_mul(power, eps)
    return out


def _log_tau_derivatives(tau: TauFunction, x: float, y: float, t: float) -> dict:
    """Partial derivatives of log tau at a point, keyed by (a, b, c) with
    a <= 6, b <= 2, c <= 1."""
    if not tau.terms:
        raise ValueError("tau function has no terms")
    mx, my, mt = mp.mpf(x), mp.mpf(y), mp.mpf(t)
    exps = []
    for term in tau.terms:
        u, v, w = (_to_mpf(q) for q in term.wave)
        exps.append((u, v, w, u * mx + v * my + w * mt))
    peak = max(e[3] for e in exps)
    jet: dict = {}
    for term, (u, v, w, theta) in zip(tau.terms, exps):
        weight = _to_mpf(term.coeff) * mp.e ** (theta - peak)
        ua = mp.mpf(1)
        for a in range(_XCAP + 1):
            vb = mp.mpf(1)
            for b in range(_YCAP + 1):
                wc = mp.mpf(1)
                for c in range(_TCAP + 1):
                    key = (a, b, c)
                    contrib = weight * ua * vb * wc / (
                        math.factorial(a) * math.factorial(b) * math.factorial(c)
                    )
                    prev = jet.get(key)
                    jet[key] = contrib if prev is None else prev + contrib
                    wc *= w
                vb *= v
            ua *= u
    log_jet = _jet_log(jet)
    return {
        key: val * math.factorial(key[0]) * math.factorial(key[1]) * math.factorial(key[2])
        for key, val in log_jet.items()
    }


def evaluate_u(tau: TauFunction, x: float, y: float, t: float) -> float:
    """u(x, y, t) = 2 (log tau)_xx."""
    with mp.workdps(_precision()):
        d = _log_tau_derivatives(tau, x, y, t)
        return float(2 * d[(2, 0, 0)])


def kp_residual_numeric(
    tau: TauFunction, samples: Iterable[tuple[float, float, float]]
) -> float:
    """Largest absolute value of
    -4 u_xt + 6 u_x^2 + 6 u u_xx + u_xxxx + 3 u_yy over the samples."""
    worst = mp.mpf(0)
    with mp.workdps(_precision()):
        for x, y, t in samples:
            d = _log_tau_derivatives(tau, x, y, t)
            u = 2 * d[(2, 0, 0)]
            u_x = 2 * d[(3, 0, 0)]
            u_xx = 2 * d[(4, 0, 0)]
            u_xxxx = 2 * d[(6, 0, 0)]
            u_xt = 2 * d[(3, 0, 1)]
            u_yy = 2 * d[(2, 2, 0)]
            res = -4 * u_xt + 6 * u_x**2 + 6 * u * u_xx + u_xxxx + 3 * u_yy
            worst = max(worst, abs(res))
    return float(worst)


def spacetime_inversion_check(
    tau_v1: TauFunction,
    tau_v2: TauFunction,
    samples: Iterable[tuple[float, float, float]],
) -> float:
    """max over samples of |u_2(x, y, t) - u_1(-x, -y, -t)|."""
    worst = 0.0
    for x, y, t in samples:
        u2 = evaluate_u(tau_v2, x, y, t)
        u1 = evaluate_u(tau_v1, -x, -y, -t)
        worst = max(worst, abs(u2 - u1))
    return worst
