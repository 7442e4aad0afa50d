"""Degenerate period data for a rational nodal curve with n marked pairs.

A configuration of n distinct rational constants kappa_1..kappa_n plays the
role of the node parameters.  All period-like quantities attached to it are
logarithms of nonzero rationals, so instead of floating point we carry the
arguments around exactly: ``LogRational`` stores log(arg) by its positive
rational argument, and signed variants keep a sign tag alongside.

The pieces computed here:

* the g x g limit period matrix R with exp(R_ii) = (kappa_{i+1}-kappa_1)^(-4)
  and exp(R_ij) = f_ij^2 for the cross ratio
  f_ij = (kappa_{i+1}-kappa_{j+1}) / ((kappa_{i+1}-kappa_1)(kappa_{j+1}-kappa_1)),
* theta-series coefficients a_c = exp(c^T R c / 2) as exact positive
  rationals,
* the first three period vectors (U, V, W), which are the power sums
  kappa_1^m - kappa_{j+1}^m for m = 1, 2, 3 up to the component sign, and
* the Abel sums of a degree-g divisor against the marked pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph_jacobian import RationalLike, frac, frac_vector

__all__ = [
    "KappaConfig",
    "LogRational",
    "SignedLog",
    "RMatrix",
    "PeriodVectors",
    "Divisor",
    "limit_R",
    "theta_coefficients",
    "uvw",
    "abel_map",
]

COMPONENTS = ("X+", "X-")


@dataclass(frozen=True)
class KappaConfig:
    """n distinct rational node parameters; sorted_flag records whether they
    are strictly increasing (some constructions require that)."""

    kappas: tuple[Fraction, ...]
    sorted_flag: bool

    @property
    def n(self) -> int:
        return len(self.kappas)

    @property
    def genus(self) -> int:
        return len(self.kappas) - 1

    def kappa(self, i: int) -> Fraction:
        """1-based access."""
        return self.kappas[i - 1]

    def diff(self, i: int, j: int) -> Fraction:
        """kappa_i - kappa_j, 1-based."""
        return self.kappas[i - 1] - self.kappas[j - 1]


def kappa_config(values: Iterable[RationalLike]) -> KappaConfig:
    ks = frac_vector(values)
    if len(ks) < 2:
        raise ValueError("need at least two node parameters")
    if len(set(ks)) != len(ks):
        raise ValueError(f"node parameters must be distinct, got {ks}")
    is_sorted = all(a < b for a, b in zip(ks, ks[1:]))
    return KappaConfig(kappas=ks, sorted_flag=is_sorted)


@dataclass(frozen=True)
class LogRational:
    """log(arg) for a positive rational arg, stored exactly.

    Addition and subtraction of logs multiply and divide the arguments;
    integer scaling raises the argument to a power.  ``value()`` is the only
    place a float appears.
    """

    arg: Fraction

    def __post_init__(self) -> None:
        if self.arg <= 0:
            raise ValueError(f"argument must be a positive rational, got {self.arg}")

    def __add__(self, other: "LogRational") -> "LogRational":
        return LogRational(self.arg * other.arg)

    def __sub__(self, other: "LogRational") -> "LogRational":
        return LogRational(self.arg / other.arg)

    def __neg__(self) -> "LogRational":
        return LogRational(1 / self.arg)

    def scale(self, m: int) -> "LogRational":
        return LogRational(self.arg**m)

    def value(self) -> float:
        return math.log(self.arg)


@dataclass(frozen=True)
class SignedLog:
    """A real number written as sign * exp(log_abs), with exact pieces."""

    sign: int
    log_abs: LogRational

    def exp_value(self) -> Fraction:
        """The rational sign * arg the log was taken of."""
        return self.sign * self.log_abs.arg


def signed_log(value: Fraction) -> SignedLog:
    if value == 0:
        raise ValueError("cannot take the log of zero")
    sign = 1 if value > 0 else -1
    return SignedLog(sign=sign, log_abs=LogRational(abs(value)))


@dataclass(frozen=True)
class RMatrix:
    """Limit period matrix, entries as exact logs; index 0 plays the role of
    the distinguished first node and contributes zero rows/columns where the
    formulas below ask for them."""

    entries: tuple[tuple[LogRational, ...], ...]
    kappas: KappaConfig

    @property
    def genus(self) -> int:
        return len(self.entries)

    def exp_entry(self, i: int, j: int) -> Fraction:
        """exp(R_ij), 1-based in 1..g; index 0 is allowed and gives 1."""
        if i == 0 or j == 0:
            return Fraction(1)
        return self.entries[i - 1][j - 1].arg

    def exp_half_diag(self, i: int) -> Fraction:
        """exp(R_ii / 2) = (kappa_{i+1} - kappa_1)^(-2); index 0 gives 1."""
        if i == 0:
            return Fraction(1)
        return self.kappas.diff(i + 1, 1) ** -2


def limit_R(kc: KappaConfig) -> RMatrix:
    """The g x g limit period matrix of the node configuration."""
    g = kc.genus
    rows = []
    for i in range(1, g + 1):
        row = []
        for j in range(1, g + 1):
            if i == j:
                arg = kc.diff(i + 1, 1) ** -4
            else:
                f = kc.diff(i + 1, j + 1) / (kc.diff(i + 1, 1) * kc.diff(j + 1, 1))
                arg = f**2
            row.append(LogRational(arg))
        rows.append(tuple(row))
    return RMatrix(entries=tuple(rows), kappas=kc)


def theta_coefficients(
    R: RMatrix, points: Iterable[Sequence[int]]
) -> dict[tuple[int, ...], Fraction]:
    """exp(c^T R c / 2) for each lattice point c, as exact rationals.

    The half-integer diagonal contribution is handled through exp(R_ii/2),
    which is itself rational, so no square roots ever appear.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for point in points:
        c = tuple(int(x) for x in point)
        if len(c) != R.genus:
            raise ValueError(f"point {c} has wrong length for genus {R.genus}")
        val = Fraction(1)
        for i in range(1, R.genus + 1):
            ci = c[i - 1]
            if ci:
                val *= R.exp_half_diag(i) ** (ci * ci)
        for i in range(1, R.genus + 1):
            for j in range(i + 1, R.genus + 1):
                e = c[i - 1] * c[j - 1]
                if e:
                    val *= R.exp_entry(i, j) ** e
        out[c] = val
    return out


@dataclass(frozen=True)
class PeriodVectors:
    """First three period vectors; component_choice flips the overall sign."""

    U: tuple[Fraction, ...]
    V: tuple[Fraction, ...]
    W: tuple[Fraction, ...]
    component_choice: str

    def dispersion_residuals(self) -> tuple[Fraction, ...]:
        """U_j^4 + 3 V_j^2 - 4 U_j W_j per coordinate; identically zero on
        period vectors coming from a node configuration."""
        return tuple(
            u**4 + 3 * v**2 - 4 * u * w for u, v, w in zip(self.U, self.V, self.W)
        )


def uvw(kc: KappaConfig, component: str = "X+") -> PeriodVectors:
    """Period vectors of the configuration on the chosen component.

    On "X+" the j-th entries are kappa_1^m - kappa_{j+1}^m for m = 1, 2, 3;
    on "X-" all three vectors are negated.
    """
    if component not in COMPONENTS:
        raise ValueError(f"component must be one of {COMPONENTS}, got {component!r}")
    sgn = 1 if component == "X+" else -1
    k1 = kc.kappa(1)
    U = tuple(sgn * (k1 - kc.kappa(j)) for j in range(2, kc.n + 1))
    V = tuple(sgn * (k1**2 - kc.kappa(j) ** 2) for j in range(2, kc.n + 1))
    W = tuple(sgn * (k1**3 - kc.kappa(j) ** 3) for j in range(2, kc.n + 1))
    return PeriodVectors(U=U, V=V, W=W, component_choice=component)


@dataclass(frozen=True)
class Divisor:
    """A degree-g rational divisor: the first split_k points share the
    component of the base point p0, the rest sit on the other component."""

    points: tuple[Fraction, ...]
    split_k: int
    p0_component: str

    def __post_init__(self) -> None:
        if self.p0_component not in COMPONENTS:
            raise ValueError(f"p0_component must be one of {COMPONENTS}")
        if not 0 <= self.split_k <= len(self.points):
            raise ValueError(
                f"split_k must be between 0 and {len(self.points)}, got {self.split_k}"
            )

    def P_at(self, z: Fraction) -> Fraction:
        """prod_{j <= split_k} (z - p_j)."""
        val = Fraction(1)
        for p in self.points[: self.split_k]:
            val *= z - p
        return val

    def Q_prod_at(self, z: Fraction) -> Fraction:
        """prod over the remaining points of 1/(z - p)."""
        val = Fraction(1)
        for p in self.points[self.split_k :]:
            val /= z - p
        return val


def make_divisor(
    points: Iterable[RationalLike], split_k: int, p0_component: str = "X+"
) -> Divisor:
    return Divisor(points=frac_vector(points), split_k=split_k, p0_component=p0_component)


def abel_map(kc: KappaConfig, d: Divisor) -> tuple[SignedLog, ...]:
    """Abel sums of the divisor: entry i is the exact log of
    P(kappa_{i+1}) Q(kappa_{i+1}) / (P(kappa_1) Q(kappa_1)), sign tagged.

    The divisor must have g = n - 1 points, none of them equal to a node
    parameter (those would be zeros or poles of the integrand).
    """
    if len(d.points) != kc.genus:
        raise ValueError(f"divisor must have {kc.genus} points, got {len(d.points)}")
    if set(d.points) & set(kc.kappas):
        raise ValueError("divisor points must avoid the node parameters")
    base = d.P_at(kc.kappa(1)) * d.Q_prod_at(kc.kappa(1))
    out = []
    for i in range(1, kc.genus + 1):
        z = kc.kappa(i + 1)
        out.append(signed_log(d.P_at(z) * d.Q_prod_at(z) / base))
    return tuple(out)
