"""Exact lattice geometry for the Jacobian of a banana graph.

The graph in question has two vertices joined by ``n`` parallel edges, so its
cycle space has rank ``g = n - 1``.  We fix the cycle basis whose i-th element
runs along edge 1 and back along edge ``i + 1``; written against the reference
edge directions this is the integer matrix ``B`` with rows ``e_1 - e_{i+1}``.
Positive rational edge lengths ``l`` then give the Gram matrix
``Q = B diag(l) B^T``, a positive definite g x g rational matrix (all entries
2 on the diagonal and 1 off it when the lengths are 1).

Everything in this module is exact: points are tuples of ``Fraction``, and the
two geometric predicates (membership in the Voronoi cell of the origin, and
the set of lattice points equidistant from a given Voronoi vertex) are decided
with integer arithmetic after clearing denominators.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

RationalLike = Union[Fraction, int, str]

__all__ = [
    "BananaData",
    "VoronoiVertex",
    "DelaunaySet",
    "build_banana",
    "voronoi_contains",
    "delaunay_set",
    "vertices_equivalent",
    "frac",
    "frac_vector",
]


def frac(x: RationalLike) -> Fraction:
    """Coerce ints, strings like ``"3/4"``, and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass a Fraction, int, or 'p/q' string")
    return Fraction(x)


def frac_vector(xs: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(frac(x) for x in xs)


@dataclass(frozen=True)
class BananaData:
    """Cycle basis and Gram matrix of a two-vertex graph with parallel edges."""

    genus: int
    n: int
    edge_lengths: tuple[Fraction, ...]
    B: tuple[tuple[int, ...], ...]
    Q: tuple[tuple[Fraction, ...], ...]

    def is_unit(self) -> bool:
        return all(l == 1 for l in self.edge_lengths)

    def unit(self) -> "BananaData":
        """The same graph with all edge lengths set to 1."""
        if self.is_unit():
            return self
        return build_banana(self.genus)

    def lift_coords(self, point: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """B^T applied to a g-vector: first entry is the coordinate sum,
        entry j >= 2 is -point[j-2]."""
        pt = frac_vector(point)
        if len(pt) != self.genus:
            raise ValueError(f"expected a vector of length {self.genus}, got {len(pt)}")
        total = sum(pt, Fraction(0))
        return (total,) + tuple(-x for x in pt)


@dataclass(frozen=True)
class VoronoiVertex:
    """A vertex of the Voronoi cell of the origin, tagged by its class.

    The class of a vertex is the number of negative entries of its lift B^T a;
    classes run from 1 to g and class k contains binomial(n, k) vertices.
    """

    coords: tuple[Fraction, ...]
    class_k: int


@dataclass(frozen=True)
class DelaunaySet:
    """Lattice points as close to the anchor vertex as the origin is.

    For a vertex ``a`` of the Voronoi cell these are the c in Z^g with
    ``|a - c|_Q = |a|_Q``; there are binomial(n, class_k) of them, they all
    lie in {-1, 0, 1}^g, and 0 is always one of them.
    """

    points: tuple[tuple[int, ...], ...]
    anchor: VoronoiVertex


def build_banana(genus: int, edge_lengths: Optional[Sequence[RationalLike]] = None) -> BananaData:
    """Construct the cycle basis and Gram matrix for the given genus.

    ``edge_lengths`` defaults to all ones; when given it must list n = genus+1
    positive rationals.
    """
    if genus < 1:
        raise ValueError(f"genus must be >= 1, got {genus}")
    n = genus + 1
    if edge_lengths is None:
        lengths = tuple(Fraction(1) for _ in range(n))
    else:
        lengths = frac_vector(edge_lengths)
        if len(lengths) != n:
            raise ValueError(f"expected {n} edge lengths, got {len(lengths)}")
        if any(l <= 0 for l in lengths):
            raise ValueError("edge lengths must be positive")

    B = tuple(
        tuple(1 if m == 0 else (-1 if m == i + 1 else 0) for m in range(n))
        for i in range(genus)
    )
    # Q[i][j] = sum_m l_m B[i][m] B[j][m] = l_0 + delta_ij * l_{i+1}
    Q = tuple(
        tuple(lengths[0] + (lengths[i + 1] if i == j else 0) for j in range(genus))
        for i in range(genus)
    )
    return BananaData(genus=genus, n=n, edge_lengths=lengths, B=B, Q=Q)


def _int_scaled(data: BananaData, point: Sequence[RationalLike]):
    """Clear denominators: returns (Qd, P, d, m) with Q = Qd/d and point = P/m."""
    pt = frac_vector(point)
    if len(pt) != data.genus:
        raise ValueError(f"expected a point of length {data.genus}, got {len(pt)}")
    d = math.lcm(*(entry.denominator for row in data.Q for entry in row))
    m = math.lcm(*(x.denominator for x in pt)) if pt else 1
    Qd = np.array([[int(entry * d) for entry in row] for row in data.Q], dtype=np.int64)
    P = np.array([int(x * m) for x in pt], dtype=np.int64)
    return Qd, P, d, m, pt


def _candidate_box(genus: int, radius: int) -> np.ndarray:
    """All integer vectors with sup-norm <= radius, excluding the origin."""
    rng = np.arange(-radius, radius + 1, dtype=np.int64)
    grids = np.meshgrid(*([rng] * genus), indexing="ij")
    cand = np.stack([gr.ravel() for gr in grids], axis=1)
    return cand[np.any(cand != 0, axis=1)]


def _search_radius(data: BananaData, pt: Sequence[Fraction]) -> int:
    # If p lies outside the cell, the Q-nearest lattice point c* is a
    # violator, and |c*_i - p_i| <= |c* - p|_2 <= |c* - p|_Q / sqrt(min l)
    # is at most the covering radius over that factor.  For unit lengths the
    # covering radius is max_k sqrt(k(n-k)/n) <= sqrt(n)/2 <= 2 up to n = 16,
    # so a box of sup-norm ceil(2 max|p_i|) + 2 always contains a violator.
    # For general lengths the Babai-box bound mu^2 <= (1/4) sum_i Q_ii gives
    # the wider slack computed below.
    peak = max((abs(x) for x in pt), default=Fraction(0))
    base = int(math.ceil(2 * peak))
    if data.is_unit():
        return base + 2
    lens = data.edge_lengths
    ratio = Fraction(data.genus) * (lens[0] + max(lens)) / min(lens)
    return base + max(2, int(math.ceil(0.5 * math.sqrt(float(ratio)))) + 1)


def voronoi_contains(data: BananaData, point: Sequence[RationalLike]) -> bool:
    """Exact test that ``point`` lies in the Voronoi cell of the origin.

    Membership means |p|_Q <= |p - c|_Q for every lattice vector c, i.e.
    2 p^T Q c <= c^T Q c.  Any violating c can be taken to be the Q-nearest
    lattice point to p, which lies within the sup-norm box computed by
    ``_search_radius``, so scanning that box decides membership exactly.
    """
    Qd, P, d, m, pt = _int_scaled(data, point)
    cand = _candidate_box(data.genus, _search_radius(data, pt))
    _guard_int64(Qd, cand, m)
    lhs = 2 * m * (cand @ (Qd @ P))
    rhs = (m * m) * np.einsum("ij,jk,ik->i", cand, Qd, cand)
    return bool(np.all(lhs <= rhs))


def _guard_int64(Qd: np.ndarray, cand: np.ndarray, m: int) -> None:
    # Keep the vectorized integer path honest: bail out rather than overflow.
    qmax = int(np.abs(Qd).max(initial=0))
    cmax = int(np.abs(cand).max(initial=0))
    g = Qd.shape[0]
    bound = 4 * m * m * qmax * g * g * max(cmax, 1) * max(cmax, 1)
    if bound >= 2**62:
        raise OverflowError("inputs too large for the int64 lattice scan")


def _equality_points(data: BananaData, a: Sequence[Fraction], radius: int) -> list[tuple[int, ...]]:
    Qd, P, d, m, _ = _int_scaled(data, a)
    cand = _candidate_box(data.genus, radius)
    _guard_int64(Qd, cand, m)
    lhs = 2 * (cand @ (Qd @ P))
    rhs = m * np.einsum("ij,jk,ik->i", cand, Qd, cand)
    hits = cand[lhs == rhs]
    points = [tuple(int(v) for v in row) for row in hits]
    points.append(tuple(0 for _ in range(data.genus)))
    points.sort()
    return points


def classify_point(data: BananaData, point: Sequence[RationalLike]) -> int:
    """Number of negative entries of the lift B^T point."""
    return sum(1 for entry in data.lift_coords(frac_vector(point)) if entry < 0)


def delaunay_set(data: BananaData, a: Sequence[RationalLike]) -> DelaunaySet:
    """Lattice points c with 2 a^T Q c = c^T Q c, anchored at the vertex a.

    Raises ValueError if ``a`` is not a vertex of the Voronoi cell (detected
    by the equality count differing from binomial(n, k) for its class k, or
    by ``a`` falling outside the cell).
    """
    pt = frac_vector(a)
    if not voronoi_contains(data, pt):
        raise ValueError(f"{pt} is not in the Voronoi cell of the origin")
    radius = max(_search_radius(data, pt), 2)
    points = _equality_points(data, pt, radius)
    k = classify_point(data, pt)
    expected = math.comb(data.n, k)
    if k == 0 or len(points) != expected:
        raise ValueError(
            f"{pt} is not a Voronoi vertex: {len(points)} equidistant lattice "
            f"points, expected {expected} for class {k}"
        )
    if data.is_unit():
        # Shell check: for unit lengths the whole set must sit in {-1,0,1}^g,
        # and the scan above already covered sup-norm radius >= 2.
        assert all(max(abs(v) for v in c) <= 1 for c in points), points
    anchor = VoronoiVertex(coords=pt, class_k=k)
    return DelaunaySet(points=tuple(points), anchor=anchor)


def vertices_equivalent(
    data: BananaData,
    a: Sequence[RationalLike],
    a2: Sequence[RationalLike],
) -> Optional[tuple[int, ...]]:
    """Lattice translation c0 with a2 = a - c0, or None.

    Two Voronoi vertices represent the same point of the quotient torus
    exactly when they differ by a lattice vector; that vector then belongs to
    the Delaunay set of ``a``, which is checked as a certificate.
    """
    pa = frac_vector(a)
    pb = frac_vector(a2)
    if len(pa) != len(pb):
        raise ValueError("points live in different dimensions")
    diff = tuple(x - y for x, y in zip(pa, pb))
    if any(entry.denominator != 1 for entry in diff):
        return None
    c0 = tuple(int(entry) for entry in diff)
    if c0 not in delaunay_set(data, pa).points:
        return None
    return c0
