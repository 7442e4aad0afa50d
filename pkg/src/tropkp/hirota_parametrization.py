"""Three exact parametrizations of degenerate soliton data and their gluing.

For a node configuration kappa_1 < ... < kappa_n and a vertex class k, the
same point of the Grassmannian Gr(k, n) is produced three ways:

* ``matrix_A``: a reduced row echelon form matrix whose entries are explicit
  rational functions of the kappas and g = n - 1 weights beta_1..beta_g,
* ``matrix_A_tilde``: a Vandermonde block with columns rescaled by weights
  lambda_0 = 1, lambda_1..lambda_g, and
* ``matrix_A_dual``: an (n - k) x n matrix built from a degree-g divisor,
  parametrizing the same solution seen from the other graph vertex.

The tie between them is the coefficient family alpha_J indexed by k-element
column sets J: alpha arises once as exp(c^T R c / 2) times a beta monomial
(the theta route) and once as an explicit product of squared differences
(the Grassmann route); ``alpha_from_beta`` computes both and insists they
agree.  The maximal minors satisfy A_J * K_J = alpha_J * K_{I_k} where K_J is
the Vandermonde minor of columns J, which is what ``verify_minor_identity``
checks, and a permutation expansion of K-products underlies it
(``pluecker_vandermonde_sum``).

All arithmetic is over Fraction; nothing here ever touches floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .graph_jacobian import RationalLike, frac, frac_vector
from .tropical_limit import (
    Divisor,
    KappaConfig,
    PeriodVectors,
    RMatrix,
    abel_map,
    kappa_config,
    limit_R,
    theta_coefficients,
    uvw,
)

__all__ = [
    "GrassmannPoint",
    "HirotaPoint",
    "grassmann_point",
    "exact_det",
    "hypersimplex_labels",
    "vandermonde_minor",
    "kj_squared_from_R",
    "label_lattice_point",
    "alpha_from_beta",
    "matrix_A",
    "verify_minor_identity",
    "pluecker_vandermonde_sum",
    "pluecker_vandermonde_identity_holds",
    "matrix_A_tilde",
    "beta_lambda_convert",
    "lambda_from_divisor",
    "matrix_A_dual",
    "check_dn_interlacing",
    "hirota_point",
    "invert_psi",
    "kprime",
]

Label = tuple[int, ...]


def exact_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [list(row) for row in rows]
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for col in range(size):
        pivot_row = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            det = -det
        pivot = m[col][col]
        det *= pivot
        for r in range(col + 1, size):
            if m[r][col]:
                factor = m[r][col] / pivot
                for c in range(col, size):
                    m[r][c] -= factor * m[col][c]
    return det


def hypersimplex_labels(n: int, k: int) -> tuple[Label, ...]:
    """All k-element subsets of {1..n} in lexicographic order."""
    return tuple(itertools.combinations(range(1, n + 1), k))


@dataclass
class GrassmannPoint:
    """A k x n rational matrix with its full family of maximal minors.

    ``pluecker[J]`` is the raw determinant of the columns J (1-based, sorted);
    ``normalized_pluecker`` rescales so the lexicographically first nonzero
    minor equals 1, which is the right gauge for comparing parametrizations.
    """

    k: int
    n: int
    matrix: tuple[tuple[Fraction, ...], ...]
    pluecker: dict[Label, Fraction]

    def normalized_pluecker(self) -> dict[Label, Fraction]:
        for label in hypersimplex_labels(self.n, self.k):
            if self.pluecker[label] != 0:
                scale = self.pluecker[label]
                return {J: v / scale for J, v in self.pluecker.items()}
        raise ValueError("all maximal minors vanish; not a Grassmannian point")


def grassmann_point(matrix: Sequence[Sequence[RationalLike]]) -> GrassmannPoint:
    rows = tuple(frac_vector(row) for row in matrix)
    k = len(rows)
    if k == 0:
        raise ValueError("empty matrix")
    n = len(rows[0])
    if any(len(row) != n for row in rows) or k > n:
        raise ValueError(f"need a k x n matrix with k <= n, got {k} x {n}")
    pluecker = {}
    for J in hypersimplex_labels(n, k):
        cols = [[rows[r][j - 1] for j in J] for r in range(k)]
        pluecker[J] = exact_det(cols)
    return GrassmannPoint(k=k, n=n, matrix=rows, pluecker=pluecker)


def vandermonde_minor(kc: KappaConfig, J: Sequence[int]) -> Fraction:
    """K_J = prod_{i < j in J} (kappa_j - kappa_i), indices 1-based sorted."""
    J = tuple(J)
    val = Fraction(1)
    for a, b in itertools.combinations(J, 2):
        val *= kc.diff(b, a)
    return val


def kprime(kc: KappaConfig, i: int) -> Fraction:
    """Derivative of prod_j (z - kappa_j) at kappa_i."""
    val = Fraction(1)
    for j in range(1, kc.n + 1):
        if j != i:
            val *= kc.diff(i, j)
    return val


def kj_squared_from_R(R: RMatrix, J: Sequence[int]) -> Fraction:
    """K_J^2 recovered from the limit period matrix alone:
    exp(-(|J|-1)/2 * sum_l R_{j_l-1,j_l-1} + sum_{l<m} R_{j_l-1,j_m-1}),
    with the index-0 row and column of R read as zero."""
    J = tuple(J)
    size = len(J)
    val = Fraction(1)
    for j in J:
        val *= R.exp_half_diag(j - 1) ** -(size - 1)
    for a, b in itertools.combinations(J, 2):
        val *= R.exp_entry(a - 1, b - 1)
    return val


def label_lattice_point(n: int, k: int, label: Sequence[int]) -> tuple[int, ...]:
    """The lattice point whose Delaunay label at the canonical class-k vertex
    is the given k-subset: c_m = [m+1 <= k] - [m+1 in label]."""
    lab = frozenset(label)
    if len(lab) != k or not all(1 <= j <= n for j in lab):
        raise ValueError(f"label must be a k-subset of 1..{n}, got {tuple(label)}")
    return tuple(
        (1 if m + 1 <= k else 0) - (1 if m + 1 in lab else 0) for m in range(1, n)
    )


def _beta_at(beta: Sequence[Fraction], m: int) -> Fraction:
    """beta_m with the convention beta_0 = 1."""
    return Fraction(1) if m == 0 else beta[m - 1]


def _beta_monomial(beta: Sequence[Fraction], c: Sequence[int]) -> Fraction:
    val = Fraction(1)
    for b, e in zip(beta, c):
        if e:
            val *= b**e
    return val


def _alpha_product_form(
    kc: KappaConfig, k: int, beta: Sequence[Fraction], label: Label
) -> Fraction:
    """alpha_J as a product of squared differences over the exchange sets."""
    base = set(range(1, k + 1))
    out = sorted(base - set(label))
    into = sorted(set(label) - base)
    num = Fraction(1)
    for poss in (out, into):
        for a, b in itertools.combinations(poss, 2):
            num *= kc.diff(b, a) ** 2
    den = Fraction(1)
    for i in out:
        for j in into:
            den *= kc.diff(j, i) ** 2
    c = label_lattice_point(kc.n, k, label)
    return num / den * _beta_monomial(beta, c)


def alpha_from_beta(
    kc: KappaConfig, k: int, beta: Sequence[RationalLike]
) -> dict[Label, Fraction]:
    """The coefficient family alpha_J for all k-subsets J.

    Computed as exp(c_J^T R c_J / 2) times the beta monomial of c_J, and
    cross-checked entry by entry against the closed product formula; a
    mismatch would mean the two parametrizations disagree, so it is a hard
    error rather than a warning.
    """
    if not 1 <= k <= kc.genus:
        raise ValueError(f"class k must be between 1 and {kc.genus}, got {k}")
    bt = frac_vector(beta)
    if len(bt) != kc.genus:
        raise ValueError(f"expected {kc.genus} beta weights, got {len(bt)}")
    if any(b == 0 for b in bt):
        raise ValueError("beta weights must be nonzero")
    R = limit_R(kc)
    labels = hypersimplex_labels(kc.n, k)
    points = {J: label_lattice_point(kc.n, k, J) for J in labels}
    a_coeffs = theta_coefficients(R, points.values())
    alphas: dict[Label, Fraction] = {}
    for J in labels:
        c = points[J]
        val = a_coeffs[c] * _beta_monomial(bt, c)
        check = _alpha_product_form(kc, k, bt, J)
        if val != check:
            raise AssertionError(
                f"alpha_{J} disagrees between the theta route ({val}) and the "
                f"product route ({check})"
            )
        alphas[J] = val
    return alphas


def matrix_A(kc: KappaConfig, k: int, beta: Sequence[RationalLike]) -> GrassmannPoint:
    """Reduced row echelon form of the class-k soliton matrix.

    The left k x k block is the identity; for a column j > k the entry in row
    i is beta_{i-1} / (beta_{j-1} (kappa_j - kappa_i)^2) times the product
    over l in {1..k} - {i} of (kappa_i - kappa_l)/(kappa_j - kappa_l).
    """
    if not 1 <= k <= kc.genus:
        raise ValueError(f"class k must be between 1 and {kc.genus}, got {k}")
    bt = frac_vector(beta)
    if len(bt) != kc.genus:
        raise ValueError(f"expected {kc.genus} beta weights, got {len(bt)}")
    rows = []
    for i in range(1, k + 1):
        row = []
        for j in range(1, kc.n + 1):
            if j <= k:
                row.append(Fraction(1) if i == j else Fraction(0))
                continue
            val = _beta_at(bt, i - 1) / (_beta_at(bt, j - 1) * kc.diff(j, i) ** 2)
            for l in range(1, k + 1):
                if l != i:
                    val *= kc.diff(i, l) / kc.diff(j, l)
            row.append(val)
        rows.append(row)
    return grassmann_point(rows)


def verify_minor_identity(
    gp: GrassmannPoint, alphas: dict[Label, Fraction], kc: KappaConfig
) -> bool:
    """A_J * K_J = alpha_J * K_{I_k} for every k-subset J."""
    base = tuple(range(1, gp.k + 1))
    k_base = vandermonde_minor(kc, base)
    for J in hypersimplex_labels(gp.n, gp.k):
        if gp.pluecker[J] * vandermonde_minor(kc, J) != alphas[J] * k_base:
            return False
    return True


def pluecker_vandermonde_sum(
    kc: KappaConfig, i_idx: Sequence[int], j_idx: Sequence[int]
) -> Fraction:
    """Alternating permutation sum of Vandermonde-type products:
    sum over permutations pi of sign(pi) * prod_r prod_{l in I - {i_r}}
    (kappa_{j_{pi(r)}} - kappa_{i_l})."""
    i_idx = tuple(i_idx)
    j_idx = tuple(j_idx)
    s = len(i_idx)
    if len(j_idx) != s:
        raise ValueError("index lists must have equal length")
    total = Fraction(0)
    for perm in itertools.permutations(range(s)):
        sign = _perm_sign(perm)
        term = Fraction(1)
        for r in range(s):
            jv = j_idx[perm[r]]
            for l in range(s):
                if l != r:
                    term *= kc.diff(jv, i_idx[l])
        total += sign * term
    return total


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for a, b in itertools.combinations(range(len(perm)), 2):
        if perm[a] > perm[b]:
            sign = -sign
    return sign


def pluecker_vandermonde_identity_holds(
    kc: KappaConfig, i_idx: Sequence[int], j_idx: Sequence[int]
) -> bool:
    """The permutation sum collapses to
    (-1)^(s(s-1)/2) * K_{I_s} * K_{J_s}.

    The sum is alternating in the order of each index list, so both are
    canonicalized to increasing order first; the identity is a statement
    about the underlying sets."""
    i_sorted = sorted(i_idx)
    j_sorted = sorted(j_idx)
    s = len(i_sorted)
    lhs = pluecker_vandermonde_sum(kc, i_sorted, j_sorted)
    sign = -1 if (s * (s - 1) // 2) % 2 else 1
    rhs = sign * vandermonde_minor(kc, i_sorted) * vandermonde_minor(kc, j_sorted)
    return lhs == rhs


def matrix_A_tilde(
    kc: KappaConfig, k: int, lambdas: Sequence[RationalLike]
) -> GrassmannPoint:
    """Vandermonde rows kappa^0..kappa^(k-1) with column j scaled by
    lambda_{j-1} (lambda_0 = 1); its minors are K_J times a lambda monomial."""
    lam = frac_vector(lambdas)
    if len(lam) != kc.genus:
        raise ValueError(f"expected {kc.genus} lambda weights, got {len(lam)}")
    rows = []
    for power in range(k):
        rows.append(
            [kc.kappa(j) ** power * _beta_at(lam, j - 1) for j in range(1, kc.n + 1)]
        )
    return grassmann_point(rows)


def _beta_lambda_factor(kc: KappaConfig, k: int, j: int) -> Fraction:
    """exp(k/2 R_jj - sum_{l=1}^{k-1} R_jl); converts between the two weight
    families in either direction."""
    R = limit_R(kc)
    val = R.exp_half_diag(j) ** k
    for l in range(1, k):
        if l == j:
            val /= R.exp_half_diag(j) ** 2
        else:
            val /= R.exp_entry(j, l)
    return val


def beta_lambda_convert(
    kc: KappaConfig,
    k: int,
    beta: Optional[Sequence[RationalLike]] = None,
    lambdas: Optional[Sequence[RationalLike]] = None,
) -> tuple[Fraction, ...]:
    """Convert beta weights to lambda weights or back (pass exactly one).

    The two are reciprocal up to the exact rational factor
    exp(k/2 R_jj - sum_{l<k} R_jl), so the conversion is an involution.
    """
    if (beta is None) == (lambdas is None):
        raise ValueError("pass exactly one of beta, lambdas")
    values = frac_vector(beta if beta is not None else lambdas)
    if len(values) != kc.genus:
        raise ValueError(f"expected {kc.genus} weights, got {len(values)}")
    if any(v == 0 for v in values):
        raise ValueError("weights must be nonzero")
    out = []
    for j in range(1, kc.genus + 1):
        out.append(_beta_lambda_factor(kc, k, j) / values[j - 1])
    return tuple(out)


def lambda_from_divisor(kc: KappaConfig, d: Divisor) -> tuple[Fraction, ...]:
    """Column weights determined by a degree-g divisor:
    lambda_j is the ratio of P * K' * Q evaluated at kappa_1 and kappa_{j+1}."""
    if len(d.points) != kc.genus:
        raise ValueError(f"divisor must have {kc.genus} points, got {len(d.points)}")
    if set(d.points) & set(kc.kappas):
        raise ValueError("divisor points must avoid the node parameters")

    def weight(i: int) -> Fraction:
        z = kc.kappa(i)
        return d.P_at(z) * kprime(kc, i) * d.Q_prod_at(z)

    base = weight(1)
    return tuple(base / weight(j + 1) for j in range(1, kc.genus + 1))


def matrix_A_dual(kc: KappaConfig, d: Divisor) -> GrassmannPoint:
    """The (n - k) x n matrix of the same solution read at the other graph
    vertex: row l evaluates P * Q_l / K' at each node, where Q_1 = 1 and
    Q_l for l >= 2 is the reciprocal of (z - p) at the l-th far-side divisor
    point."""
    k = d.split_k
    if len(d.points) != kc.genus:
        raise ValueError(f"divisor must have {kc.genus} points, got {len(d.points)}")
    if not 1 <= k <= kc.genus:
        raise ValueError(f"split_k must be between 1 and {kc.genus}, got {k}")
    if set(d.points) & set(kc.kappas):
        raise ValueError("divisor points must avoid the node parameters")
    rows = []
    for l in range(1, kc.n - k + 1):
        row = []
        for i in range(1, kc.n + 1):
            z = kc.kappa(i)
            val = d.P_at(z) / kprime(kc, i)
            if l >= 2:
                val /= z - d.points[k + l - 2]
            row.append(val)
        rows.append(row)
    return grassmann_point(rows)


def check_dn_interlacing(kc: KappaConfig, d: Divisor) -> bool:
    """One divisor point in each open gap between consecutive sorted nodes.

    This is the positivity condition: it forces every lambda_j (equivalently
    every beta_j) to be positive, hence a totally nonnegative Grassmannian
    point and a regular soliton.
    """
    if not kc.sorted_flag:
        raise ValueError("interlacing needs sorted node parameters")
    if len(d.points) != kc.genus:
        return False
    if set(d.points) & set(kc.kappas):
        return False
    for i in range(1, kc.n):
        lo, hi = kc.kappa(i), kc.kappa(i + 1)
        inside = sum(1 for p in d.points if lo < p < hi)
        if inside != 1:
            return False
    return True


@dataclass
class HirotaPoint:
    """Coefficient family, period vectors, and bookkeeping for one soliton.

    ``alphas`` is keyed by subsets of {1..n}: k-subsets for vertex_choice
    "v1", their complements for "v2" (with equal values pairwise).  class_k
    always records the vertex class k of the underlying lattice geometry.
    """

    alphas: dict[Label, Fraction]
    uvw: PeriodVectors
    class_k: int
    vertex_choice: str


def hirota_point(
    kc: KappaConfig, k: int, beta: Sequence[RationalLike], vertex_choice: str = "v1"
) -> HirotaPoint:
    """Assemble the full coefficient data for one vertex choice.

    "v1" pairs the k-subset coefficients with the "X+" period vectors; "v2"
    uses complemented labels with equal coefficients and the "X-" vectors.
    """
    if vertex_choice not in ("v1", "v2"):
        raise ValueError(f"vertex_choice must be 'v1' or 'v2', got {vertex_choice!r}")
    alphas = alpha_from_beta(kc, k, beta)
    if vertex_choice == "v1":
        return HirotaPoint(
            alphas=alphas, uvw=uvw(kc, "X+"), class_k=k, vertex_choice="v1"
        )
    full = frozenset(range(1, kc.n + 1))
    flipped = {
        tuple(sorted(full - frozenset(J))): val for J, val in alphas.items()
    }
    return HirotaPoint(
        alphas=flipped, uvw=uvw(kc, "X-"), class_k=k, vertex_choice="v2"
    )


def invert_psi(hp: HirotaPoint) -> tuple[KappaConfig, tuple[Fraction, ...]]:
    """Recover the node parameters and beta weights from a coefficient family.

    Defined on the image of the parametrization: each period coordinate must
    be nonzero (otherwise the point is degenerate and ValueError is raised),
    and the recovered configuration is cross-checked against all three period
    vectors before the weights are extracted from exchange coefficients.
    """
    U, V, W = hp.uvw.U, hp.uvw.V, hp.uvw.W
    g = len(U)
    n = g + 1
    k = hp.class_k
    if any(u == 0 for u in U):
        raise ValueError("degenerate parameters: a period coordinate vanishes")
    # On "X+", kappa_1 = (V_j + U_j^2)/(2 U_j) for every j; on "X-" the sign
    # of U and V flips, which swaps the two quadratic roots.
    flip = 1 if hp.uvw.component_choice == "X+" else -1
    if flip == 1:
        base_candidates = {(V[j] + U[j] ** 2) / (2 * U[j]) for j in range(g)}
    else:
        base_candidates = {(V[j] - U[j] ** 2) / (2 * U[j]) for j in range(g)}
    if len(base_candidates) != 1:
        raise ValueError("period vectors are inconsistent: no common base node")
    kappa1 = base_candidates.pop()
    kappas = [kappa1]
    for j in range(g):
        if flip == 1:
            kappas.append((V[j] - U[j] ** 2) / (2 * U[j]))
        else:
            kappas.append((V[j] + U[j] ** 2) / (2 * U[j]))
    kc = kappa_config(kappas)
    expected = uvw(kc, hp.uvw.component_choice)
    if (expected.U, expected.V, expected.W) != (U, V, W):
        raise ValueError("period vectors do not come from a node configuration")

    if hp.vertex_choice == "v1":
        alphas = dict(hp.alphas)
    else:
        full = frozenset(range(1, n + 1))
        alphas = {
            tuple(sorted(full - frozenset(J))): val for J, val in hp.alphas.items()
        }
    base_label = tuple(range(1, k + 1))
    if base_label not in alphas or alphas[base_label] == 0:
        raise ValueError("coefficient at the base label is missing or zero")
    scale = alphas[base_label]
    alphas = {J: v / scale for J, v in alphas.items()}

    beta = [Fraction(0)] * (g + 1)  # 1-based storage
    for j in range(k, g + 1):
        label = tuple(sorted(set(base_label) - {1} | {j + 1}))
        beta[j] = 1 / (kc.diff(j + 1, 1) ** 2 * alphas[label])
    for i in range(1, k):
        label = tuple(sorted(set(base_label) - {i + 1} | {n}))
        beta[i] = kc.diff(n, i + 1) ** 2 * beta[g] * alphas[label]
    return kc, tuple(beta[1:])
