"""Quartic face equations attached to the doubled hypersimplex.

Sums c = e_{J1} + e_{J2} of two distinct 0/1 vertex indicators of the
(k, n) hypersimplex stratify by their two_count (the size of J1 and J2's
overlap); ``squared_set`` enumerates them with every unordered pair that
realizes them.  Each such point spans an odd-dimensional face of the cube
[0, 2]^n: the coordinates equal to 1 form the direction set I1 (size
2 l = 2k - 2 two_count), the coordinates equal to 2 are frozen.  All faces
with the same direction carry the same quartic equation up to rescaling the
coefficients, so one representative per direction suffices;
``face_direction_classes`` picks the lexicographically first frozen set.

The quartic itself sums, over unordered splittings of I1 into halves S and
I1 - S, the products alpha_{F u S} alpha_{F u (I1 - S)} times
P(delta . scr_u, delta . scr_v, delta . scr_w), where delta = e_S - e_{I1-S},
P(x, y, t) = x^4 - 4 x t + 3 y^2, and scr_u/v/w are any n-vectors whose
consecutive differences against the first coordinate reproduce the period
vectors (delta sums to zero, so the gauge never matters).
``instantiate_and_check`` evaluates them exactly on a coefficient family.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .hirota_parametrization import HirotaPoint, hypersimplex_labels, label_lattice_point
from .tau_kp import TauFunction, hirota_residual

__all__ = [
    "SquaredPoint",
    "QuarticRelation",
    "squared_set",
    "face_direction_classes",
    "quartic_for_point",
    "instantiate_and_check",
    "face_values_match_residual",
    "relations_to_json",
    "relations_to_text",
]

Label = tuple[int, ...]


@dataclass(frozen=True)
class SquaredPoint:
    """A sum of two distinct hypersimplex vertices with all realizing pairs."""

    d: tuple[int, ...]
    pairs: tuple[tuple[Label, Label], ...]
    two_count: int


@dataclass(frozen=True)
class QuarticRelation:
    """One face equation: frozen coordinates, direction set, and the term
    list of unordered label pairs with their sign vectors."""

    direction: tuple[int, ...]
    fixed_ones: tuple[int, ...]
    terms: tuple[tuple[Label, Label, tuple[int, ...]], ...]

    @property
    def dimension(self) -> int:
        return len(self.direction) - 1

    def squared_point(self, n: int) -> tuple[int, ...]:
        """The doubled-hypersimplex point this face sits over."""
        return tuple(
            2 * (1 if i in set(self.fixed_ones) else 0)
            + (1 if i in set(self.direction) else 0)
            for i in range(1, n + 1)
        )


def squared_set(k: int, n: int) -> tuple[SquaredPoint, ...]:
    """All sums of two distinct vertices of the (k, n) hypersimplex, sorted
    by coordinate vector, each with its unordered realizing pairs.

    For overlap size d' there are binomial(n, d') * binomial(n - d', 2k - 2d')
    such points, each realized by binomial(2k - 2d', k - d')/2 pairs.
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    found: dict[tuple[int, ...], list[tuple[Label, Label]]] = {}
    labels = hypersimplex_labels(n, k)
    for J1, J2 in itertools.combinations(labels, 2):
        ind = tuple(
            (1 if i in set(J1) else 0) + (1 if i in set(J2) else 0)
            for i in range(1, n + 1)
        )
        found.setdefault(ind, []).append((J1, J2))
    out = []
    for d in sorted(found):
        pairs = tuple(sorted(found[d]))
        out.append(SquaredPoint(d=d, pairs=pairs, two_count=sum(1 for x in d if x == 2)))
    return tuple(out)


def _relation_for(
    n: int, direction: Sequence[int], fixed_ones: Sequence[int]
) -> QuarticRelation:
    direction = tuple(sorted(direction))
    fixed_ones = tuple(sorted(fixed_ones))
    half = len(direction) // 2
    lead = direction[0]
    rest = direction[1:]
    terms = []
    for extra in itertools.combinations(rest, half - 1):
        S = (lead,) + extra
        other = tuple(x for x in direction if x not in set(S))
        lab1 = tuple(sorted(fixed_ones + S))
        lab2 = tuple(sorted(fixed_ones + other))
        terms.append((lab1, lab2, _delta_vector(n, S, other)))
    return QuarticRelation(direction=direction, fixed_ones=fixed_ones, terms=tuple(terms))


def _delta_vector(n: int, S: Sequence[int], other: Sequence[int]) -> tuple[int, ...]:
    out = [0] * n
    for i in S:
        out[i - 1] = 1
    for i in other:
        out[i - 1] = -1
    return tuple(out)


def face_direction_classes(k: int, n: int) -> tuple[QuarticRelation, ...]:
    """One representative quartic per direction set.

    Directions are the even-size subsets I1 of {1..n} with
    2 <= |I1| <= 2 min(k, n - k); the representative freezes the
    lexicographically first k - |I1|/2 coordinates outside I1.  Relations are
    returned ordered by (face dimension, direction).
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    out = []
    for ell in range(1, min(k, n - k) + 1):
        for direction in itertools.combinations(range(1, n + 1), 2 * ell):
            outside = [i for i in range(1, n + 1) if i not in set(direction)]
            fixed = tuple(outside[: k - ell])
            out.append(_relation_for(n, direction, fixed))
    out.sort(key=lambda rel: (rel.dimension, rel.direction))
    return tuple(out)


def quartic_for_point(sp: SquaredPoint) -> QuarticRelation:
    """The face equation over one specific doubled point (its own frozen
    coordinates, not the class representative's)."""
    direction = tuple(i + 1 for i, x in enumerate(sp.d) if x == 1)
    fixed = tuple(i + 1 for i, x in enumerate(sp.d) if x == 2)
    return _relation_for(len(sp.d), direction, fixed)


def _lift_triple(hp: HirotaPoint, n: int) -> tuple[list, list, list]:
    """n-vectors whose banana-lift differences give back (U, V, W): gauge
    fixed by a zero first coordinate."""
    scr_u = [Fraction(0)] + [-u for u in hp.uvw.U]
    scr_v = [Fraction(0)] + [-v for v in hp.uvw.V]
    scr_w = [Fraction(0)] + [-w for w in hp.uvw.W]
    if len(scr_u) != n:
        raise ValueError("period vectors do not match the label size")
    return scr_u, scr_v, scr_w


def instantiate_and_check(
    relations: Iterable[QuarticRelation], hp: HirotaPoint
) -> dict[tuple[int, ...], Fraction]:
    """Exact value of each relation on a coefficient family, keyed by the
    relation's doubled point.

    The relations must be built for the same (k, n) as the family's labels
    (for a second-vertex family that means k -> n - k)."""
    n = len(hp.uvw.U) + 1
    scr_u, scr_v, scr_w = _lift_triple(hp, n)
    out: dict[tuple[int, ...], Fraction] = {}
    for rel in relations:
        total = Fraction(0)
        for lab1, lab2, delta in rel.terms:
            if lab1 not in hp.alphas or lab2 not in hp.alphas:
                raise KeyError(
                    f"relation labels {lab1}, {lab2} missing from the family"
                )
            dx = sum((d * u for d, u in zip(delta, scr_u)), Fraction(0))
            dy = sum((d * v for d, v in zip(delta, scr_v)), Fraction(0))
            dt = sum((d * w for d, w in zip(delta, scr_w)), Fraction(0))
            total += hp.alphas[lab1] * hp.alphas[lab2] * (
                dx**4 - 4 * dx * dt + 3 * dy**2
            )
        key = rel.squared_point(n)
        out[key] = total
    return out


def face_values_match_residual(hp: HirotaPoint, tau: TauFunction) -> bool:
    """Exact agreement of the two residual routes.

    The bilinear residual of the tau sum groups term pairs by lattice-point
    sums; the face equations group the same pairs by doubled column labels.
    The label bijection of the canonical vertex translates one key set onto
    the other, and on matching keys the values must agree exactly (the
    quartic arguments are the same wave differences in a different gauge).
    """
    n = len(hp.uvw.U) + 1
    k_eff = len(next(iter(hp.alphas)))
    points = squared_set(k_eff, n)
    values = instantiate_and_check((quartic_for_point(sp) for sp in points), hp)
    residual = hirota_residual(tau)
    translation = {}
    for sp in points:
        lab1, lab2 = sp.pairs[0]
        c1 = label_lattice_point(n, k_eff, lab1)
        c2 = label_lattice_point(n, k_eff, lab2)
        key = tuple(a + b for a, b in zip(c1, c2))
        if hp.vertex_choice == "v2":
            key = tuple(-x for x in key)
        translation[sp.d] = key
    if set(translation.values()) != set(residual):
        return False
    return all(values[d] == residual[c] for d, c in translation.items())


def relations_to_json(k: int, n: int, relations: Iterable[QuarticRelation]) -> str:
    payload = {
        "k": k,
        "n": n,
        "relations": [
            {
                "dimension": rel.dimension,
                "direction": list(rel.direction),
                "fixed_ones": list(rel.fixed_ones),
                "terms": [
                    {
                        "pair": [list(lab1), list(lab2)],
                        "delta": list(delta),
                    }
                    for lab1, lab2, delta in rel.terms
                ],
            }
            for rel in relations
        ],
    }
    payload["relation_count"] = len(payload["relations"])
    return json.dumps(payload, sort_keys=True, indent=2)


def _fmt_set(xs: Sequence[int]) -> str:
    return "{" + ",".join(str(x) for x in xs) + "}"


def _fmt_delta(delta: Sequence[int]) -> str:
    bits = []
    for i, v in enumerate(delta, start=1):
        if v == 1:
            bits.append(f"+{i}")
        elif v == -1:
            bits.append(f"-{i}")
    return "".join(bits)


def relations_to_text(k: int, n: int, relations: Iterable[QuarticRelation]) -> str:
    lines = [f"quartic face equations for the ({k},{n}) family"]
    for rel in relations:
        terms = " + ".join(
            f"a{_fmt_set(lab1)}a{_fmt_set(lab2)}*P[{_fmt_delta(delta)}]"
            for lab1, lab2, delta in rel.terms
        )
        lines.append(
            f"dim {rel.dimension}, direction {_fmt_set(rel.direction)}, "
            f"fixed {_fmt_set(rel.fixed_ones)}: {terms} = 0"
        )
    return "\n".join(lines) + "\n"
