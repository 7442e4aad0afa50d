"""Tests for doubled-hypersimplex points, quartic face equations, and their
agreement with the bilinear residual."""

import json
import math
from fractions import Fraction as F

import pytest

from tropkp.hirota_parametrization import HirotaPoint, alpha_from_beta, hirota_point
from tropkp.hirota_variety_eqs import (
    face_direction_classes,
    face_values_match_residual,
    instantiate_and_check,
    quartic_for_point,
    relations_to_json,
    relations_to_text,
    squared_set,
)
from tropkp.tau_kp import tau_from_hirota_point
from tropkp.tropical_limit import PeriodVectors, kappa_config

KC4 = kappa_config([0, 1, 2, 3])


def pair_count(k, dprime):
    return math.comb(2 * k - 2 * dprime, k - dprime) // 2


class TestSquaredSet:
    def test_small_census(self):
        pts = squared_set(2, 4)
        assert len(pts) == 13
        by_overlap = {}
        for sp in pts:
            by_overlap.setdefault(sp.two_count, []).append(sp)
        assert len(by_overlap[1]) == 12
        assert len(by_overlap[0]) == 1
        big = by_overlap[0][0]
        assert big.d == (1, 1, 1, 1)
        assert set(big.pairs) == {
            ((1, 2), (3, 4)),
            ((1, 3), (2, 4)),
            ((1, 4), (2, 3)),
        }

    @pytest.mark.parametrize("k,n", [(1, 3), (2, 4), (2, 5), (3, 6)])
    def test_count_formulas(self, k, n):
        """Points with overlap d' number C(n, d') C(n - d', 2k - 2d'), each
        with C(2k - 2d', k - d')/2 realizing pairs."""
        pts = squared_set(k, n)
        by_overlap = {}
        for sp in pts:
            by_overlap.setdefault(sp.two_count, 0)
            by_overlap[sp.two_count] += 1
            assert len(sp.pairs) == pair_count(k, sp.two_count), f"d={sp.d}"
            assert sum(sp.d) == 2 * k
        for dprime, count in by_overlap.items():
            expected = math.comb(n, dprime) * math.comb(n - dprime, 2 * k - 2 * dprime)
            assert count == expected, f"overlap {dprime}"
        total_pairs = sum(len(sp.pairs) for sp in pts)
        assert total_pairs == math.comb(math.comb(n, k), 2)

    def test_sorted_by_coordinate_vector(self):
        pts = squared_set(2, 4)
        assert [sp.d for sp in pts] == sorted(sp.d for sp in pts)

    def test_rejects_bad_rank(self):
        with pytest.raises(ValueError):
            squared_set(0, 4)
        with pytest.raises(ValueError):
            squared_set(4, 4)


class TestFaceDirectionClasses:
    def test_census_24(self):
        """Six edge directions plus one three-dimensional relation."""
        rels = face_direction_classes(2, 4)
        assert len(rels) == 7
        dims = [rel.dimension for rel in rels]
        assert dims == [1] * 6 + [3]
        big = rels[-1]
        assert big.direction == (1, 2, 3, 4)
        assert big.fixed_ones == ()
        assert big.terms == (
            ((1, 2), (3, 4), (1, 1, -1, -1)),
            ((1, 3), (2, 4), (1, -1, 1, -1)),
            ((1, 4), (2, 3), (1, -1, -1, 1)),
        )

    @pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (3, 6)])
    def test_direction_count(self, k, n):
        rels = face_direction_classes(k, n)
        expected = sum(
            math.comb(n, 2 * ell) for ell in range(1, min(k, n - k) + 1)
        )
        assert len(rels) == expected
        assert len({rel.direction for rel in rels}) == len(rels)

    def test_representative_freezes_first_outside(self):
        rels = face_direction_classes(2, 5)
        edge = next(rel for rel in rels if rel.direction == (2, 4))
        assert edge.fixed_ones == (1,)

    def test_terms_halve_the_direction(self):
        for rel in face_direction_classes(3, 6):
            half = len(rel.direction) // 2
            assert len(rel.terms) == math.comb(len(rel.direction) - 1, half - 1)
            for lab1, lab2, delta in rel.terms:
                assert sum(delta) == 0
                assert sum(1 for x in delta if x) == len(rel.direction)

    def test_squared_point_roundtrip(self):
        for sp in squared_set(2, 4):
            rel = quartic_for_point(sp)
            assert rel.squared_point(4) == sp.d


class TestInstantiation:
    def test_vanishes_on_image_families(self):
        hp = hirota_point(KC4, 2, (2, 1, F(1, 3)), "v1")
        vals = instantiate_and_check(face_direction_classes(2, 4), hp)
        assert len(vals) == 7
        assert all(v == 0 for v in vals.values())

    def test_vanishes_at_second_vertex(self):
        hp = hirota_point(KC4, 2, (2, 1, F(1, 3)), "v2")
        vals = instantiate_and_check(face_direction_classes(2, 4), hp)
        assert all(v == 0 for v in vals.values())

    def test_missing_labels_raise(self):
        hp = hirota_point(KC4, 2, (1, 1, 1), "v1")
        with pytest.raises(KeyError):
            instantiate_and_check(face_direction_classes(3, 4), hp)

    def test_same_direction_faces_are_proportional(self):
        """All faces sharing a direction carry one equation up to a
        coefficient rescaling, so a single representative suffices."""
        kc = kappa_config([0, 1, 2, 3, 4, 5])
        alphas = alpha_from_beta(kc, 3, (1, 2, 1, 3, 1))
        synthetic = PeriodVectors(
            U=(F(1), F(2), F(3), F(4), F(5)),
            V=(F(1), F(1), F(2), F(2), F(3)),
            W=(F(5), F(4), F(3), F(2), F(1)),
            component_choice="X+",
        )
        hp = HirotaPoint(alphas=alphas, uvw=synthetic, class_k=3, vertex_choice="v1")
        pts = {sp.d: sp for sp in squared_set(3, 6)}
        d5 = (1, 1, 1, 1, 2, 0)
        d6 = (1, 1, 1, 1, 0, 2)
        q5 = quartic_for_point(pts[d5])
        q6 = quartic_for_point(pts[d6])
        vals = instantiate_and_check([q5, q6], hp)
        assert vals[d5] != 0 and vals[d6] != 0
        lab1_5, lab2_5, _ = q5.terms[0]
        lab1_6, lab2_6, _ = q6.terms[0]
        lhs = vals[d5] * hp.alphas[lab1_6] * hp.alphas[lab2_6]
        rhs = vals[d6] * hp.alphas[lab1_5] * hp.alphas[lab2_5]
        assert lhs == rhs


class TestFaceResidualAgreement:
    @pytest.mark.parametrize("choice", ["v1", "v2"])
    def test_match_on_image_families(self, choice):
        hp = hirota_point(KC4, 2, (2, 1, F(1, 3)), choice)
        tau = tau_from_hirota_point(hp)
        assert face_values_match_residual(hp, tau)

    def test_match_survives_perturbation(self):
        """The two groupings agree term by term, not only in the solution
        locus, so a perturbed family still matches."""
        hp = hirota_point(KC4, 2, (1, 1, 1), "v1")
        alphas = dict(hp.alphas)
        alphas[(1, 3)] *= F(7, 5)
        hp_bad = HirotaPoint(
            alphas=alphas, uvw=hp.uvw, class_k=2, vertex_choice="v1"
        )
        tau_bad = tau_from_hirota_point(hp_bad)
        assert face_values_match_residual(hp_bad, tau_bad)


class TestEmitters:
    def test_json_payload(self):
        rels = face_direction_classes(2, 4)
        payload = json.loads(relations_to_json(2, 4, rels))
        assert payload["k"] == 2
        assert payload["n"] == 4
        assert payload["relation_count"] == 7
        big = payload["relations"][-1]
        assert big["direction"] == [1, 2, 3, 4]
        assert big["terms"][0]["pair"] == [[1, 2], [3, 4]]
        assert big["terms"][0]["delta"] == [1, 1, -1, -1]

    def test_text_output(self):
        text = relations_to_text(2, 4, face_direction_classes(2, 4))
        assert text.splitlines()[0] == "quartic face equations for the (2,4) family"
        assert (
            "dim 3, direction {1,2,3,4}, fixed {}: "
            "a{1,2}a{3,4}*P[+1+2-3-4] + a{1,3}a{2,4}*P[+1-2+3-4] "
            "+ a{1,4}a{2,3}*P[+1-2-3+4] = 0" in text
        )
        assert "dim 1, direction {1,2}, fixed {3}: a{1,3}a{2,3}*P[+1-2] = 0" in text
