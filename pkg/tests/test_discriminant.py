"""Discriminant factorization, reduced forms, and the audit machinery."""

import math

import numpy as np
import pytest

from ohcross.discriminant import (F0_CONSTANT, AuditReport, G_NAMES,
                                  audit_triple, determinant_identity_check,
                                  discriminant_from_eigenvalues,
                                  discriminant_log10, eval_f0_tilde,
                                  eval_f1_tilde, eval_f2_tilde,
                                  evaluate_factors, f1_quartic_coefficients,
                                  f2_magnitude_tilde, f2_parallel_tilde,
                                  f2_perpendicular_tilde, f2_zero_field_tilde,
                                  g_coefficients)
from ohcross.model import (FieldConfiguration, MoleculeParameters,
                           ScaledParameters, scale_parameters)
from ohcross.spectrum import numeric_eigenvalues

D = 8.335
MOL = MoleculeParameters()


def params(b_tilde, e_tilde=0.0, theta=0.7):
    return ScaledParameters(b_tilde=b_tilde, e_tilde=e_tilde,
                            delta_tilde=D, theta=theta)


def random_params(rng):
    cfg = FieldConfiguration(e_field=float(rng.uniform(0, 5e5)),
                             b_field=float(rng.uniform(0.001, 0.3)),
                             theta=float(rng.uniform(0, math.pi)))
    return scale_parameters(MOL, cfg)


class TestF0:
    def test_frozen_unit_value(self):
        assert eval_f0_tilde(1.0) == pytest.approx(5.699868278390783e-41,
                                                   rel=1e-15)
        assert F0_CONSTANT == 81.0 / (2 ** 10 * 5 ** 56)

    def test_eighth_power_scaling(self):
        assert eval_f0_tilde(2.0) == pytest.approx(256.0 * eval_f0_tilde(1.0),
                                                   rel=1e-15)
        assert eval_f0_tilde(3.0) / eval_f0_tilde(1.0) == pytest.approx(
            3.0 ** 8, rel=1e-14)

    def test_vanishes_at_zero_field(self):
        assert eval_f0_tilde(0.0) == 0.0


class TestF1:
    def test_zero_field_factorization(self):
        # f1 = 81 (x - d^2/9)^2 (x - d^2)^2 at zero electric field
        rng = np.random.default_rng(31)
        for _ in range(60):
            b = float(rng.uniform(0.1, 17.0))
            x = b * b
            closed = 81.0 * (x - D * D / 9.0) ** 2 * (x - D * D) ** 2
            got = eval_f1_tilde(b, 0.0, D, float(rng.uniform(0, math.pi)))
            assert got == pytest.approx(closed, rel=1e-10)

    def test_zero_field_coefficients_closed_form(self):
        c0, c2, c4, c6 = f1_quartic_coefficients(0.0, D, 1.3)
        d2 = D * D
        # expand (x - d^2/9)^2 (x - d^2)^2
        assert c6 == pytest.approx(-2.0 * (d2 / 9.0 + d2), rel=1e-14)
        assert c4 == pytest.approx((d2 / 9.0) ** 2 + d2 * d2
                                   + 4.0 * (d2 / 9.0) * d2, rel=1e-14)
        assert c2 == pytest.approx(-2.0 * (d2 / 9.0) * d2 * (d2 / 9.0 + d2),
                                   rel=1e-14)
        assert c0 == pytest.approx(((d2 / 9.0) * d2) ** 2, rel=1e-14)

    def test_cancellation_floor_at_exact_crossings(self):
        # At the double roots the true value is zero; floating point
        # leaves a residue bounded by eps times the term magnitude sum.
        eps = 2.3e-16
        for b in (D / 3.0, D):
            c0, c2, c4, c6 = f1_quartic_coefficients(0.0, D, 0.8)
            x = b * b
            mag = abs(c0) + abs(c2) * x + abs(c4) * x * x \
                + abs(c6) * x ** 3 + x ** 4
            assert abs(eval_f1_tilde(b, 0.0, D, 0.8)) <= 10.0 * 81.0 * eps * mag

    def test_determinant_identity_on_random_configs(self):
        rng = np.random.default_rng(32)
        for _ in range(120):
            rep = determinant_identity_check(random_params(rng))
            assert rep.max_rel_error <= 1e-8

    def test_identity_report_routes_agree(self):
        rep = determinant_identity_check(params(b_tilde=4.0, e_tilde=2.0))
        assert rep.f1_value == pytest.approx(rep.det_value, rel=1e-10)
        assert rep.f1_value == pytest.approx(rep.pair_product, rel=1e-10)


class TestGTable:
    def test_zero_field_reduction_is_exact(self):
        g = g_coefficients(0.0, D, 0.456)
        want = (0.0, 0.0, 0.0, 0.0,
                512.0 * D ** 12, -5120.0 * D ** 10, 16896.0 * D ** 8,
                -20480.0 * D ** 6, 8192.0 * D ** 4)
        assert g == want

    def test_names_cover_even_degrees(self):
        assert G_NAMES == ("g0", "g2", "g4", "g6", "g8",
                           "g10", "g12", "g14", "g16")
        assert len(g_coefficients(1.0, D, 1.0)) == 9

    def test_fault_multiplies_named_coefficient(self):
        clean = g_coefficients(2.0, D, 1.1)
        hurt = g_coefficients(2.0, D, 1.1, fault=("g6", -1.0))
        for name, a, b in zip(G_NAMES, clean, hurt):
            if name == "g6":
                assert b == -a
            else:
                assert b == a

    def test_unknown_fault_name_rejected(self):
        with pytest.raises(ValueError):
            g_coefficients(1.0, D, 1.0, fault=("g7", 2.0))


class TestReducedForms:
    def test_zero_field_form(self):
        rng = np.random.default_rng(33)
        for _ in range(80):
            b = float(rng.uniform(0.0, 17.0))
            th = float(rng.uniform(0, math.pi))
            general = eval_f2_tilde(b, 0.0, D, th)
            closed = f2_zero_field_tilde(b, D)
            mag = f2_magnitude_tilde(b, 0.0, D, th)
            assert abs(general - closed) <= 1e-12 * max(mag, 1e-300)

    def test_parallel_form(self):
        rng = np.random.default_rng(34)
        for th in (0.0, math.pi):
            for _ in range(60):
                b = float(rng.uniform(0.0, 17.0))
                e = float(rng.uniform(0.0, 8.4))
                general = eval_f2_tilde(b, e, D, th)
                closed = f2_parallel_tilde(b, e, D)
                mag = f2_magnitude_tilde(b, e, D, th)
                assert abs(general - closed) <= 1e-8 * max(mag, 1e-300)

    def test_perpendicular_form(self):
        rng = np.random.default_rng(35)
        for _ in range(60):
            b = float(rng.uniform(0.0, 17.0))
            e = float(rng.uniform(0.0, 8.4))
            general = eval_f2_tilde(b, e, D, math.pi / 2.0)
            closed = f2_perpendicular_tilde(b, e, D)
            mag = f2_magnitude_tilde(b, e, D, math.pi / 2.0)
            assert abs(general - closed) <= 1e-8 * max(mag, 1e-300)

    def test_zero_field_octic_roots(self):
        # x = d^2/4 and x = d^2 are roots of the reduced squared quartic
        for b in (D / 2.0, D):
            mag = f2_magnitude_tilde(b, 0.0, D, 1.0)
            assert abs(f2_zero_field_tilde(b, D)) <= 1e-12 * mag


class TestTripleAgreement:
    def test_product_matches_eigenvalue_discriminant(self):
        rng = np.random.default_rng(36)
        for _ in range(120):
            p = random_params(rng)
            fac = evaluate_factors(p)
            lam = numeric_eigenvalues(p).lambdas
            direct = discriminant_from_eigenvalues(lam)
            assert fac.product == pytest.approx(direct, rel=1e-6)

    def test_factor_fields_consistent(self):
        p = params(b_tilde=3.0, e_tilde=1.5)
        fac = evaluate_factors(p)
        assert fac.product == pytest.approx(fac.f0 * fac.f1 * fac.f2 ** 2,
                                            rel=1e-14)

    def test_log10_handles_exact_tie(self):
        assert discriminant_log10([1.0, 1.0, 0.5]) == -math.inf
        v = discriminant_log10([3.0, 2.0, 1.0])
        assert v == pytest.approx(math.log10(
            discriminant_from_eigenvalues([3.0, 2.0, 1.0])), rel=1e-12)


class TestAudit:
    def test_clean_audit_passes(self):
        report = audit_triple(n_samples=150, seed=7)
        assert isinstance(report, AuditReport)
        assert report.passed
        assert report.suspects == ()
        names = [s.name for s in report.sections]
        assert names == ["triple-agreement", "determinant-identity",
                         "zero-field-form", "special-angle-form"]
        for sec in report.sections:
            assert sec.passed
            assert sec.max_rel_error <= sec.tolerance

    def test_section_lookup(self):
        report = audit_triple(n_samples=60, seed=7)
        sec = report.section("triple-agreement")
        assert sec.samples == 60
        with pytest.raises(KeyError):
            report.section("nope")

    def test_seeded_reproducibility(self):
        a = audit_triple(n_samples=80, seed=123)
        b = audit_triple(n_samples=80, seed=123)
        for s, t in zip(a.sections, b.sections):
            assert s.max_rel_error == t.max_rel_error

    def test_sign_flip_fault_is_localized(self):
        report = audit_triple(n_samples=150, seed=7, fault=("g6", -1.0))
        assert not report.passed
        assert report.suspects == ("g6",)
        assert not report.section("triple-agreement").passed

    @pytest.mark.parametrize("name,factor", [
        ("g4", -1.0), ("g10", 1.05), ("g2", 0.0), ("g16", 0.98)])
    def test_other_faults_localized(self, name, factor):
        report = audit_triple(n_samples=100, seed=3, fault=(name, factor))
        assert not report.passed
        assert report.suspects == (name,)
