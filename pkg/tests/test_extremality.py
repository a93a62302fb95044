import numpy as np
import pytest

from sostree.boundary import enumerate_tisgms, mirror_image
from sostree.channel import build_channel
from sostree.errors import DomainError
from sostree.extremality import (
    Verdict,
    classify_law,
    classify_measure,
    conditional_spin_probs,
    disagreement_f,
    disagreement_g,
    gamma_upper_bound,
    kappa_closed_form,
    kappa_general,
    msw_indicator,
    msw_indicator_strict,
    u1_printed_variant,
)

import oracles


class TestKappa:
    def test_frozen_values_at_02(self):
        cat = enumerate_tisgms(0.2)
        for b, want in oracles.FROZEN_KAPPA_02.items():
            assert kappa_general(0.2, cat.law(b)) == pytest.approx(want, abs=1e-12)

    @pytest.mark.parametrize(
        "theta", [0.05, 0.1, 0.1414, 0.16, 0.2, 0.25, 0.29, 0.5, 1.0, 2.0, 3.0]
    )
    def test_general_equals_half_l1(self, theta):
        for law in enumerate_tisgms(theta).laws:
            ch = build_channel(theta, law)
            assert kappa_general(theta, law) == pytest.approx(
                oracles.half_l1_kappa(ch.p), abs=1e-12
            )

    @pytest.mark.parametrize("theta", [0.05, 0.1, 0.16, 0.2, 0.25, 0.29, 0.5, 2.0, 3.0])
    def test_closed_form_equals_general(self, theta):
        cat = enumerate_tisgms(theta)
        for law in cat.laws:
            if law.branch in (1, 4, 5, 6, 7):
                assert kappa_closed_form(theta, law.branch, cat) == pytest.approx(
                    kappa_general(theta, law), abs=1e-10
                )

    def test_single_pair_forms_undercut_maximum(self):
        # the (1,2) and (0,1) row-pair rates for branches 5-7 sit strictly
        # below the full maximum, which the closed form must reproduce
        cat = enumerate_tisgms(0.2)
        for b, pair_value in oracles.FROZEN_KAPPA_02_SINGLE_PAIR.items():
            full = kappa_general(0.2, cat.law(b))
            assert pair_value < full - 1e-3

    def test_kappa_zero_at_theta_one(self):
        law = enumerate_tisgms(1.0).law(1)
        assert kappa_general(1.0, law) == pytest.approx(0.0, abs=1e-14)

    def test_branch23_closed_form_falls_back(self):
        cat = enumerate_tisgms(0.1)
        for b in (2, 3):
            assert kappa_closed_form(0.1, b, cat) == pytest.approx(
                kappa_general(0.1, cat.law(b)), abs=1e-14
            )


class TestGammaBound:
    def test_bound_formula(self):
        assert gamma_upper_bound(0.2956) == pytest.approx(
            (1.0 - 0.2956 ** 2) / (1.0 + 0.2956 ** 2), abs=1e-15
        )
        assert gamma_upper_bound(3.0) == pytest.approx(8.0 / 10.0, abs=1e-15)
        assert gamma_upper_bound(1.0) == 0.0

    @pytest.mark.parametrize(
        "theta", [0.05, 0.1, 0.2, 0.28, 0.5, 0.9, 1.1, 2.0, 3.0, 8.0]
    )
    def test_grid_max_within_bound(self, theta):
        cat = enumerate_tisgms(theta)
        ticks = np.linspace(0.0, 1.0, 200)
        tt, uu = np.meshgrid(ticks, ticks, indexing="ij")
        mask = tt + uu <= 1.0 + 1e-12
        t = tt[mask]
        u = np.minimum(uu[mask], 1.0 - tt[mask])
        bound = gamma_upper_bound(theta)
        for law in cat.laws:
            fmax = np.abs(disagreement_f(t, u, theta, law)).max()
            gmax = np.abs(disagreement_g(t, u, theta, law)).max()
            assert fmax <= bound + 1e-9
            assert gmax <= bound + 1e-9

    def test_boundary_point_attains_bound(self):
        # f at (1/(1+x^2), x^2/(1+x^2)) equals the bound exactly
        for theta in (0.2, 0.5, 3.0):
            for law in enumerate_tisgms(theta).laws:
                x2 = law.x ** 2
                t0, u0 = 1.0 / (1.0 + x2), x2 / (1.0 + x2)
                val = abs(disagreement_f(t0, u0, theta, law))
                assert val == pytest.approx(gamma_upper_bound(theta), abs=1e-12)

    def test_edge_point_value(self):
        # on the u = 0 edge, t = y^2/(x^2+y^2) gives (1-theta)/(1+theta)
        for theta in (0.1, 0.2):
            law = enumerate_tisgms(theta).law(1)
            t0 = law.y ** 2 / (law.x ** 2 + law.y ** 2)
            val = disagreement_f(t0, 0.0, theta, law)
            assert val == pytest.approx((1.0 - theta) / (1.0 + theta), abs=1e-12)

    def test_rejects_outside_simplex(self):
        law = enumerate_tisgms(0.5).law(1)
        with pytest.raises(DomainError):
            disagreement_f(0.7, 0.7, 0.5, law)
        with pytest.raises(DomainError):
            disagreement_g(-0.1, 0.5, 0.5, law)


class TestConditionalProbs:
    def test_rows_reweighted(self):
        law = enumerate_tisgms(0.2).law(4)
        p = conditional_spin_probs(0.3, 0.5, 0.2, 1, 0.2, law)
        assert p.shape == (3,)
        assert np.all(p > 0)
        assert p.sum() == pytest.approx(1.0, abs=1e-12)

    def test_uniform_free_distribution_recovers_rows(self):
        law = enumerate_tisgms(0.2).law(4)
        ch = build_channel(0.2, law)
        for a in range(3):
            p = conditional_spin_probs(1 / 3, 1 / 3, 1 / 3, a, 0.2, law)
            assert np.allclose(p, ch.p[a], atol=1e-12)

    def test_pair_02_dominates_all_pairs(self):
        # the extreme parent pair is (0, 2): adjacent-pair disagreement
        # never exceeds it, for any free distribution
        rng = np.random.default_rng(101)
        for theta in (0.05, 0.2, 0.29, 1.0, 3.0, 8.0):
            for law in enumerate_tisgms(theta).laws:
                ps = rng.dirichlet(np.ones(3), size=250)
                for pv in ps:
                    cond = [
                        conditional_spin_probs(pv[0], pv[1], pv[2], a, theta, law)
                        for a in range(3)
                    ]
                    tv02 = 0.5 * np.abs(cond[0] - cond[2]).sum()
                    tv01 = 0.5 * np.abs(cond[0] - cond[1]).sum()
                    tv12 = 0.5 * np.abs(cond[1] - cond[2]).sum()
                    assert tv01 <= tv02 + 1e-12
                    assert tv12 <= tv02 + 1e-12

    def test_fg_are_the_pair02_coordinate_gaps(self):
        # f is the spin-0 gap and -g the spin-2 gap between the two
        # conditioned distributions; total variation is their envelope
        rng = np.random.default_rng(77)
        for theta in (0.1, 0.2, 3.0):
            for law in enumerate_tisgms(theta).laws:
                ps = rng.dirichlet(np.ones(3), size=200)
                t, u = ps[:, 0], ps[:, 2]
                f = np.atleast_1d(disagreement_f(t, u, theta, law))
                g = np.atleast_1d(disagreement_g(t, u, theta, law))
                for i, pv in enumerate(ps):
                    c0 = conditional_spin_probs(pv[0], pv[1], pv[2], 0, theta, law)
                    c2 = conditional_spin_probs(pv[0], pv[1], pv[2], 2, theta, law)
                    assert f[i] == pytest.approx(c0[0] - c2[0], abs=1e-12)
                    assert g[i] == pytest.approx(c2[2] - c0[2], abs=1e-12)
                    tv = 0.5 * np.abs(c0 - c2).sum()
                    envelope = max(abs(f[i]), abs(g[i]), abs(f[i] - g[i]))
                    assert tv == pytest.approx(envelope, abs=1e-12)

    def test_rejects_bad_inputs(self):
        law = enumerate_tisgms(0.5).law(1)
        with pytest.raises(DomainError):
            conditional_spin_probs(0.5, 0.6, 0.2, 0, 0.5, law)
        with pytest.raises(DomainError):
            conditional_spin_probs(0.3, 0.5, 0.2, 5, 0.5, law)


class TestIndicators:
    def test_frozen_u1_values(self):
        for theta, want in oracles.FROZEN_U1.items():
            assert msw_indicator(theta, 1) == pytest.approx(want, abs=1e-9)

    def test_u1_printed_variant_stays_negative(self):
        for theta in np.linspace(1.05, 9.5, 40):
            assert u1_printed_variant(float(theta)) < -0.9

    def test_indicator_uses_pair_rate_on_upper_branches(self):
        # for branches 6 and 7 the indicator is built from the (0,1) pair
        # rate, so it sits below the strict variant built from the maximum
        cat = enumerate_tisgms(0.2)
        for b in (5, 6, 7):
            printed = msw_indicator(0.2, b, cat)
            strict = msw_indicator_strict(0.2, b, cat)
            assert printed < strict

    def test_strict_variant_uses_general_kappa(self):
        cat = enumerate_tisgms(0.2)
        for law in cat.laws:
            want = 2.0 * kappa_general(0.2, law) * gamma_upper_bound(0.2) - 1.0
            assert msw_indicator_strict(0.2, law.branch, cat) == pytest.approx(
                want, abs=1e-14
            )

    def test_indicator_rejects_symmetric_middle_branches(self):
        cat = enumerate_tisgms(0.1)
        for b in (2, 3):
            with pytest.raises(DomainError):
                msw_indicator(0.1, b, cat)

    def test_indicator_signs_at_key_couplings(self):
        # branch 5 turns extreme above its root, branch 1 below its root
        assert msw_indicator(0.26, 5) > 0
        assert msw_indicator(0.27, 5) < 0
        assert msw_indicator(2.5, 1) < 0
        assert msw_indicator(2.8, 1) > 0


class TestVerdicts:
    def test_branch1_three_phases(self):
        assert classify_measure(2.0, 1).verdict is Verdict.Extreme
        assert classify_measure(2.7, 1).verdict is Verdict.Undetermined
        assert classify_measure(3.0, 1).verdict is Verdict.NonExtreme

    def test_branch56_three_phases(self):
        assert classify_measure(0.16, 5).verdict is Verdict.NonExtreme
        assert classify_measure(0.2, 5).verdict is Verdict.Undetermined
        assert classify_measure(0.28, 5).verdict is Verdict.Extreme
        assert classify_measure(0.16, 6).verdict is Verdict.NonExtreme
        assert classify_measure(0.2, 6).verdict is Verdict.Undetermined
        assert classify_measure(0.28, 6).verdict is Verdict.Extreme

    def test_branch23_always_nonextreme(self):
        for theta in (0.05, 0.1, 0.13):
            for b in (2, 3):
                assert classify_measure(theta, b).verdict is Verdict.NonExtreme

    def test_branch47_always_extreme(self):
        for theta in (0.05, 0.1, 0.16, 0.2, 0.25, 0.29):
            for b in (4, 7):
                assert classify_measure(theta, b).verdict is Verdict.Extreme

    def test_report_fields_coherent(self):
        r = classify_measure(0.2, 5)
        assert r.branch == 5
        assert r.theta == 0.2
        assert r.eta < 0 and r.u > 0  # both criteria silent: undetermined
        assert r.gamma_bound == pytest.approx(gamma_upper_bound(0.2), abs=1e-15)

    def test_mirror_pairs_get_identical_verdicts(self):
        for theta in (0.05, 0.1, 0.2, 0.25, 0.29):
            cat = enumerate_tisgms(theta)
            for law in cat.laws:
                partner = cat.law(mirror_image(law).branch)
                va = classify_law(theta, law, cat).verdict
                vb = classify_law(theta, partner, cat).verdict
                assert va is vb
