import numpy as np
import pytest

from sostree.boundary import enumerate_tisgms
from sostree.errors import DomainError
from sostree.recursion import (
    TiLaw,
    iterate_to_fixed_point,
    recursion_F,
    ti_fixed_point_map,
)


def brute_force_map(z, m, k, theta):
    """Direct linear-domain evaluation of the fixed-point map."""
    z = list(z) + [1.0]
    out = []
    for i in range(m):
        num = sum(theta ** abs(i - j) * z[j] for j in range(m + 1))
        den = sum(theta ** (m - j) * z[j] for j in range(m + 1))
        out.append((num / den) ** k)
    return out


class TestMap:
    @pytest.mark.parametrize("theta", [0.1, 0.5, 1.0, 3.0])
    def test_matches_brute_force(self, theta):
        rng = np.random.default_rng(11)
        for _ in range(50):
            m = int(rng.integers(1, 5))
            k = int(rng.integers(1, 4))
            z = tuple(float(v) for v in rng.uniform(0.01, 20.0, size=m))
            got = ti_fixed_point_map(TiLaw(z, m, k), theta).z
            want = brute_force_map(z, m, k, theta)
            for g, w in zip(got, want):
                assert g == pytest.approx(w, rel=1e-12)

    def test_catalog_laws_are_fixed_points(self):
        # all enumerated boundary laws satisfy the general recursion
        for theta in (0.05, 0.1, 0.16, 0.2, 0.28, 0.5, 1.0, 3.0):
            for law in enumerate_tisgms(theta).laws:
                z = (law.x ** 2, law.y ** 2)
                fz = ti_fixed_point_map(TiLaw(z, 2, 2), theta).z
                for a, b in zip(fz, z):
                    assert abs(a - b) / max(1.0, abs(b)) <= 1e-10

    def test_log_domain_survives_extreme_scales(self):
        # linear-domain evaluation would overflow for these inputs
        got = ti_fixed_point_map(TiLaw((1e300, 1e-300), 2, 2), 0.5).z
        assert all(np.isfinite(got))
        assert all(v > 0 for v in got)

    def test_recursion_F_shape_and_finite(self):
        h = np.array([0.3, -0.2, 0.9])
        out = recursion_F(h, 3, 0.7)
        assert out.shape == (3,)
        assert np.all(np.isfinite(out))

    def test_rejects_bad_m(self):
        with pytest.raises(DomainError):
            recursion_F(np.array([0.0]), 0, 0.5)


class TestIteration:
    def test_converges_to_branch1(self):
        res = iterate_to_fixed_point(TiLaw((1.0, 1.0), 2, 2), 0.5)
        assert res.converged
        assert res.residual <= 1e-10
        law1 = enumerate_tisgms(0.5).law(1)
        assert res.law.z[0] == pytest.approx(law1.x ** 2, rel=1e-8)
        assert res.law.z[1] == pytest.approx(law1.y ** 2, rel=1e-8)

    def test_converges_near_asymmetric_start(self):
        cat = enumerate_tisgms(0.1)
        law4 = cat.law(4)
        z0 = (law4.x ** 2 * 1.01, law4.y ** 2 * 0.99)
        res = iterate_to_fixed_point(TiLaw(z0, 2, 2), 0.1)
        assert res.converged
        # lands on some catalog law
        best = min(
            abs(res.law.z[0] - l.x ** 2) + abs(res.law.z[1] - l.y ** 2)
            for l in cat.laws
        )
        assert best < 1e-6

    def test_three_state_chain_m3(self):
        res = iterate_to_fixed_point(TiLaw((1.0, 1.0, 1.0), 3, 2), 0.4)
        assert res.converged
        fz = ti_fixed_point_map(res.law, 0.4).z
        for a, b in zip(fz, res.law.z):
            assert abs(a - b) / max(1.0, abs(b)) <= 1e-9

    @pytest.mark.parametrize("damping", [0.25, 0.5, 1.0])
    def test_converged_implies_residual_below_tol(self, damping):
        res = iterate_to_fixed_point(
            TiLaw((1.5, 0.7, 1.1), 3, 2), 0.8, damping=damping, tol=1e-12
        )
        assert res.converged
        assert res.residual <= 1e-12

    def test_iteration_budget_respected(self):
        res = iterate_to_fixed_point(TiLaw((5.0, 0.1), 2, 2), 0.2, max_iter=3)
        assert res.iterations <= 3
        assert not res.converged

    def test_rejects_nonpositive_start(self):
        with pytest.raises(DomainError):
            TiLaw((0.0, 1.0), 2, 2)

    def test_rejects_bad_damping(self):
        with pytest.raises(DomainError):
            iterate_to_fixed_point(TiLaw((1.0, 1.0), 2, 2), 0.5, damping=1.5)
