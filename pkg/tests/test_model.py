import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mrenew import (
    KernelTransform,
    MMInfinityKernel,
    QueueParams,
    mm_inf_sigma_bar,
    mm_inf_tau_bar,
    validate_kernel,
)


class TestQueueParams:
    def test_rho_is_always_derived(self):
        p = QueueParams(lam=2.0, alpha=0.5)
        assert p.rho == 2.0 * 0.5

    def test_rejects_negative_arrival_rate(self):
        with pytest.raises(ValueError):
            QueueParams(lam=-0.1, alpha=1.0)

    @pytest.mark.parametrize("alpha", [0.0, -1.0])
    def test_rejects_nonpositive_service_time(self, alpha):
        with pytest.raises(ValueError):
            QueueParams(lam=1.0, alpha=alpha)

    def test_zero_arrivals_allowed(self):
        assert QueueParams(lam=0.0, alpha=1.0).rho == 0.0


class TestKernelEntries:
    def test_tau_at_origin_is_one(self):
        # rho/(0 + rho + 0) with lam = alpha = 1
        assert mm_inf_tau_bar(0, 0.0, QueueParams(1.0, 1.0)) == pytest.approx(1.0, rel=1e-15)

    def test_tau_example(self):
        assert mm_inf_tau_bar(1, 2.0, QueueParams(2.0, 1.0)) == pytest.approx(0.4, rel=1e-15)

    def test_tau_vanishes_without_arrivals(self):
        assert mm_inf_tau_bar(5, 0.0, QueueParams(0.0, 1.0)) == 0.0

    def test_sigma_zero_at_state_zero(self):
        assert mm_inf_sigma_bar(0, 7.3, QueueParams(3.0, 2.0)) == 0.0

    def test_sigma_example(self):
        assert mm_inf_sigma_bar(3, 1.0, QueueParams(1.0, 1.0)) == pytest.approx(0.6, rel=1e-15)

    def test_sigma_pure_death(self):
        assert mm_inf_sigma_bar(2, 1.0, QueueParams(0.0, 1.0)) == pytest.approx(2.0 / 3.0, rel=1e-15)

    @pytest.mark.parametrize("fn", [mm_inf_tau_bar, mm_inf_sigma_bar])
    def test_domain_errors(self, fn):
        p = QueueParams(1.0, 1.0)
        with pytest.raises(ValueError):
            fn(-1, 1.0, p)
        with pytest.raises(ValueError):
            fn(1, -0.5, p)

    @given(
        j=st.integers(min_value=0, max_value=200),
        s=st.floats(min_value=0.0, max_value=100.0),
        lam=st.floats(min_value=0.0, max_value=10.0),
        alpha=st.floats(min_value=0.1, max_value=10.0),
    )
    @settings(max_examples=100, derandomize=True, deadline=None)
    def test_sum_identity(self, j, s, lam, alpha):
        # sigma + tau == (j + rho) / (j + rho + alpha*s), an algebraic
        # identity away from the absorbing corner j = rho = s = 0
        p = QueueParams(lam, alpha)
        assume(j + p.rho + alpha * s > 0)
        total = mm_inf_sigma_bar(j, s, p) + mm_inf_tau_bar(j, s, p)
        expected = (j + p.rho) / (j + p.rho + alpha * s)
        assert total == pytest.approx(expected, rel=1e-15)

    def test_absorbing_corner_is_zero(self):
        p = QueueParams(0.0, 1.0)
        assert mm_inf_tau_bar(0, 0.0, p) == 0.0
        assert mm_inf_sigma_bar(0, 0.0, p) == 0.0
        assert MMInfinityKernel(p).transforms(0, 0.0) == (0.0, 0.0)

    def test_strict_decrease_in_s(self):
        p = QueueParams(1.0, 1.0)
        for j in (0, 1, 7):
            taus = [mm_inf_tau_bar(j, s, p) for s in (0.0, 0.5, 1.0, 4.0)]
            assert all(a > b for a, b in zip(taus, taus[1:]))
        sigmas = [mm_inf_sigma_bar(3, s, p) for s in (0.0, 0.5, 1.0, 4.0)]
        assert all(a > b for a, b in zip(sigmas, sigmas[1:]))

    def test_vanishing_at_large_s(self):
        p = QueueParams(1.0, 1.0)
        s = 1e8 / p.alpha
        for j in (0, 1, 10):
            assert mm_inf_tau_bar(j, s, p) < 1e-6
            assert mm_inf_sigma_bar(j, s, p) < 1e-6


class _BadOriginKernel(KernelTransform):
    """sigma_bar(0, s) = 0.5, violating the no-death-from-zero condition."""

    def transforms(self, j, s):
        return 0.5, 0.25


class _IncreasingKernel(KernelTransform):
    def transforms(self, j, s):
        if j == 0:
            return 0.0, s / (1.0 + s)
        return 0.1, s / (1.0 + s)


class TestValidateKernel:
    def test_mm_infinity_passes(self):
        kernel = MMInfinityKernel(QueueParams(1.0, 1.0))
        assert validate_kernel(kernel, 50, [0.0, 0.1, 1.0, 10.0]) == []

    def test_sum_equals_one_at_s_zero_is_allowed(self):
        # sigma + tau == 1 exactly at s = 0: the <= bound holds with equality
        kernel = MMInfinityKernel(QueueParams(2.0, 0.5))
        assert validate_kernel(kernel, 30, [0.0]) == []

    def test_bad_origin_reported(self):
        report = validate_kernel(_BadOriginKernel(), 3, [0.5, 1.0])
        assert any(j == 0 for j, _, _ in report)
        assert any("sigma_bar(0" in msg for _, _, msg in report)

    def test_monotonicity_violation_reported(self):
        report = validate_kernel(_IncreasingKernel(), 2, [0.5, 1.0, 2.0])
        assert any("increased" in msg for _, _, msg in report)

    def test_empty_grid_rejected(self):
        kernel = MMInfinityKernel(QueueParams(1.0, 1.0))
        with pytest.raises(ValueError):
            validate_kernel(kernel, 5, [])

    def test_negative_s_rejected(self):
        kernel = MMInfinityKernel(QueueParams(1.0, 1.0))
        with pytest.raises(ValueError):
            validate_kernel(kernel, 5, [-1.0, 1.0])


class TestMMInfinityKernelEvaluator:
    def test_matches_module_functions(self):
        p = QueueParams(1.5, 0.7)
        kernel = MMInfinityKernel(p)
        for j in (0, 1, 4):
            for s in (0.0, 0.3, 2.0):
                sigma, tau = kernel.transforms(j, s)
                assert sigma == mm_inf_sigma_bar(j, s, p)
                assert tau == mm_inf_tau_bar(j, s, p)

    def test_complex_s_accepted(self):
        # j = 2, rho = 1, alpha = 1, s = 1 + 3i: denominator 4 + 3i
        kernel = MMInfinityKernel(QueueParams(1.0, 1.0))
        sigma, tau = kernel.transforms(2, complex(1.0, 3.0))
        assert sigma == 2 / (4 + 3j)
        assert tau == 1 / (4 + 3j)

    def test_complex_s_with_negative_real_part_rejected(self):
        kernel = MMInfinityKernel(QueueParams(1.0, 1.0))
        with pytest.raises(ValueError):
            kernel.transforms(2, complex(-1.0, 3.0))

    def test_helper_accessors(self):
        p = QueueParams(1.0, 1.0)
        kernel = MMInfinityKernel(p)
        assert kernel.sigma_bar(3, 1.0) == mm_inf_sigma_bar(3, 1.0, p)
        assert kernel.tau_bar(3, 1.0) == mm_inf_tau_bar(3, 1.0, p)
