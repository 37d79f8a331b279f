import numpy as np
import pytest

from sdrecon.models.metric import error_norms, psnr_from_l2


def test_exact():
    f = np.random.RandomState(0).randn(8, 8)
    report = error_norms(f, f.copy())
    assert (report.l1, report.l2, report.linf) == (0.0, 0.0, 0.0)
    assert report.psnr == float("inf")
    # a constant reference is fine when the error vanishes
    assert error_norms(np.ones((4, 4)), np.ones((4, 4))).psnr == float("inf")


def test_uniform_error():
    f = np.linspace(0.0, 2.0, 50).reshape(5, 10)
    report = error_norms(f, f - 0.02)
    np.testing.assert_allclose([report.l1, report.l2, report.linf], 0.01, rtol=1e-9)
    np.testing.assert_allclose(report.psnr, 40.0, rtol=1e-9)
    assert report.range == 2.0
    assert list(report.as_dict().keys()) == ["l1", "l2", "linf", "psnr"]


def test_psnr_from_l2():
    assert abs(psnr_from_l2(0.0075) - 42.5) < 0.01
    assert psnr_from_l2(0.0) == float("inf")


def test_norm_relations():
    rng = np.random.RandomState(1)
    for _ in range(20):
        f = rng.randn(12, 9)
        fhat = f + 0.1 * rng.standard_cauchy((12, 9))
        report = error_norms(f, fhat)
        assert report.l1 <= report.l2 <= report.linf
        np.testing.assert_allclose(report.psnr + 20.0 * np.log10(report.l2), 0.0, atol=1e-9)
        scaled = error_norms(3.5 * f - 2.0, 3.5 * fhat - 2.0)
        np.testing.assert_allclose([scaled.l1, scaled.l2, scaled.linf, scaled.psnr],
                                   [report.l1, report.l2, report.linf, report.psnr], rtol=1e-9)


def test_invalid():
    with pytest.raises(ValueError, match="absolute"):
        error_norms(np.ones((4, 4)), np.zeros((4, 4)))
    with pytest.raises(ValueError):
        error_norms(np.ones((4, 4)), np.ones((4, 5)))
