import numpy as np
import pytest

from sdrecon.data.sampling import decimate
from sdrecon.models.transforms import (dct_forward, dct_inverse, dft_forward, dft_inverse, spectral_interpolate,
                                       transform_compress)


def test_dct_constant():
    coef = dct_forward(np.full((8, 6, 4), 3.0))
    assert np.count_nonzero(np.abs(coef) > 1e-12) == 1
    np.testing.assert_allclose(coef[0, 0, 0], 3.0 * np.sqrt(8 * 6 * 4))


@pytest.mark.parametrize("dims", [(16, 16), (7, 12, 5)])
def test_orthonormal(dims):
    cube = np.random.RandomState(0).randn(*dims)
    value_range = cube.max() - cube.min()
    coef = dct_forward(cube)
    assert np.abs(dct_inverse(coef) - cube).max() < 1e-10 * value_range
    np.testing.assert_allclose(np.square(coef).sum(), np.square(cube).sum(), rtol=1e-9)
    coef = dft_forward(cube)
    assert np.abs(dft_inverse(coef).real - cube).max() < 1e-10 * value_range
    np.testing.assert_allclose(np.square(np.abs(coef)).sum(), np.square(cube).sum(), rtol=1e-9)


@pytest.mark.parametrize("transform", ["dct", "dft"])
def test_interpolate_constant(transform):
    full = spectral_interpolate(np.full((4, 5), 2.5), (4, 2), transform)
    assert full.shape == (16, 10)
    np.testing.assert_array_equal(full, 2.5)
    full = spectral_interpolate(np.full((3, 3, 2), -1.0), (2, 2, 2), transform, dims=(5, 6, 4))
    assert full.shape == (5, 6, 4)
    np.testing.assert_array_equal(full, -1.0)


def test_dft_band_limited():
    n, s = 8, 4
    i = np.arange(n * s)
    wave = np.cos(2 * np.pi * 3 * i / (n * s)) + 0.5 * np.sin(2 * np.pi * 1 * i / (n * s))
    field = np.outer(wave, np.cos(2 * np.pi * 2 * np.arange(16) / 16.0))
    full = spectral_interpolate(decimate(field, (s, 2)), (s, 2), "dft")
    np.testing.assert_allclose(full, field, atol=1e-10)


def test_dct_band_limited():
    n, s = 8, 4
    i = np.arange(n * s)
    # the cosine basis of the coarse grid continued through the anchors j * s
    field = np.cos(np.pi * 3 * (i + 0.5 * s) / (n * s))[:, None] * np.cos(np.pi * 2 * (np.arange(12) + 1.0) / 12.0)
    full = spectral_interpolate(decimate(field, (s, 2)), (s, 2), "dct")
    np.testing.assert_allclose(full, field, atol=1e-10)


@pytest.mark.parametrize("transform", ["dct", "dft"])
def test_interpolate_anchors(transform):
    field = np.random.RandomState(1).randn(17, 14)
    coarse = decimate(field, (4, 3))
    full = spectral_interpolate(coarse, (4, 3), transform, dims=field.shape)
    assert full.shape == field.shape
    np.testing.assert_allclose(full[::4, ::3], coarse, atol=1e-10)


def test_interpolate_mismatch():
    with pytest.raises(ValueError):
        spectral_interpolate(np.zeros((4, 4)), (4, 4), "dct", dims=(20, 16))
    with pytest.raises(ValueError):
        spectral_interpolate(np.zeros((4, 4)), (4,), "dct")
    with pytest.raises(ValueError):
        spectral_interpolate(np.zeros((4, 4)), (4, 4), "wavelet")


@pytest.mark.parametrize("transform", ["dct", "dft"])
def test_compress_full_budget(transform):
    cube = np.random.RandomState(2).randn(9, 8)
    recon, rate = transform_compress(cube, transform, 1.0)
    np.testing.assert_allclose(recon, cube, atol=1e-10)
    assert rate == 1.0


@pytest.mark.parametrize("transform", ["dct", "dft"])
def test_compress_constant(transform):
    cube = np.full((8, 8, 4), 0.7)
    # the mean alone is stored
    recon, rate = transform_compress(cube, transform, 1.0 / cube.size)
    np.testing.assert_array_equal(recon, cube)
    assert rate == 1.0 / cube.size
    for rate in (0.05, 0.1, 1.0):
        np.testing.assert_array_equal(transform_compress(cube, transform, rate)[0], cube)


def test_dct_compress_parseval():
    cube = np.random.RandomState(3).randn(16, 16)
    recon, rate = transform_compress(cube, "dct", 0.1)
    assert rate == 25 / 256.0
    # the mean replaces the zero-frequency coefficient, 24 others are kept
    coef = np.sort(np.abs(dct_forward(cube).ravel()[1:]))[::-1]
    dropped = np.sqrt(np.square(coef[24:]).sum())
    np.testing.assert_allclose(np.linalg.norm(recon - cube), dropped, rtol=1e-9)


def test_dft_compress_budget():
    cube = np.random.RandomState(4).randn(16, 16)
    recon, rate = transform_compress(cube, "dft", 0.1)
    # 4 self-conjugate coefficients cost 1, every other pair costs 2
    assert rate * 256 <= 25
    assert rate * 256 >= 24
    coef = dft_forward(cube)
    kept = dft_forward(recon)
    nonzero = np.abs(kept) > 1e-9
    np.testing.assert_allclose(kept[nonzero], coef[nonzero], atol=1e-9)
    assert np.count_nonzero(nonzero) == int(round(rate * 256))
    dropped = np.sqrt(np.square(np.abs(coef[~nonzero])).sum())
    np.testing.assert_allclose(np.linalg.norm(recon - cube), dropped, rtol=1e-9)


@pytest.mark.parametrize("transform", ["dct", "dft"])
def test_compress_error_monotone(transform):
    x = np.linspace(0, 1, 24)
    cube = np.sin(6 * x)[:, None] * np.exp(-x)[None, :] + 0.05 * np.random.RandomState(5).randn(24, 24)
    errors = []
    for rate in (0.02, 0.05, 0.1, 0.2, 0.4, 0.8, 1.0):
        recon, _ = transform_compress(cube, transform, rate)
        errors.append(np.linalg.norm(recon - cube))
    assert all(b <= a + 1e-12 for a, b in zip(errors, errors[1:]))


def test_compress_invalid():
    with pytest.raises(ValueError):
        transform_compress(np.zeros((4, 4)), "dct", 0.0)
    with pytest.raises(ValueError):
        transform_compress(np.zeros((4, 4)), "dft", 1.5)
