"""DCT/DFT interpolation of decimated cubes and top-coefficient compression

Budgets count stored reals relative to the number of voxels. A DFT
coefficient of a real cube is stored once per conjugate pair: a
self-conjugate coefficient is real and costs 1, any other pair costs 2.

Both transforms work on the cube minus its mean. The mean is stored in place
of the zero-frequency coefficient, so a constant cube transforms to exact
zeros and comes back bit-exact.

"""

import numpy as np
from scipy import fft as sp_fft

_TRANSFORMS = ("dct", "dft")


def dct_forward(cube):
    return sp_fft.dctn(cube, type=2, norm="ortho")


def dct_inverse(coef):
    return sp_fft.idctn(coef, type=2, norm="ortho")


def dft_forward(cube):
    return sp_fft.fftn(cube, norm="ortho")


def dft_inverse(coef):
    return sp_fft.ifftn(coef, norm="ortho")


def _check_transform(transform):
    transform = transform.lower()
    if transform not in _TRANSFORMS:
        raise ValueError("unknown transform '{}', expected one of {}".format(transform, _TRANSFORMS))
    return transform


def split_offset(cube):
    """(offset, cube - offset) with offset the mean, or the value of a constant cube."""
    lo, hi = cube.min(), cube.max()
    offset = float(lo) if lo == hi else float(cube.mean())
    return offset, cube - offset


def _check_budget(rate):
    if not 0.0 < rate <= 1.0:
        raise ValueError("budget rate must be in (0, 1], got {}".format(rate))


def _target_dims(coarse_dims, strides, dims):
    strides = tuple(int(s) for s in strides)
    if len(strides) != len(coarse_dims) or min(strides) < 1:
        raise ValueError("strides {} do not match a cube of shape {}".format(strides, coarse_dims))
    if dims is None:
        return tuple(n * s for n, s in zip(coarse_dims, strides)), strides
    dims = tuple(int(n) for n in dims)
    expected = tuple(-(-n // s) for n, s in zip(dims, strides))
    if expected != tuple(coarse_dims):
        raise ValueError("decimated shape {} does not match ceil({} / {}) = {}".format(
            tuple(coarse_dims), dims, strides, expected))
    return dims, strides


def _dct_evaluation_matrix(n, s, size):
    """B[i, k] evaluates the orthonormal DCT-II basis k of length n at i / s."""
    t = np.arange(size, dtype=np.float64) / s
    k = np.arange(n, dtype=np.float64)
    scale = np.full(n, np.sqrt(2.0 / n))
    scale[0] = np.sqrt(1.0 / n)
    return scale[None, :] * np.cos(np.pi * k[None, :] * (t[:, None] + 0.5) / n)


def _dft_upsample_axis(values, axis, s, size):
    n = values.shape[axis]
    if s == 1:
        return values
    fine = n * s
    spectrum = np.moveaxis(sp_fft.fft(values, axis=axis), axis, 0)
    padded = np.zeros((fine,) + spectrum.shape[1:], dtype=np.complex128)
    half = (n + 1) // 2
    padded[:half] = spectrum[:half]
    if n % 2 == 0:
        # Nyquist bin shared between +n/2 and -n/2
        padded[n // 2] = 0.5 * spectrum[n // 2]
        padded[fine - n // 2] = 0.5 * spectrum[n // 2]
        padded[fine - n // 2 + 1:] = spectrum[n // 2 + 1:]
    else:
        padded[fine - (n - half):] = spectrum[half:]
    upsampled = sp_fft.ifft(padded, axis=0).real * (fine / float(n))
    return np.moveaxis(upsampled[:size], 0, axis)


def spectral_interpolate(decimated, strides, transform="dct", dims=None):
    """Interpolate the anchors f[::s1, ::s2(, ::s3)] to the full grid.

    Coarse sample j sits at fine coordinate j * s. The coarse spectrum is
    zero-padded (DFT) or its cosine series is evaluated at fractional
    coordinates (DCT), which is the same construction for the even extension.
    Both reproduce the anchors and map constants to constants.

    Args:
        decimated (np.ndarray): coarse cube of shape ceil(dims / strides)
        strides (tuple): decimation per axis
        transform (str): "dct" or "dft"
        dims (tuple, optional): target shape, default coarse dims * strides

    Returns:
        np.ndarray: full-size cube

    """
    transform = _check_transform(transform)
    decimated = np.asarray(decimated, dtype=np.float64)
    dims, strides = _target_dims(decimated.shape, strides, dims)
    offset, residual = split_offset(decimated)

    if transform == "dct":
        result = dct_forward(residual)
        for axis, (n, s, size) in enumerate(zip(decimated.shape, strides, dims)):
            basis = _dct_evaluation_matrix(n, s, size)
            result = np.moveaxis(np.tensordot(basis, result, axes=([1], [axis])), 0, axis)
        return np.ascontiguousarray(result + offset)

    result = residual
    for axis, (s, size) in enumerate(zip(strides, dims)):
        result = _dft_upsample_axis(result, axis, s, size)
    return np.ascontiguousarray(result + offset)


def _largest_first(magnitude):
    # ties by lower ordinal
    return np.lexsort((np.arange(magnitude.size), -magnitude.ravel()))


def _conjugate_ordinals(dims):
    index = np.indices(dims).reshape(len(dims), -1)
    mirrored = (-index) % np.array(dims)[:, None]
    return np.ravel_multi_index(tuple(mirrored), dims)


def transform_compress(cube, transform, rate):
    """Keep the largest-magnitude coefficients that fit in the budget.

    Args:
        cube (np.ndarray): field
        transform (str): "dct" or "dft"
        rate (float): stored reals as a fraction of the voxel count, in (0, 1]

    Returns:
        np.ndarray: reconstruction
        float: achieved rate

    """
    transform = _check_transform(transform)
    _check_budget(rate)
    cube = np.asarray(cube, dtype=np.float64)
    num_voxels = cube.size
    budget = max(1, int(np.floor(rate * num_voxels)))
    offset, residual = split_offset(cube)
    # the offset takes the zero-frequency slot
    budget -= 1

    if transform == "dct":
        coef = dct_forward(residual).ravel()
        keep = _largest_first(np.abs(coef[1:]))[:budget] + 1
        kept = np.zeros(num_voxels)
        kept[keep] = coef[keep]
        recon = dct_inverse(kept.reshape(cube.shape)) + offset
        return recon, (len(keep) + 1) / float(num_voxels)

    coef = dft_forward(residual).ravel()
    partner = _conjugate_ordinals(cube.shape)
    ordinals = np.arange(num_voxels)
    groups = np.flatnonzero(ordinals <= partner)[1:]
    cost = np.where(partner[groups] == groups, 1, 2)
    order = np.lexsort((groups, -np.abs(coef[groups])))
    groups, cost = groups[order], cost[order]

    total = np.cumsum(cost)
    taken = total <= budget
    num_prefix = int(np.count_nonzero(taken))
    used = int(total[num_prefix - 1]) if num_prefix > 0 else 0
    if used < budget:
        rest = np.flatnonzero((~taken) & (cost == 1))
        if rest.size > 0:
            taken[rest[0]] = True
            used += 1

    kept = np.zeros(num_voxels, dtype=np.complex128)
    selected = groups[taken]
    kept[selected] = coef[selected]
    kept[partner[selected]] = coef[partner[selected]]
    recon = dft_inverse(kept.reshape(cube.shape)).real + offset
    return recon, (used + 1) / float(num_voxels)
