"""Random and regular sampling masks"""

import numpy as np

from sdrecon.utils.np_util import make_rng


def random_mask(dims, rate, seed):
    """Sample exactly round(rate * num_voxels) voxels uniformly without replacement.

    Args:
        dims (tuple of int): field shape
        rate (float): fraction in (0, 1]
        seed (int): 64-bit seed

    Returns:
        np.ndarray: boolean mask

    """
    dims = tuple(int(n) for n in dims)
    if not 0.0 < rate <= 1.0:
        raise ValueError("sampling rate must be in (0, 1], got {}".format(rate))
    num_voxels = int(np.prod(dims))
    count = int(np.floor(rate * num_voxels + 0.5))
    if count < 1:
        raise ValueError("rate {} samples no voxel of a {} field".format(rate, dims))
    choice = make_rng(seed).permutation(num_voxels)[:count]
    flags = np.zeros(num_voxels, dtype=bool)
    flags[choice] = True
    return flags.reshape(dims)


def _check_strides(dims, strides):
    strides = tuple(int(s) for s in strides)
    if len(strides) != len(dims):
        raise ValueError("strides {} do not match dims {}".format(strides, tuple(dims)))
    for s, n in zip(strides, dims):
        if s < 1:
            raise ValueError("strides must be positive, got {}".format(strides))
        if s > n:
            raise ValueError("stride {} exceeds dimension {}".format(s, n))
    return strides


def regular_mask(dims, strides):
    """Voxels whose every coordinate is a multiple of its stride."""
    dims = tuple(int(n) for n in dims)
    strides = _check_strides(dims, strides)
    mask = np.zeros(dims, dtype=bool)
    mask[tuple(slice(None, None, s) for s in strides)] = True
    return mask


def decimate(f, strides):
    """The regular-mask anchors of f as a coarse cube of shape ceil(dims / strides)."""
    strides = _check_strides(f.shape, strides)
    return np.ascontiguousarray(f[tuple(slice(None, None, s) for s in strides)])


def sampling_ratio(mask):
    """mu = |Omega_bar| / |Omega|."""
    count = int(np.count_nonzero(mask))
    if count == 0:
        raise ValueError("mask samples no voxel")
    return mask.size / count


def infer_strides(mask):
    """Strides of a regular mask; ValueError if the mask is not regular."""
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise ValueError("mask samples no voxel")
    strides = []
    for axis in range(mask.ndim):
        other = tuple(a for a in range(mask.ndim) if a != axis)
        coords = np.flatnonzero(mask.any(axis=other))
        step = int(coords[1] - coords[0]) if len(coords) > 1 else mask.shape[axis]
        strides.append(max(step, 1))
    strides = tuple(strides)
    if not np.array_equal(mask, regular_mask(mask.shape, strides)):
        raise ValueError("mask is not a regular mask")
    return strides
