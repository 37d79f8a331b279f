"""Separable natural cubic spline interpolation of decimated cubes"""

import numpy as np
from scipy.interpolate import CubicSpline


def spline_interpolate(decimated, strides, dims=None):
    """Interpolate the anchors f[::s1, ::s2(, ::s3)] to the full grid.

    One natural cubic spline pass per axis with stride > 1, coarse sample j at
    fine coordinate j * s. Voxels past the last anchor are extrapolated from
    the last spline piece.

    Args:
        decimated (np.ndarray): coarse cube of shape ceil(dims / strides)
        strides (tuple): decimation per axis
        dims (tuple, optional): target shape, default coarse dims * strides

    Returns:
        np.ndarray: full-size cube

    """
    result = np.asarray(decimated, dtype=np.float64)
    strides = tuple(int(s) for s in strides)
    if len(strides) != result.ndim or min(strides) < 1:
        raise ValueError("strides {} do not match a cube of shape {}".format(strides, result.shape))
    if dims is None:
        dims = tuple(n * s for n, s in zip(result.shape, strides))
    dims = tuple(int(n) for n in dims)
    expected = tuple(-(-n // s) for n, s in zip(dims, strides))
    if expected != result.shape:
        raise ValueError("decimated shape {} does not match ceil({} / {}) = {}".format(
            result.shape, dims, strides, expected))

    for axis, (s, size) in enumerate(zip(strides, dims)):
        if s == 1:
            continue
        n = result.shape[axis]
        if n < 2:
            raise ValueError("cubic spline needs 2 samples along axis {}, got {}".format(axis, n))
        anchors = np.arange(n, dtype=np.float64) * s
        spline = CubicSpline(anchors, result, axis=axis, bc_type="natural", extrapolate=True)
        result = spline(np.arange(size, dtype=np.float64))
    return np.ascontiguousarray(result)
