"""Truncated SVD compression of 2D fields

A rank-r approximation of an m x n matrix stores r * (m + n + 1) reals.

"""

import numpy as np
from scipy import linalg


def svd_rank(shape, rate):
    """Largest rank whose storage fits in rate * m * n reals."""
    m, n = shape
    budget = int(np.floor(rate * m * n))
    return min(budget // (m + n + 1), min(m, n))


def svd_truncate(matrix, rank):
    """Best rank-r approximation.

    A constant matrix c is the exact rank-1 product of the factors c * 1 and
    1, which multiply back without roundoff.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError("SVD compression needs a 2D field, got shape {}".format(matrix.shape))
    if not 1 <= rank <= min(matrix.shape):
        raise ValueError("rank must be in [1, {}], got {}".format(min(matrix.shape), rank))
    lo, hi = matrix.min(), matrix.max()
    if lo == hi:
        return np.outer(np.full(matrix.shape[0], lo), np.ones(matrix.shape[1]))
    u, s, vt = linalg.svd(matrix, full_matrices=False)
    return (u[:, :rank] * s[:rank]).dot(vt[:rank])


def svd_compress(matrix, rate):
    """Truncated SVD within a budget of rate * m * n stored reals.

    A rate of 1 or more stores the raw matrix, which is cheaper than any
    full-rank factorization.

    Returns:
        np.ndarray: reconstruction
        float: achieved rate

    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError("SVD compression needs a 2D field, got shape {}".format(matrix.shape))
    if rate <= 0:
        raise ValueError("budget rate must be positive, got {}".format(rate))
    if rate >= 1.0:
        return matrix.copy(), 1.0
    m, n = matrix.shape
    rank = svd_rank(matrix.shape, rate)
    if rank < 1:
        raise ValueError("budget of {} reals is below rank-1 storage {}".format(
            int(np.floor(rate * m * n)), m + n + 1))
    if matrix.min() == matrix.max():
        # rank 1 is already exact
        rank = 1
    return svd_truncate(matrix, rank), rank * (m + n + 1) / float(m * n)
