"""kNN affinity graph over the patch cloud

Notes:
    Neighbours are exact (k-d tree) and exclude the point itself. Equal
    distances are ordered by the lower ordinal, including across the k-th
    neighbour boundary and among duplicated patches.

"""

import logging

import numpy as np
from scipy import sparse
from scipy.spatial import cKDTree

from sdrecon.data.grid import extract_patches


class PatchCloud(object):
    """The patch set of a field: one point in R^d per voxel.

    Attributes:
        points (np.ndarray): (num_voxels, d)
        source_dims (tuple): shape of the field the patches come from
        patch_shape (PatchShape): patch window, or None for a bare point cloud

    """

    def __init__(self, points, source_dims=None, patch_shape=None):
        points = np.ascontiguousarray(points, dtype=np.float64)
        if points.ndim == 1:
            points = points[:, None]
        assert points.ndim == 2
        if not np.all(np.isfinite(points)):
            raise ValueError("patch cloud has non-finite entries")
        if source_dims is not None and int(np.prod(source_dims)) != len(points):
            raise ValueError("{} points for a field of shape {}".format(len(points), tuple(source_dims)))
        self.points = points
        self.source_dims = tuple(source_dims) if source_dims is not None else None
        self.patch_shape = patch_shape

    @classmethod
    def from_field(cls, f, shape):
        return cls(extract_patches(f, shape), f.shape, shape)

    def __len__(self):
        return len(self.points)

    @property
    def scale(self):
        """Bounding-box diagonal, an upper bound of the cloud diameter."""
        return float(np.linalg.norm(self.points.max(0) - self.points.min(0)))


class NeighborList(object):
    """k nearest neighbours per point, sorted by (distance, ordinal).

    Attributes:
        index (np.ndarray): (num_points, k) neighbour ordinals
        sqdist (np.ndarray): (num_points, k) squared distances
        scale (float): cloud diameter bound used by the zero-sigma fallback

    """

    def __init__(self, index, sqdist, scale=0.0):
        self.index = index
        self.sqdist = sqdist
        self.scale = scale

    @property
    def k(self):
        return self.index.shape[1]

    def __len__(self):
        return self.index.shape[0]


def _sort_rows(index, sqdist):
    rows = np.arange(index.shape[0])[:, None]
    order = np.lexsort((index, sqdist), axis=-1)
    return index[rows, order], sqdist[rows, order]


def knn(cloud, k, num_workers=1):
    """Exact k nearest neighbours of every point, self excluded.

    Args:
        cloud (PatchCloud): point cloud
        k (int): number of neighbours
        num_workers (int): threads for the tree queries, -1 for all cores

    Returns:
        NeighborList

    """
    points = cloud.points
    num_points = len(points)
    if not 0 < k < num_points:
        raise ValueError("k must be in [1, {}), got {}".format(num_points, k))

    tree = cKDTree(points)
    num_query = min(k + 2, num_points)
    dist, index = tree.query(points, k=num_query, workers=num_workers)
    dist = np.atleast_2d(dist)
    index = np.atleast_2d(index)

    # Drop the point itself, or the farthest candidate if duplicates pushed it out.
    is_self = index == np.arange(num_points)[:, None]
    no_self = ~is_self.any(1)
    is_self[no_self, -1] = True
    keep = ~is_self
    index = index[keep].reshape(num_points, num_query - 1)
    sqdist = np.square(dist[keep].reshape(num_points, num_query - 1))
    index, sqdist = _sort_rows(index, sqdist)

    nbr_index = index[:, :k].copy()
    nbr_sqdist = sqdist[:, :k].copy()
    if num_query - 1 > k:
        tied = np.flatnonzero(sqdist[:, k] == sqdist[:, k - 1])
        if tied.size > 0:
            _resolve_ties(points, tree, tied, nbr_index, nbr_sqdist, k)

    return NeighborList(nbr_index, nbr_sqdist, cloud.scale)


def _resolve_ties(points, tree, tied, nbr_index, nbr_sqdist, k):
    """Rows whose k-th distance is shared with an excluded candidate."""
    duplicate = tied[nbr_sqdist[tied, k - 1] == 0]
    if duplicate.size > 0:
        # Zero distance at the boundary: the whole neighbourhood is duplicates,
        # ordered by ordinal. Group identical patches instead of ball queries.
        _, group = np.unique(points, axis=0, return_inverse=True)
        group = group.ravel()
        order = np.argsort(group, kind="stable")
        starts = np.searchsorted(group[order], np.arange(group.max() + 1))
        for p in duplicate:
            start = starts[group[p]]
            members = order[start:start + k + 1]
            members = members[members != p][:k]
            nbr_index[p] = members
            nbr_sqdist[p] = 0.0

    for p in tied[nbr_sqdist[tied, k - 1] > 0]:
        radius = np.sqrt(nbr_sqdist[p, k - 1]) * (1.0 + 1e-9)
        candidates = np.asarray(tree.query_ball_point(points[p], radius), dtype=np.int64)
        candidates = candidates[candidates != p]
        cand_sqdist = np.square(points[candidates] - points[p]).sum(1)
        order = np.lexsort((candidates, cand_sqdist))[:k]
        nbr_index[p] = candidates[order]
        nbr_sqdist[p] = cand_sqdist[order]


def normalizing_factors(nbrs, r):
    """sigma(p): distance to the r-th nearest neighbour (1-based, self excluded).

    A zero distance (duplicated patches) falls back to the smallest positive
    neighbour distance, else to 1e-12 * (scale + 1).
    """
    if not 1 <= r <= nbrs.k:
        raise ValueError("sigma rank must be in [1, {}], got {}".format(nbrs.k, r))
    sigma = np.sqrt(nbrs.sqdist[:, r - 1])
    zero = np.flatnonzero(sigma <= 0)
    if zero.size > 0:
        dist = np.sqrt(nbrs.sqdist[zero])
        positive = np.where(dist > 0, dist, np.inf).min(1)
        fallback = 1e-12 * (nbrs.scale + 1.0)
        sigma[zero] = np.where(np.isfinite(positive), positive, fallback)
        logging.getLogger("sdrecon.graph").debug(
            "{} points with zero sigma, fallback applied".format(zero.size))
    return sigma


def gaussian_weights(cloud, nbrs, sigma):
    """w(p, q) = exp(-|p - q|^2 / (sigma(p) sigma(q))) on the kNN support.

    The support is symmetrized by union; the formula is symmetric so both
    directions carry the same value. Entries that underflow to 0 are dropped.

    Returns:
        scipy.sparse.csr_matrix: (num_points, num_points)

    """
    num_points = len(cloud)
    if np.any(sigma <= 0):
        raise ValueError("sigma must be positive")
    rows = np.repeat(np.arange(num_points), nbrs.k)
    cols = nbrs.index.ravel()
    values = np.exp(-nbrs.sqdist.ravel() / (sigma[rows] * sigma[cols]))
    weight = sparse.csr_matrix((values, (rows, cols)), shape=(num_points, num_points))
    weight = weight.maximum(weight.T).tocsr()
    weight.eliminate_zeros()
    weight.sort_indices()
    return weight


def local_dimension_estimate(cloud, ordinal, k, energy_threshold):
    """Number of principal components of the k-neighbourhood of a point needed
    to capture energy_threshold of its variance.

    The neighbourhood is the point and its k nearest neighbours, centered.
    A zero-variance neighbourhood has dimension 0.
    """
    points = cloud.points
    if not 0 < k < len(points):
        raise ValueError("k must be in [1, {}), got {}".format(len(points), k))
    sqdist = np.square(points - points[ordinal]).sum(1)
    sqdist[ordinal] = -1.0
    order = np.lexsort((np.arange(len(points)), sqdist))[:k + 1]
    hood = points[order]
    hood = hood - hood.mean(0)
    energy = np.square(np.linalg.svd(hood, compute_uv=False))
    total = energy.sum()
    if total <= 0 or energy[0] <= 1e-24 * max(1.0, np.square(points).sum()):
        return 0
    energy = np.where(energy > 1e-12 * energy[0], energy, 0.0)
    ratio = np.cumsum(energy) / energy.sum()
    return int(np.searchsorted(ratio, energy_threshold * (1.0 - 1e-12)) + 1)


def dimension_profile(cloud, ordinals, k, energy_threshold):
    """Histogram {dimension: count} of local dimensions over the given points."""
    dims = [local_dimension_estimate(cloud, int(p), k, energy_threshold) for p in ordinals]
    values, counts = np.unique(dims, return_counts=True)
    return {int(v): int(c) for v, c in zip(values, counts)}
