"""Weighted graph Laplacian over voxels

The patch affinity W_bar lives on patch anchors. Every patch element i moves
the whole graph by its offset, so the voxel-level weights are

    W_tilde(x + o_i, y + o_i) += W_bar(x, y)    for i in [0, d)

and the LDMM update of the unsampled voxels v solves

    (2 L11 + (mu - 1) Delta) v = (mu + 1) W12 b

with L = D - W_tilde partitioned into unsampled (1) and sampled (2) blocks and
Delta = diag(W12 1).

"""

import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from sdrecon.data.grid import translation_permutation
from sdrecon.data.sampling import sampling_ratio
from sdrecon.solver import get_solver

# Translations accumulated per partial matrix. Fixed so that the reduction
# order does not depend on the number of workers.
_CHUNK_SIZE = 4


class DisconnectedComponentError(ValueError):
    def __init__(self, message, components):
        super(DisconnectedComponentError, self).__init__(message)
        self.components = components


def _translated_chunk(coo, shape, dims, elements):
    rows, cols, values = [], [], []
    for i in elements:
        fwd = translation_permutation(i, shape, dims)
        rows.append(fwd[coo.row])
        cols.append(fwd[coo.col])
        values.append(coo.data)
    num_voxels = int(np.prod(dims))
    return sparse.csr_matrix(
        (np.concatenate(values), (np.concatenate(rows), np.concatenate(cols))),
        shape=(num_voxels, num_voxels))


def assemble_translated_weights(Wbar, shape, dims, num_workers=1):
    """Sum of the d simultaneous row/column translations of Wbar.

    Args:
        Wbar (scipy.sparse matrix): patch affinities over voxel anchors
        shape (PatchShape): patch window
        dims (tuple): field shape
        num_workers (int): threads assembling partial sums

    Returns:
        scipy.sparse.csr_matrix: W_tilde

    """
    dims = tuple(int(n) for n in dims)
    num_voxels = int(np.prod(dims))
    if Wbar.shape != (num_voxels, num_voxels):
        raise ValueError("weights of shape {} for a field of shape {}".format(Wbar.shape, dims))
    shape.check(dims)

    coo = sparse.coo_matrix(Wbar)
    coo.row = coo.row.astype(np.int64)
    coo.col = coo.col.astype(np.int64)
    chunks = [range(start, min(start + _CHUNK_SIZE, shape.d))
              for start in range(0, shape.d, _CHUNK_SIZE)]

    if num_workers == 1 or len(chunks) == 1:
        partials = [_translated_chunk(coo, shape, dims, c) for c in chunks]
    else:
        max_workers = None if num_workers < 0 else num_workers
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            partials = list(executor.map(lambda c: _translated_chunk(coo, shape, dims, c), chunks))

    Wtilde = partials[0]
    for partial in partials[1:]:
        Wtilde = Wtilde + partial
    # duplicate summation order is unspecified; restore exact symmetry
    Wtilde = (0.5 * (Wtilde + Wtilde.T)).tocsr()
    Wtilde.sum_duplicates()
    Wtilde.sort_indices()
    return Wtilde


def graph_laplacian(W):
    """L = D - W with D the diagonal of row sums."""
    W = sparse.csr_matrix(W)
    degree = np.asarray(W.sum(1)).ravel()
    return (sparse.diags(degree) - W).tocsr()


class WGLSystem(object):
    """Partitioned Euler-Lagrange system of one LDMM iteration.

    Attributes:
        L11 (csr_matrix): unsampled x unsampled block of D - W_tilde
        W12 (csr_matrix): unsampled x sampled block of W_tilde
        delta (np.ndarray): row sums of W12
        mu (float): |all voxels| / |sampled voxels|
        unsampled (np.ndarray): voxel ordinal of each block row
        sampled (np.ndarray): voxel ordinal of each block column of W12
        dims (tuple): field shape
        orphans (list): (size, first ordinal) of unsampled components with no
            path to a sampled voxel

    """

    def __init__(self, L11, W12, delta, mu, unsampled, sampled, dims, orphans=()):
        self.L11 = L11
        self.W12 = W12
        self.delta = delta
        self.mu = mu
        self.unsampled = unsampled
        self.sampled = sampled
        self.dims = dims
        self.orphans = list(orphans)

    @property
    def matrix(self):
        return (2.0 * self.L11 + sparse.diags((self.mu - 1.0) * self.delta)).tocsr()

    def rhs(self, b):
        b = np.asarray(b, dtype=np.float64).ravel()
        if len(b) != len(self.sampled):
            raise ValueError("{} sampled values for {} sampled voxels".format(len(b), len(self.sampled)))
        return (self.mu + 1.0) * self.W12.dot(b)

    def scatter(self, v, b):
        """Full field with v on the unsampled and b on the sampled voxels."""
        flat = np.empty(int(np.prod(self.dims)), dtype=np.float64)
        flat[self.unsampled] = v
        flat[self.sampled] = b
        return flat.reshape(self.dims)


def _orphan_components(Wtilde, mask_flat):
    num_components, labels = csgraph.connected_components(Wtilde, directed=False)
    has_sample = np.bincount(labels[mask_flat], minlength=num_components) > 0
    orphans = []
    for label in np.flatnonzero(~has_sample):
        members = np.flatnonzero(labels == label)
        orphans.append((len(members), int(members[0])))
    return orphans


def build_system(Wtilde, mask):
    mask_flat = np.asarray(mask, dtype=bool).ravel()
    num_voxels = mask_flat.size
    if Wtilde.shape != (num_voxels, num_voxels):
        raise ValueError("weights of shape {} for a mask of {} voxels".format(Wtilde.shape, num_voxels))
    count = int(np.count_nonzero(mask_flat))
    if count == 0:
        raise ValueError("mask samples no voxel")
    if count == num_voxels:
        raise ValueError("mask samples every voxel, nothing to solve")

    Wtilde = sparse.csr_matrix(Wtilde)
    unsampled = np.flatnonzero(~mask_flat)
    sampled = np.flatnonzero(mask_flat)
    L = graph_laplacian(Wtilde)
    L11 = L[unsampled][:, unsampled].tocsr()
    W12 = Wtilde[unsampled][:, sampled].tocsr()
    delta = np.asarray(W12.sum(1)).ravel()
    return WGLSystem(L11, W12, delta, sampling_ratio(mask_flat), unsampled, sampled,
                     tuple(np.shape(mask)), _orphan_components(Wtilde, mask_flat))


class SolveResult(object):
    def __init__(self, solution, iterations, residual):
        self.solution = solution
        self.iterations = iterations
        self.residual = residual


def solve_system(system, b, tol=1e-6, max_iters=2000, x0=None, ridge=False, method="CG"):
    """Solve for the unsampled values.

    Args:
        system (WGLSystem): partitioned system
        b (np.ndarray): sampled values, in ordinal order
        tol (float): relative residual
        max_iters (int): iteration cap of iterative solvers
        x0 (np.ndarray, optional): warm start
        ridge (bool): regularize orphan components instead of failing
        method (str): registered solver name

    Returns:
        SolveResult

    """
    logger = logging.getLogger("sdrecon.wgl")
    if system.orphans and not ridge:
        size, first = system.orphans[0]
        raise DisconnectedComponentError(
            "{} unsampled component(s) without a path to a sampled voxel; "
            "first has {} voxels starting at ordinal {}".format(len(system.orphans), size, first),
            system.orphans)

    A = system.matrix
    rhs = system.rhs(b)
    if ridge:
        trace = A.diagonal().sum()
        eps = 1e-8 * trace / A.shape[0] if trace > 0 else 1e-8
        A = (A + eps * sparse.identity(A.shape[0], format="csr")).tocsr()
        if system.orphans:
            logger.warning("ridge {:.3e} applied to {} orphan component(s)".format(eps, len(system.orphans)))

    solve = get_solver(method)
    v, iterations, residual = solve(A, rhs, tol=tol, max_iter=max_iters, x0=x0)
    return SolveResult(v, iterations, residual)


def el_residual(Wtilde, mask, f, mu):
    """max |2 sum_y w(x,y)(f(x)-f(y)) + (mu-1) sum_{y sampled} w(x,y)(f(x)-f(y))| over unsampled x."""
    coo = sparse.coo_matrix(Wtilde)
    mask_flat = np.asarray(mask, dtype=bool).ravel()
    f = np.asarray(f, dtype=np.float64).ravel()
    terms = coo.data * (f[coo.row] - f[coo.col])
    full = np.bincount(coo.row, weights=terms, minlength=len(f))
    to_sampled = np.bincount(coo.row, weights=terms * mask_flat[coo.col], minlength=len(f))
    value = (2.0 * full + (mu - 1.0) * to_sampled)[~mask_flat]
    return float(np.abs(value).max()) if value.size > 0 else 0.0


def wgl_energy(W, sampled, u, mu):
    """mu * sum_{p in S} sum_q w(p,q)(u(p)-u(q))^2 + sum_{p not in S} sum_q w(p,q)(u(p)-u(q))^2

    Args:
        W (scipy.sparse matrix): weights
        sampled (np.ndarray): boolean flags or ordinals of S
        u (np.ndarray): values on all points
        mu (float): weight of the sampled rows

    """
    coo = sparse.coo_matrix(W)
    u = np.asarray(u, dtype=np.float64).ravel()
    sampled = np.asarray(sampled)
    flags = np.zeros(len(u), dtype=bool)
    if sampled.dtype == bool:
        flags[:] = sampled.ravel()
    else:
        flags[sampled] = True
    terms = coo.data * np.square(u[coo.row] - u[coo.col])
    rows = np.bincount(coo.row, weights=terms, minlength=len(u))
    return float(mu * rows[flags].sum() + rows[~flags].sum())
