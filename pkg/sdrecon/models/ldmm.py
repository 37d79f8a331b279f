"""Low dimensional manifold model (LDMM) reconstruction

Each outer iteration rebuilds the patch graph from the current field and
replaces the unsampled voxels with the weighted graph Laplacian solution:

    1. patch cloud of f^k
    2. kNN Gaussian weights with self-tuning bandwidth
    3. translated voxel weights W_tilde
    4. solve (2 L11 + (mu - 1) Delta) v = (mu + 1) W12 b

Sampled voxels always hold b exactly.

"""

import logging
import time

import numpy as np
from scipy.spatial import cKDTree

from sdrecon.data.grid import PatchShape, as_mask, restrict
from sdrecon.data.sampling import infer_strides, random_mask
from sdrecon.graph.patch_graph import PatchCloud, knn, normalizing_factors, gaussian_weights
from sdrecon.graph.wgl import (assemble_translated_weights, build_system, solve_system,
                               DisconnectedComponentError)
from sdrecon.solver import get_solver
from sdrecon.solver.cg import ConvergenceError
from sdrecon.utils.metric_logger import MetricLogger
from .metric import error_norms
from .spline import spline_interpolate
from .transforms import spectral_interpolate

# Patch sizes per dataset and sampling ("random" covers the 5% and 10% rates)
PATCH_SIZE_TABLE = {
    "2d_lattice": {"random": (6, 6), "4x4": (6, 6)},
    "2d_plasma_distribution": {"random": (16, 16), "4x4": (16, 16)},
    "2d_vortex": {"random": (6, 6), "4x4": (6, 6)},
    "3d_plasma_magnetic": {"random": (6, 6, 1), "4x4x1": (6, 6, 1), "2x2x2": (6, 6, 4)},
    "3d_lattice": {"random": (4, 4, 4), "4x4x1": (4, 4, 4), "2x2x2": (4, 4, 4)},
    "3d_plasma_distribution": {"random": (6, 6, 4), "4x4x1": (6, 6, 4), "2x2x2": (6, 6, 4)},
}

# Below this many voxels along the third axis patches stay flat
_THIN_AXIS = 16

_INIT_STRATEGIES = ("nearest", "mean", "provided", "dct", "dft", "spline")


def default_patch_shape(dims, sampling="random"):
    """Patch shape for a field of shape dims.

    Args:
        dims (tuple): field shape
        sampling (str or tuple): "random" or the strides of a regular mask

    Returns:
        PatchShape

    """
    dims = tuple(int(n) for n in dims)
    if len(dims) == 2:
        sizes = (6, 6)
    else:
        strides = None if sampling == "random" else tuple(int(s) for s in sampling)
        if strides is not None and all(s > 1 for s in strides):
            # volumetric decimation, keep sampled voxels inside every patch
            sizes = (6, 6, 4)
        elif dims[2] < _THIN_AXIS:
            sizes = (6, 6, 1)
        else:
            sizes = (6, 6, 4)
    return PatchShape(tuple(min(s, n) for s, n in zip(sizes, dims)))


def _nearest_fill(b, mask):
    sampled = np.argwhere(mask)
    unsampled = np.argwhere(~mask)
    tree = cKDTree(sampled)
    k = min(len(sampled), 16)
    dist, index = tree.query(unsampled, k=k)
    dist = dist.reshape(len(unsampled), k)
    index = index.reshape(len(unsampled), k)
    # ties go to the lower ordinal, which is the lower tree index
    tied = dist == dist[:, :1]
    choice = np.where(tied, index, len(sampled)).min(1)
    if k < len(sampled):
        for row in np.flatnonzero(tied.all(1)):
            ball = tree.query_ball_point(unsampled[row], dist[row, 0] * (1.0 + 1e-9))
            choice[row] = min(ball)
    field = np.empty(mask.shape, dtype=np.float64)
    field[mask] = b
    field[~mask] = b[choice]
    return field


def interpolant_field(b, mask, method):
    """DCT/DFT/spline interpolant of the sampled values of a regular mask."""
    strides = infer_strides(mask)
    coarse_dims = tuple(-(-n // s) for n, s in zip(mask.shape, strides))
    decimated = np.asarray(b, dtype=np.float64).reshape(coarse_dims)
    if method == "spline":
        return spline_interpolate(decimated, strides, mask.shape)
    return spectral_interpolate(decimated, strides, method, mask.shape)


def initialize(b, mask, strategy="nearest", provided=None):
    """Initial field f^0 that equals b on the sampled voxels.

    Args:
        b (np.ndarray): sampled values in ordinal order
        mask (np.ndarray): boolean sample mask
        strategy (str): "nearest", "mean", "provided", or an interpolant
            ("dct", "dft", "spline") for regular masks
        provided (np.ndarray, optional): initial field for "provided"

    Returns:
        np.ndarray: f^0

    """
    mask = as_mask(mask)
    b = np.asarray(b, dtype=np.float64).ravel()
    count = int(np.count_nonzero(mask))
    if count == 0:
        raise ValueError("mask samples no voxel")
    if len(b) != count:
        raise ValueError("{} sampled values for {} sampled voxels".format(len(b), count))
    if strategy not in _INIT_STRATEGIES:
        raise ValueError("unknown init strategy '{}', expected one of {}".format(strategy, _INIT_STRATEGIES))

    if count == mask.size:
        return b.reshape(mask.shape).copy()

    if strategy == "nearest":
        return _nearest_fill(b, mask)

    if strategy == "mean":
        field = np.full(mask.shape, b.mean())
        field[mask] = b
        return field

    if strategy == "provided":
        if provided is None:
            raise ValueError("init strategy 'provided' needs an initial field")
        field = np.array(provided, dtype=np.float64)
        if field.shape != mask.shape:
            raise ValueError("initial field shape {} does not match mask shape {}".format(field.shape, mask.shape))
    else:
        field = interpolant_field(b, mask, strategy)

    scale = max(1.0, float(np.abs(b).max()))
    if not np.allclose(field[mask], b, rtol=0.0, atol=1e-8 * scale):
        bad = np.flatnonzero(~np.isclose(field[mask], b, rtol=0.0, atol=1e-8 * scale))[0]
        raise ValueError("initial field disagrees with the samples at sampled voxel {}".format(bad))
    field[mask] = b
    return field


class IterationRecord(object):
    def __init__(self, iteration, change, cg_iters, residual, seconds, psnr=None):
        self.iteration = iteration
        self.change = change
        self.cg_iters = cg_iters
        self.residual = residual
        self.seconds = seconds
        self.psnr = psnr


class ReconstructionReport(object):
    """Per-iteration records of one reconstruction, numbered from 1."""

    def __init__(self, initial_psnr=None):
        self.initial_psnr = initial_psnr
        self.records = []
        self.field = None

    def append(self, record):
        assert record.iteration == len(self.records) + 1
        self.records.append(record)

    @property
    def iterations(self):
        return len(self.records)

    @property
    def final_psnr(self):
        if not self.records:
            return self.initial_psnr
        return self.records[-1].psnr

    @property
    def seconds(self):
        return sum(r.seconds for r in self.records)


def relative_change(new, old):
    norm = np.linalg.norm(old)
    diff = np.linalg.norm(new - old)
    return float(diff / norm) if norm > 0 else float(diff)


class LDMM(object):
    """LDMM reconstruction from partial samples.

    Args:
        patch_shape (PatchShape, optional): default from default_patch_shape
        num_neighbours (int): k of the kNN graph
        sigma_rank (int): sigma(p) is the distance to this neighbour
        max_iter (int): outer iterations, 0 for 10 (nearest/mean init) or 3
            (interpolant refinement)
        tol (float): stop when the relative field change drops below it
        init (str): initialization strategy, see initialize
        solver (str): registered linear solver
        solver_tol (float): relative residual of the linear solve
        solver_max_iter (int): iteration cap of the linear solve
        ridge (bool): regularize unsampled components cut off from samples
        num_workers (int): threads for kNN and assembly, -1 for every core
        log_period (int): log every log_period iterations
        tensorboard_logger (TensorboardLogger, optional): convergence curves

    """

    def __init__(self,
                 patch_shape=None,
                 num_neighbours=20,
                 sigma_rank=10,
                 max_iter=0,
                 tol=1e-3,
                 init="nearest",
                 solver="CG",
                 solver_tol=1e-6,
                 solver_max_iter=2000,
                 ridge=False,
                 num_workers=-1,
                 log_period=1,
                 tensorboard_logger=None):
        if tol <= 0 or solver_tol <= 0:
            raise ValueError("tolerances must be positive")
        if init not in _INIT_STRATEGIES:
            raise ValueError("unknown init strategy '{}', expected one of {}".format(init, _INIT_STRATEGIES))
        get_solver(solver)
        self.patch_shape = patch_shape
        self.num_neighbours = num_neighbours
        self.sigma_rank = sigma_rank
        self.max_iter = max_iter
        self.tol = tol
        self.init = init
        self.solver = solver
        self.solver_tol = solver_tol
        self.solver_max_iter = solver_max_iter
        self.ridge = ridge
        self.num_workers = num_workers
        self.log_period = log_period
        self.tensorboard_logger = tensorboard_logger

    def resolve_patch_shape(self, mask):
        if self.patch_shape is not None:
            shape = self.patch_shape
        else:
            try:
                sampling = infer_strides(mask)
            except ValueError:
                sampling = "random"
            shape = default_patch_shape(mask.shape, sampling)
        shape.check(mask.shape)
        return shape

    def resolve_max_iter(self):
        if self.max_iter > 0:
            return self.max_iter
        return 10 if self.init in ("nearest", "mean") else 3

    def translated_weights(self, field, patch_shape=None):
        """W_tilde of the patch graph of field."""
        shape = patch_shape or self.resolve_patch_shape(np.ones(field.shape, dtype=bool))
        cloud = PatchCloud.from_field(field, shape)
        k = min(self.num_neighbours, len(cloud) - 1)
        nbrs = knn(cloud, k, num_workers=self.num_workers)
        sigma = normalizing_factors(nbrs, min(self.sigma_rank, k))
        Wbar = gaussian_weights(cloud, nbrs, sigma)
        return assemble_translated_weights(Wbar, shape, field.shape, num_workers=self.num_workers)

    def iterate_once(self, field, b, mask, patch_shape=None):
        """One manifold update.

        Returns:
            np.ndarray: f^{k+1}
            tuple: (cg iterations, relative residual)

        """
        mask = as_mask(mask, field.shape)
        shape = patch_shape or self.resolve_patch_shape(mask)
        Wtilde = self.translated_weights(field, shape)
        system = build_system(Wtilde, mask)
        result = solve_system(system, b,
                              tol=self.solver_tol,
                              max_iters=self.solver_max_iter,
                              x0=field.ravel()[system.unsampled],
                              ridge=self.ridge,
                              method=self.solver)
        return system.scatter(result.solution, b), (result.iterations, result.residual)

    def reconstruct(self, b, mask, reference=None, init_field=None):
        """Reconstruct a field from its samples.

        Args:
            b (np.ndarray): sampled values in ordinal order
            mask (np.ndarray): boolean sample mask
            reference (np.ndarray, optional): ground truth, enables psnr
            init_field (np.ndarray, optional): initial field, implies
                the "provided" strategy

        Returns:
            np.ndarray: reconstruction
            ReconstructionReport

        """
        logger = logging.getLogger("sdrecon.ldmm")
        mask = as_mask(mask)
        b = np.asarray(b, dtype=np.float64).ravel()
        strategy = "provided" if init_field is not None else self.init
        field = initialize(b, mask, strategy, provided=init_field)

        def psnr(f):
            return error_norms(reference, f).psnr if reference is not None else None

        report = ReconstructionReport(initial_psnr=psnr(field))
        if np.all(mask):
            report.field = field
            return field, report

        shape = self.resolve_patch_shape(mask)
        max_iter = self.resolve_max_iter()
        logger.info("LDMM: patch {}, k={}, sigma rank {}, init {}, at most {} iterations".format(
            shape, self.num_neighbours, self.sigma_rank, strategy, max_iter))

        meters = MetricLogger(delimiter="  ")
        for iteration in range(1, max_iter + 1):
            tic = time.time()
            try:
                new_field, (cg_iters, residual) = self.iterate_once(field, b, mask, shape)
            except (ConvergenceError, DisconnectedComponentError) as e:
                raise RuntimeError("LDMM iteration {}: {}".format(iteration, e)) from e
            change = relative_change(new_field, field)
            field = new_field
            record = IterationRecord(iteration, change, cg_iters, residual, time.time() - tic, psnr(field))
            report.append(record)

            meters.update(change=change, cg_iters=cg_iters, residual=residual, time=record.seconds)
            if record.psnr is not None:
                meters.update(psnr=record.psnr)
            if iteration % self.log_period == 0 or change < self.tol:
                logger.info(meters.delimiter.join(["iter: {:4d}".format(iteration), str(meters)]))
            if self.tensorboard_logger is not None:
                self.tensorboard_logger.add_scalars(meters.meters, iteration, prefix="ldmm")
            if change < self.tol:
                break

        if report.initial_psnr is not None and report.final_psnr < report.initial_psnr:
            logger.warning("LDMM ({} init) lowered PSNR from {:.2f} to {:.2f} dB".format(
                strategy, report.initial_psnr, report.final_psnr))
        report.field = field
        return field, report


def ldmm_compress(model, cube, rate, seed=0, reference=None):
    """Store a seeded random subset of rate * voxels and reconstruct with LDMM.

    Returns:
        np.ndarray: reconstruction
        float: achieved rate
        ReconstructionReport

    """
    mask = random_mask(cube.shape, rate, seed)
    recon, report = model.reconstruct(restrict(cube, mask), mask, reference=reference)
    return recon, np.count_nonzero(mask) / float(cube.size), report
