"""Build reconstruction and compression methods

Notes:
    When a new method is implemented, please provide a builder to build the method with config,
    and register it in _RECONSTRUCTION_BUILDERS or _COMPRESSION_BUILDERS.

    A reconstruction method is called as method(b, mask, reference=None) with the sampled values b
    in ordinal order, and returns (field, info).
    A compression method is called as method(cube) and returns (reconstruction, info).
    info is a dict with at least "iters" (outer iterations, 0 for direct methods).

"""

from sdrecon.config.base import _C as _BASE_C
from sdrecon.data.grid import PatchShape
from .ldmm import LDMM, initialize, ldmm_compress
from .svd import svd_compress
from .transforms import transform_compress


def build_ldmm(cfg, tensorboard_logger=None):
    # MODEL.LDMM is purged when another method is the configured MODEL.TYPE
    ldmm_cfg = cfg.MODEL.LDMM if "LDMM" in cfg.MODEL else _BASE_C.MODEL.LDMM
    patch_shape = PatchShape(ldmm_cfg.PATCH_SHAPE) if ldmm_cfg.PATCH_SHAPE else None
    return LDMM(patch_shape=patch_shape,
                num_neighbours=ldmm_cfg.NUM_NEIGHBOURS,
                sigma_rank=ldmm_cfg.SIGMA_RANK,
                max_iter=ldmm_cfg.MAX_ITER,
                tol=ldmm_cfg.TOL,
                init=ldmm_cfg.INIT,
                solver=cfg.SOLVER.TYPE,
                solver_tol=cfg.SOLVER.TOL,
                solver_max_iter=cfg.SOLVER.MAX_ITER,
                ridge=cfg.SOLVER.RIDGE,
                num_workers=cfg.NUM_WORKERS,
                log_period=cfg.LOG_PERIOD,
                tensorboard_logger=tensorboard_logger)


def _ldmm_reconstruction(cfg, tensorboard_logger=None):
    model = build_ldmm(cfg, tensorboard_logger)

    def method(b, mask, reference=None):
        field, report = model.reconstruct(b, mask, reference=reference)
        return field, {"iters": report.iterations, "report": report}

    return method


def _initial_field_reconstruction(strategy):
    # nearest/mean fills, or the DCT/DFT/spline interpolant of a regular mask
    def builder(cfg, tensorboard_logger=None):
        def method(b, mask, reference=None):
            return initialize(b, mask, strategy), {"iters": 0}
        return method
    return builder


def _ldmm_compression(cfg, tensorboard_logger=None):
    model = build_ldmm(cfg, tensorboard_logger)

    def method(cube):
        recon, rate, report = ldmm_compress(model, cube, cfg.COMPRESSION.RATE, seed=cfg.SAMPLING.SEED)
        return recon, {"iters": report.iterations, "rate": rate, "report": report}

    return method


def _transform_compression(name):
    def builder(cfg, tensorboard_logger=None):
        def method(cube):
            recon, rate = transform_compress(cube, name, cfg.COMPRESSION.RATE)
            return recon, {"iters": 0, "rate": rate}
        return method
    return builder


def _svd_compression(cfg, tensorboard_logger=None):
    def method(cube):
        recon, rate = svd_compress(cube, cfg.COMPRESSION.RATE)
        return recon, {"iters": 0, "rate": rate}
    return method


_RECONSTRUCTION_BUILDERS = {
    "LDMM": _ldmm_reconstruction,
    "NEAREST": _initial_field_reconstruction("nearest"),
    "MEAN": _initial_field_reconstruction("mean"),
    "DCT": _initial_field_reconstruction("dct"),
    "DFT": _initial_field_reconstruction("dft"),
    "SPLINE": _initial_field_reconstruction("spline"),
}

_COMPRESSION_BUILDERS = {
    "LDMM": _ldmm_compression,
    "DCT": _transform_compression("dct"),
    "DFT": _transform_compression("dft"),
    "SVD": _svd_compression,
}


def build_reconstruction_method(cfg, name=None, tensorboard_logger=None):
    name = name or cfg.MODEL.TYPE
    if name not in _RECONSTRUCTION_BUILDERS:
        raise ValueError("Unsupported reconstruction method: {}".format(name))
    return _RECONSTRUCTION_BUILDERS[name](cfg, tensorboard_logger)


def build_compression_method(cfg, name=None, tensorboard_logger=None):
    name = name or cfg.MODEL.TYPE
    if name not in _COMPRESSION_BUILDERS:
        raise ValueError("Unsupported compression method: {}".format(name))
    return _COMPRESSION_BUILDERS[name](cfg, tensorboard_logger)


def register_reconstruction_builder(name, builder):
    if name in _RECONSTRUCTION_BUILDERS:
        raise KeyError(
            "Duplicate keys for {:s} with {} and {}."
            "Solve key conflicts first!".format(name, _RECONSTRUCTION_BUILDERS[name], builder))
    _RECONSTRUCTION_BUILDERS[name] = builder


def register_compression_builder(name, builder):
    if name in _COMPRESSION_BUILDERS:
        raise KeyError(
            "Duplicate keys for {:s} with {} and {}."
            "Solve key conflicts first!".format(name, _COMPRESSION_BUILDERS[name], builder))
    _COMPRESSION_BUILDERS[name] = builder
