"""Basic experiments configuration

For different tasks, a specific configuration might be created by importing this basic config.

"""

from yacs.config import CfgNode as CN

# -----------------------------------------------------------------------------
# Config definition
# -----------------------------------------------------------------------------
_C = CN()

# Overwritten by different tasks
_C.TASK = ""

# -----------------------------------------------------------------------------
# INPUT (the reference field)
# -----------------------------------------------------------------------------
_C.INPUT = CN()

# Path to a field file (.sdf). If empty, a synthetic field is generated.
_C.INPUT.FIELD = ""

_C.INPUT.GENERATOR = CN()
# One of "smooth", "shock", "oscillatory", "checkerboard", "constant"
_C.INPUT.GENERATOR.TYPE = "smooth"
_C.INPUT.GENERATOR.DIMS = (128, 128)
_C.INPUT.GENERATOR.SEED = 0
# Seeds looped over by the benchmark
_C.INPUT.GENERATOR.SEEDS = (0, 1, 2, 3, 4)

_C.INPUT.GENERATOR.smooth = CN()
_C.INPUT.GENERATOR.smooth.num_modes = 8
_C.INPUT.GENERATOR.smooth.cutoff = 6

_C.INPUT.GENERATOR.shock = CN()
_C.INPUT.GENERATOR.shock.jump = 1.0

_C.INPUT.GENERATOR.oscillatory = CN()
_C.INPUT.GENERATOR.oscillatory.wave_number = 6.0

_C.INPUT.GENERATOR.checkerboard = CN()
_C.INPUT.GENERATOR.checkerboard.num_tiles = 7
_C.INPUT.GENERATOR.checkerboard.blur = 1.0

_C.INPUT.GENERATOR.constant = CN()
_C.INPUT.GENERATOR.constant.value = 1.0

# -----------------------------------------------------------------------------
# Sampling
# -----------------------------------------------------------------------------
_C.SAMPLING = CN()
# "random" or "regular"
_C.SAMPLING.TYPE = "random"
_C.SAMPLING.RATE = 0.1
_C.SAMPLING.STRIDES = (4, 4)
_C.SAMPLING.SEED = 0

# -----------------------------------------------------------------------------
# Reconstruction method
# -----------------------------------------------------------------------------
_C.MODEL = CN()
# One of "LDMM", "DCT", "DFT", "SPLINE", "NEAREST", "SVD"
_C.MODEL.TYPE = "LDMM"

_C.MODEL.LDMM = CN()
# Empty means the patch-size table default for the field and sampling
_C.MODEL.LDMM.PATCH_SHAPE = ()
_C.MODEL.LDMM.NUM_NEIGHBOURS = 20
# sigma(p) is the distance to this neighbour
_C.MODEL.LDMM.SIGMA_RANK = 10
# 0 means 10 for nearest/mean initialization and 3 for interpolant refinement
_C.MODEL.LDMM.MAX_ITER = 0
# Relative L2 change of the field
_C.MODEL.LDMM.TOL = 1e-3
# "nearest", "mean", "dct", "dft" or "spline"
_C.MODEL.LDMM.INIT = "nearest"

# ---------------------------------------------------------------------------- #
# Solver (linear system of each LDMM iteration)
# ---------------------------------------------------------------------------- #
_C.SOLVER = CN()
# "CG" (Jacobi-preconditioned conjugate gradient) or "DIRECT"
_C.SOLVER.TYPE = "CG"
_C.SOLVER.TOL = 1e-6
_C.SOLVER.MAX_ITER = 2000
# Regularize unsampled components that have no path to a sampled voxel
_C.SOLVER.RIDGE = False

# ---------------------------------------------------------------------------- #
# Misc options
# ---------------------------------------------------------------------------- #
# Threads used for kNN queries and weight assembly, -1 for every core
_C.NUM_WORKERS = -1

_C.LOG_PERIOD = 1

# if set to @, the filename of config will be used by default
_C.OUTPUT_DIR = "@"

# -1 means not to set explicitly.
_C.RNG_SEED = -1
