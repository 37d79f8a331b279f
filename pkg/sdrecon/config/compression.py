"""Compression experiments configuration"""

from .base import CN
from .base import _C as _BASE_C

_C = _BASE_C.clone()

# public alias
cfg = _C

_C.TASK = "compression"

# ---------------------------------------------------------------------------- #
# Compression budget
# ---------------------------------------------------------------------------- #
_C.COMPRESSION = CN()
# Stored reals as a fraction of the field size
_C.COMPRESSION.RATE = 0.1

_C.BENCHMARK = CN()
_C.BENCHMARK.GENERATORS = ("smooth", "shock", "oscillatory")
_C.BENCHMARK.METHODS = ("DCT", "DFT", "SVD", "LDMM")
