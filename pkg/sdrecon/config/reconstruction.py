"""Reconstruction experiments configuration"""

from .base import CN
from .base import _C as _BASE_C

_C = _BASE_C.clone()

# public alias
cfg = _C

_C.TASK = "reconstruction"

# ---------------------------------------------------------------------------- #
# Benchmark options
# ---------------------------------------------------------------------------- #
_C.BENCHMARK = CN()
# Generators to benchmark on
_C.BENCHMARK.GENERATORS = ("smooth", "shock", "oscillatory")
# Methods compared on every case. "LDMM" uses MODEL.LDMM.
_C.BENCHMARK.METHODS = ("NEAREST", "LDMM")
