"""Build the reference field and the sample mask from config"""

from sdrecon.utils.io import read_field
from .datagen import generate_field
from .grid import as_cube
from .sampling import random_mask, regular_mask


def generator_options(cfg, kind):
    # per-kind options are purged unless kind is INPUT.GENERATOR.TYPE
    options = cfg.INPUT.GENERATOR.get(kind, None)
    return dict(options) if options is not None else {}


def build_field(cfg, kind=None, seed=None):
    """Field from INPUT.FIELD, else from the configured generator.

    kind and seed override INPUT.GENERATOR.TYPE and SEED.
    """
    if cfg.INPUT.FIELD and kind is None:
        return as_cube(read_field(cfg.INPUT.FIELD))
    kind = kind or cfg.INPUT.GENERATOR.TYPE
    seed = cfg.INPUT.GENERATOR.SEED if seed is None else seed
    field = generate_field(kind, cfg.INPUT.GENERATOR.DIMS, seed, **generator_options(cfg, kind))
    return as_cube(field)


def build_mask(cfg, dims, seed=None):
    sampling = cfg.SAMPLING
    if sampling.TYPE == "random":
        seed = sampling.SEED if seed is None else seed
        return random_mask(dims, sampling.RATE, seed)
    elif sampling.TYPE == "regular":
        strides = tuple(sampling.STRIDES)
        if len(strides) != len(dims):
            raise ValueError("SAMPLING.STRIDES {} do not match dims {}".format(strides, tuple(dims)))
        return regular_mask(dims, strides)
    else:
        raise ValueError("Unsupported type of sampling: {}".format(sampling.TYPE))


def mask_seed(cfg, case_seed):
    """Mask seed of a benchmark case, decorrelated from the field seed."""
    return int(cfg.SAMPLING.SEED) * 1000003 + int(case_seed)
