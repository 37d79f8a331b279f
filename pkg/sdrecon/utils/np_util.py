import random

import numpy as np


def set_random_seed(seed):
    if seed < 0:
        return
    random.seed(seed)
    np.random.seed(seed)


def make_rng(seed):
    """Seeded generator; every random draw in sdrecon goes through one of these."""
    return np.random.default_rng(int(seed) % (1 << 64))
