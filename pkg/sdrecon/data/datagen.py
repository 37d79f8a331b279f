"""Synthetic fields

Stand-ins for simulation outputs, one per patch-manifold regime:
    smooth        locally linear patches (low dimensional)
    shock         two smooth regions across a moving interface
    oscillatory   a(x) cos(theta(x)) textures
    checkerboard  blurred tiles around a bright source, lattice-like geometry

All generators are deterministic per (dims, seed).

"""

import numpy as np
from scipy import fft as sp_fft
from scipy import ndimage

from sdrecon.utils.np_util import make_rng


def _coords(dims):
    return np.meshgrid(*[np.arange(n, dtype=np.float64) for n in dims], indexing="ij")


def smooth_field(dims, seed, num_modes=8, cutoff=6, amplitude=1.0, offset=0.0):
    """Sum of num_modes low-frequency cosines of the DCT-II basis.

    Every mode has frequency index below cutoff along each axis, so the DCT
    spectrum vanishes above the cutoff.
    """
    dims = tuple(int(n) for n in dims)
    rng = make_rng(seed)
    coef = np.zeros(dims)
    cutoffs = [max(1, min(cutoff, n)) for n in dims]
    num_voxels = float(np.prod(dims))
    for _ in range(num_modes):
        freq = tuple(int(rng.integers(0, c)) for c in cutoffs)
        # freq may repeat; amplitudes then add up
        coef[freq] += rng.normal() * np.sqrt(num_voxels) / (1.0 + np.sum(freq))
    field = sp_fft.idctn(coef * amplitude, type=2, norm="ortho")
    return field + offset


def _unit(field):
    scale = np.max(np.abs(field))
    return field / scale if scale > 0 else field


def interface_level(dims, seed, wobble=0.1):
    """Signed distance-like level set of a seeded smooth interface.

    Negative on one side, positive on the other. The interface is a plane
    through the center with a seeded normal, bent by a low-frequency cosine.
    """
    dims = tuple(int(n) for n in dims)
    rng = make_rng(seed)
    normal = rng.normal(size=len(dims))
    normal /= np.linalg.norm(normal)
    coords = _coords(dims)
    center = [(n - 1) / 2.0 for n in dims]
    level = sum(w * (c - m) for w, c, m in zip(normal, coords, center))
    phase = rng.uniform(0, 2 * np.pi)
    tangent = coords[-1] if abs(normal[-1]) < 0.9 else coords[0]
    span = float(max(dims))
    level += wobble * span * np.cos(2 * np.pi * tangent / span + phase) / (2 * np.pi)
    return level


def shock_field(dims, seed, jump=1.0, amplitude=1.0):
    """Two smooth fields joined across a smooth interface with a jump.

    With jump=0 the result is smooth_field(dims, seed).
    """
    base = smooth_field(dims, seed, amplitude=amplitude)
    if jump == 0:
        return base
    other = _unit(smooth_field(dims, seed + 1))
    level = interface_level(dims, seed + 2)
    return base + np.where(level >= 0, jump * (1.0 + 0.5 * other), 0.0)


def oscillatory_field(dims, seed, wave_number=6.0, amplitude=1.0, modulation=0.3, warp=1.0):
    """a(x) cos(theta(x)) with smooth seeded a and theta.

    a = amplitude * (1 + modulation * s1) with s1 a unit smooth field, and theta
    a plane wave of wave_number periods across the grid plus warp * s2. With
    modulation=0 and warp=0 the output is a pure plane-wave cosine.
    """
    dims = tuple(int(n) for n in dims)
    rng = make_rng(seed)
    direction = rng.normal(size=len(dims))
    direction /= np.linalg.norm(direction)
    coords = _coords(dims)
    span = float(max(dims))
    theta = 2 * np.pi * wave_number * sum(w * c for w, c in zip(direction, coords)) / span
    if warp:
        theta = theta + warp * np.pi * _unit(smooth_field(dims, seed + 1, cutoff=3))
    a = amplitude * np.ones(dims)
    if modulation:
        a = a * (1.0 + modulation * _unit(smooth_field(dims, seed + 2, cutoff=3)))
    return a * np.cos(theta)


def checkerboard_tiles(dims, seed, num_tiles=7):
    """Piecewise-constant tile field before blurring.

    Tiles alternate between absorbing (low) and scattering (high) values with a
    small seeded jitter; the central tile is a bright source of value 1.
    """
    dims = tuple(int(n) for n in dims)
    rng = make_rng(seed)
    sizes = [int(np.ceil(n / float(num_tiles))) for n in dims]
    tile_index = np.meshgrid(*[np.arange(n) // s for n, s in zip(dims, sizes)], indexing="ij")
    grid = tuple([num_tiles] * len(dims))
    parity = np.indices(grid).sum(0) % 2
    tile_values = np.where(parity == 0,
                           0.5 + 0.1 * rng.uniform(size=grid),
                           0.05 + 0.05 * rng.uniform(size=grid))
    tile_values[tuple([num_tiles // 2] * len(dims))] = 1.0
    return tile_values[tuple(tile_index)]


def checkerboard_field(dims, seed, num_tiles=7, blur=1.0):
    tiles = checkerboard_tiles(dims, seed, num_tiles)
    if blur > 0:
        return ndimage.gaussian_filter(tiles, sigma=blur, mode="wrap")
    return tiles


def constant_field(dims, seed=0, value=1.0):
    return np.full(tuple(int(n) for n in dims), float(value))


_FIELD_GENERATORS = {
    "smooth": smooth_field,
    "shock": shock_field,
    "oscillatory": oscillatory_field,
    "checkerboard": checkerboard_field,
    "constant": constant_field,
}


def generate_field(kind, dims, seed, **kwargs):
    if kind not in _FIELD_GENERATORS:
        raise ValueError("unknown field kind '{}', expected one of {}".format(
            kind, sorted(_FIELD_GENERATORS)))
    return _FIELD_GENERATORS[kind](dims, seed, **kwargs)


def register_field_generator(name, generator):
    if name in _FIELD_GENERATORS:
        raise KeyError(
            "Duplicate keys for {:s} with {} and {}."
            "Solve key conflicts first!".format(name, _FIELD_GENERATORS[name], generator))
    _FIELD_GENERATORS[name] = generator
