"""Dense fields on 2D/3D grids and the patch translation algebra

A field (the data cube f) is a C-ordered float64 ndarray. C order is the
lexicographic order used everywhere: the first coordinate is the most
significant and the last one varies fastest. A sample mask is a boolean
ndarray of the same shape.

Patches are anchored at their lexicographically-first corner and wrap around
the grid (periodic padding), so every translation is a permutation of voxels.
Element i of the patch at x (0-based) is f(translate(x, i)); the 1-based
element i of the derivation corresponds to translate(x, i - 1).

"""

import numpy as np


def as_cube(values):
    """Validate a field and return it as a C-ordered float64 array.

    Args:
        values (array-like): 2D or 3D real values

    Returns:
        np.ndarray: the field

    """
    cube = np.ascontiguousarray(values, dtype=np.float64)
    if cube.ndim not in (2, 3):
        raise ValueError("field must be 2D or 3D, got shape {}".format(cube.shape))
    if cube.size == 0:
        raise ValueError("field is empty")
    if not np.all(np.isfinite(cube)):
        bad = np.flatnonzero(~np.isfinite(cube))[0]
        raise ValueError("non-finite value at voxel ordinal {}".format(bad))
    return cube


def as_mask(flags, dims=None):
    mask = np.ascontiguousarray(flags, dtype=bool)
    if mask.ndim not in (2, 3):
        raise ValueError("mask must be 2D or 3D, got shape {}".format(mask.shape))
    if dims is not None and tuple(mask.shape) != tuple(dims):
        raise ValueError("mask shape {} does not match field shape {}".format(mask.shape, tuple(dims)))
    return mask


class PatchShape(object):
    """Size of the patch window, (s1, s2) or (s1, s2, s3)."""

    def __init__(self, sizes):
        sizes = tuple(int(s) for s in sizes)
        if len(sizes) not in (2, 3) or min(sizes) < 1:
            raise ValueError("invalid patch sizes {}".format(sizes))
        self.sizes = sizes

    @property
    def d(self):
        return int(np.prod(self.sizes))

    @property
    def ndim(self):
        return len(self.sizes)

    def offsets(self, i):
        """Lexicographic decode of patch element i into per-axis offsets."""
        if not 0 <= i < self.d:
            raise IndexError("patch element {} out of range [0, {})".format(i, self.d))
        return tuple(int(o) for o in np.unravel_index(i, self.sizes))

    def check(self, dims):
        dims = tuple(dims)
        if len(dims) != self.ndim:
            raise ValueError("patch {} and field {} differ in dimension".format(self.sizes, dims))
        if any(s > n for s, n in zip(self.sizes, dims)):
            raise ValueError("patch {} does not fit field {}".format(self.sizes, dims))

    @classmethod
    def parse(cls, text):
        """Parse "6x6" or "6x6x4"."""
        try:
            return cls([int(s) for s in text.lower().split("x")])
        except ValueError:
            raise ValueError("invalid patch shape '{}'".format(text))

    def __eq__(self, other):
        return isinstance(other, PatchShape) and self.sizes == other.sizes

    def __hash__(self):
        return hash(self.sizes)

    def __repr__(self):
        return "PatchShape({})".format("x".join(str(s) for s in self.sizes))


def _check_index(x, dims):
    if len(x) != len(dims):
        raise IndexError("index {} does not match dims {}".format(tuple(x), tuple(dims)))
    for c, n in zip(x, dims):
        if not 0 <= c < n:
            raise IndexError("index {} out of range for dims {}".format(tuple(x), tuple(dims)))


def lex_encode(x, dims):
    _check_index(x, dims)
    return int(np.ravel_multi_index(tuple(x), tuple(dims)))


def lex_decode(ordinal, dims):
    size = int(np.prod(dims))
    if not 0 <= ordinal < size:
        raise IndexError("ordinal {} out of range [0, {})".format(ordinal, size))
    return tuple(int(c) for c in np.unravel_index(ordinal, tuple(dims)))


def translate(x, j, shape, dims):
    """The voxel holding element j of the patch anchored at x."""
    _check_index(x, dims)
    offsets = shape.offsets(j)
    return tuple((c + o) % n for c, o, n in zip(x, offsets, dims))


def extract_patch(f, x, shape):
    shape.check(f.shape)
    return np.array([f[translate(x, i, shape, f.shape)] for i in range(shape.d)])


def shift_field(f, i, shape):
    """P_i f: output(x) = f(translate(x, i))."""
    offsets = shape.offsets(i)
    return np.roll(f, [-o for o in offsets], axis=tuple(range(f.ndim)))


def adjoint_shift(f, i, shape):
    """P_i^* f = P_i^{-1} f: shift by the negated offsets."""
    offsets = shape.offsets(i)
    return np.roll(f, list(offsets), axis=tuple(range(f.ndim)))


def extract_patches(f, shape):
    """All patches of f, one row per voxel in lexicographic order.

    Returns:
        np.ndarray: (num_voxels, d)

    """
    shape.check(f.shape)
    patches = np.empty((f.size, shape.d), dtype=np.float64)
    for i in range(shape.d):
        patches[:, i] = shift_field(f, i, shape).ravel()
    return patches


def translation_permutation(i, shape, dims):
    """Ordinal map p with p[x] = lex_encode(translate(x, i))."""
    ordinals = np.arange(int(np.prod(dims)), dtype=np.int64).reshape(dims)
    return shift_field(ordinals, i, shape).ravel()


def restrict(f, mask):
    """Phi_Omega f: values at sampled voxels in lexicographic order."""
    if tuple(f.shape) != tuple(mask.shape):
        raise ValueError("field shape {} does not match mask shape {}".format(f.shape, mask.shape))
    return f[mask]
