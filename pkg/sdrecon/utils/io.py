"""Binary field/mask files and key=value reports

Field file (.sdf):
    magic "SDFIELD1" | ndim uint32 LE | dims ndim x uint64 LE | payload float64 LE
Mask file (.sdm):
    magic "SDMASK01" | ndim uint32 LE | dims ndim x uint64 LE | payload uint8 in {0, 1}

Payloads are stored in lexicographic order, first coordinate most significant,
which is numpy's C order.

"""

import os
import struct

import numpy as np

FIELD_MAGIC = b"SDFIELD1"
MASK_MAGIC = b"SDMASK01"


class FieldFormatError(ValueError):
    pass


def mkdir(path):
    os.makedirs(path, exist_ok=True)


def _pack_header(magic, shape):
    return magic + struct.pack("<I", len(shape)) + struct.pack("<{}Q".format(len(shape)), *shape)


def _read_header(fid, magic, fname):
    head = fid.read(len(magic))
    if head != magic:
        raise FieldFormatError("{}: bad magic {!r}, expected {!r}".format(fname, head, magic))
    raw = fid.read(4)
    if len(raw) != 4:
        raise FieldFormatError("{}: truncated header".format(fname))
    ndim, = struct.unpack("<I", raw)
    if ndim not in (2, 3):
        raise FieldFormatError("{}: ndim must be 2 or 3, got {}".format(fname, ndim))
    raw = fid.read(8 * ndim)
    if len(raw) != 8 * ndim:
        raise FieldFormatError("{}: truncated header".format(fname))
    dims = struct.unpack("<{}Q".format(ndim), raw)
    if min(dims) < 1:
        raise FieldFormatError("{}: dims must be positive, got {}".format(fname, dims))
    return tuple(int(n) for n in dims)


def _read_payload(fid, count, itemsize, fname):
    raw = fid.read()
    if len(raw) != count * itemsize:
        raise FieldFormatError("{}: payload has {} bytes, expected {}".format(
            fname, len(raw), count * itemsize))
    return raw


def write_field(fname, field):
    field = np.asarray(field, dtype=np.float64)
    if field.ndim not in (2, 3):
        raise ValueError("field must be 2D or 3D, got shape {}".format(field.shape))
    with open(fname, "wb") as fid:
        fid.write(_pack_header(FIELD_MAGIC, field.shape))
        fid.write(np.ascontiguousarray(field).astype("<f8").tobytes())


def read_field(fname):
    with open(fname, "rb") as fid:
        dims = _read_header(fid, FIELD_MAGIC, fname)
        raw = _read_payload(fid, int(np.prod(dims)), 8, fname)
    field = np.frombuffer(raw, dtype="<f8").astype(np.float64).reshape(dims)
    bad = np.flatnonzero(~np.isfinite(field))
    if bad.size > 0:
        raise FieldFormatError("{}: non-finite value at voxel ordinal {}".format(fname, bad[0]))
    return field


def write_mask(fname, mask):
    mask = np.asarray(mask, dtype=bool)
    if mask.ndim not in (2, 3):
        raise ValueError("mask must be 2D or 3D, got shape {}".format(mask.shape))
    with open(fname, "wb") as fid:
        fid.write(_pack_header(MASK_MAGIC, mask.shape))
        fid.write(np.ascontiguousarray(mask).astype(np.uint8).tobytes())


def read_mask(fname):
    with open(fname, "rb") as fid:
        dims = _read_header(fid, MASK_MAGIC, fname)
        raw = _read_payload(fid, int(np.prod(dims)), 1, fname)
    flags = np.frombuffer(raw, dtype=np.uint8).reshape(dims)
    bad = np.flatnonzero(flags > 1)
    if bad.size > 0:
        raise FieldFormatError("{}: mask byte {} at voxel ordinal {}".format(
            fname, flags.ravel()[bad[0]], bad[0]))
    return flags.astype(bool)


def format_value(value):
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if np.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def write_report(fname, report):
    """Write an ordered mapping as "key=value" lines."""
    with open(fname, "w") as fid:
        for k, v in report.items():
            fid.write("{}={}\n".format(k, format_value(v)))


def read_report(fname):
    report = {}
    with open(fname, "r") as fid:
        for line in fid:
            line = line.strip()
            if not line:
                continue
            k, v = line.split("=", 1)
            try:
                report[k] = int(v)
            except ValueError:
                report[k] = float(v)
    return report
