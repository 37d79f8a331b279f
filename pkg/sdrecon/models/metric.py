"""Reconstruction error metrics

All norms are normalized by the range R = max f - min f of the reference:

    l1   = mean |e| / R
    l2   = sqrt(mean e^2) / R
    linf = max |e| / R
    psnr = 10 log10(1 / l2^2)

"""

from collections import OrderedDict

import numpy as np


class ErrorReport(object):
    def __init__(self, l1, l2, linf, psnr, value_range):
        self.l1 = l1
        self.l2 = l2
        self.linf = linf
        self.psnr = psnr
        self.range = value_range

    def as_dict(self):
        return OrderedDict([("l1", self.l1), ("l2", self.l2), ("linf", self.linf), ("psnr", self.psnr)])

    def __repr__(self):
        return "ErrorReport(l1={:.4e}, l2={:.4e}, linf={:.4e}, psnr={:.2f})".format(
            self.l1, self.l2, self.linf, self.psnr)


def psnr_from_l2(l2):
    return float("inf") if l2 == 0 else float(-20.0 * np.log10(l2))


def error_norms(f, fhat):
    """Range-normalized error norms of fhat against the reference f.

    An exactly zero error yields zeros and psnr=inf, even for a constant
    reference. A nonzero error on a constant reference has no range to
    normalize by and raises.
    """
    f = np.asarray(f, dtype=np.float64)
    fhat = np.asarray(fhat, dtype=np.float64)
    if f.shape != fhat.shape:
        raise ValueError("reference shape {} does not match reconstruction shape {}".format(f.shape, fhat.shape))
    value_range = float(f.max() - f.min())
    e = f - fhat
    if not np.any(e):
        return ErrorReport(0.0, 0.0, 0.0, float("inf"), value_range)
    if value_range <= 0:
        raise ValueError("reference is constant (range 0); use absolute error norms instead")
    e = np.abs(e) / value_range
    l2 = float(np.sqrt(np.mean(np.square(e))))
    return ErrorReport(float(e.mean()), l2, float(e.max()), psnr_from_l2(l2), value_range)
