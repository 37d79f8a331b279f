"""Reconstruction and compression drivers"""

import logging
import os.path as osp
import time
from collections import OrderedDict

from prettytable import PrettyTable

from sdrecon.data import build_field, build_mask
from sdrecon.data.grid import restrict
from sdrecon.models import build_reconstruction_method, build_compression_method
from sdrecon.models.metric import error_norms
from sdrecon.utils.io import write_field, write_mask, write_report
from sdrecon.utils.np_util import set_random_seed
from sdrecon.utils.tensorboard_logger import TensorboardLogger


def make_report(reference, recon, iters, seconds):
    """Ordered key=value report of a run; psnr is inf for an exact result."""
    report = error_norms(reference, recon).as_dict()
    report["iters"] = int(iters)
    report["seconds"] = float(seconds)
    return report


def report_table(rows):
    table = PrettyTable(["Method", "L1", "L2", "Linf", "PSNR", "Iters", "Time(s)"])
    for name, report in rows:
        table.add_row([name,
                       "{:.4e}".format(report["l1"]),
                       "{:.4e}".format(report["l2"]),
                       "{:.4e}".format(report["linf"]),
                       "{:.2f}".format(report["psnr"]),
                       "{:g}".format(report["iters"]),
                       "{:.2f}".format(report["seconds"])])
    return table


def run_reconstruction(cfg, field, mask, name=None, tensorboard_logger=None):
    """Reconstruct field from its samples on mask with a configured method.

    Returns:
        np.ndarray: reconstruction
        OrderedDict: report with l1, l2, linf, psnr, iters, seconds

    """
    method = build_reconstruction_method(cfg, name, tensorboard_logger=tensorboard_logger)
    tic = time.time()
    recon, info = method(restrict(field, mask), mask, reference=field)
    return recon, make_report(field, recon, info["iters"], time.time() - tic)


def run_compression(cfg, field, name=None, tensorboard_logger=None):
    """Compress field within COMPRESSION.RATE with a configured method.

    Returns:
        np.ndarray: reconstruction
        OrderedDict: report with l1, l2, linf, psnr, iters, seconds, rate

    """
    method = build_compression_method(cfg, name, tensorboard_logger=tensorboard_logger)
    tic = time.time()
    recon, info = method(field)
    report = make_report(field, recon, info["iters"], time.time() - tic)
    report["rate"] = float(info["rate"])
    return recon, report


def _tensorboard(output_dir):
    return TensorboardLogger(output_dir) if output_dir else None


def reconstruct(cfg, output_dir=""):
    logger = logging.getLogger("sdrecon.reconstructor")
    set_random_seed(cfg.RNG_SEED)

    field = build_field(cfg)
    mask = build_mask(cfg, field.shape)
    logger.info("Field of shape {}, {} sampled voxels ({:.2f}%)".format(
        field.shape, mask.sum(), 100.0 * mask.mean()))

    tensorboard_logger = _tensorboard(output_dir)
    recon, report = run_reconstruction(cfg, field, mask, tensorboard_logger=tensorboard_logger)
    if tensorboard_logger is not None:
        tensorboard_logger.close()
    logger.info("Reconstruction:\n{}".format(report_table([(cfg.MODEL.TYPE, report)])))

    if output_dir:
        write_field(osp.join(output_dir, "recon.sdf"), recon)
        write_mask(osp.join(output_dir, "mask.sdm"), mask)
        write_report(osp.join(output_dir, "report.kv"), report)
    return recon, report


def compress(cfg, output_dir=""):
    logger = logging.getLogger("sdrecon.reconstructor")
    set_random_seed(cfg.RNG_SEED)

    field = build_field(cfg)
    tensorboard_logger = _tensorboard(output_dir)
    recon, report = run_compression(cfg, field, tensorboard_logger=tensorboard_logger)
    if tensorboard_logger is not None:
        tensorboard_logger.close()
    logger.info("Compression at rate {:.3f} (achieved {:.3f}):\n{}".format(
        cfg.COMPRESSION.RATE, report["rate"], report_table([(cfg.MODEL.TYPE, report)])))

    if output_dir:
        write_field(osp.join(output_dir, "recon.sdf"), recon)
        write_report(osp.join(output_dir, "report.kv"), report)
    return recon, report
