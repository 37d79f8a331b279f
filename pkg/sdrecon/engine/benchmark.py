"""Benchmark methods over synthetic generators and seeds"""

import logging
import os.path as osp
from collections import OrderedDict, defaultdict

import numpy as np
from tqdm import tqdm

from sdrecon.data import build_field, build_mask
from sdrecon.data.build import mask_seed
from sdrecon.utils.io import write_report
from .reconstructor import report_table, run_reconstruction, run_compression

_KEYS = ("l1", "l2", "linf", "psnr", "iters", "seconds")


def summarize(reports):
    """Mean of every report key over seeds."""
    summary = OrderedDict()
    for key in _KEYS:
        summary[key] = float(np.mean([r[key] for r in reports]))
    return summary


def benchmark(cfg, output_dir=""):
    """Run BENCHMARK.METHODS on BENCHMARK.GENERATORS x INPUT.GENERATOR.SEEDS.

    Returns:
        dict: {generator: {method: mean report}}

    """
    logger = logging.getLogger("sdrecon.benchmark")
    is_compression = cfg.TASK == "compression"
    results = OrderedDict()

    for kind in cfg.BENCHMARK.GENERATORS:
        reports = defaultdict(list)
        cases = [(seed, name) for seed in cfg.INPUT.GENERATOR.SEEDS for name in cfg.BENCHMARK.METHODS]
        for seed, name in tqdm(cases, desc=kind):
            field = build_field(cfg, kind=kind, seed=seed)
            if is_compression:
                _, report = run_compression(cfg, field, name)
            else:
                mask = build_mask(cfg, field.shape, seed=mask_seed(cfg, seed))
                _, report = run_reconstruction(cfg, field, mask, name)
            logger.debug("{} seed {} {}: psnr {:.2f}".format(kind, seed, name, report["psnr"]))
            reports[name].append(report)

        results[kind] = OrderedDict()
        for name in cfg.BENCHMARK.METHODS:
            summary = summarize(reports[name])
            results[kind][name] = summary
            if output_dir:
                write_report(osp.join(output_dir, "{}_{}.kv".format(kind, name.lower())), summary)
        logger.info("Benchmark on '{}' over {} seeds:\n{}".format(
            kind, len(cfg.INPUT.GENERATOR.SEEDS), report_table(results[kind].items())))

    return results
