"""Command-line interface

    sdrecon gen <kind> --dims 128 128 --seed 0 -o field.sdf
    sdrecon sample --mask random --rate 0.1 --seed 0 -i field.sdf -o mask.sdm
    sdrecon sample --mask regular --strides 4 4 -i field.sdf -o mask.sdm
    sdrecon reconstruct --method ldmm -i field.sdf -m mask.sdm -o recon.sdf --report report.kv
    sdrecon compress --method dct --rate 0.1 -i field.sdf -o recon.sdf
    sdrecon metrics -a field.sdf -b recon.sdf -o report.kv

Module errors exit with status 1 and a single "error: ..." line on stderr.

"""

import argparse
import logging
import sys
import time

from sdrecon.config import purge_cfg
from sdrecon.data.datagen import generate_field
from sdrecon.data.grid import PatchShape, as_mask, restrict
from sdrecon.data.sampling import random_mask, regular_mask
from sdrecon.engine.reconstructor import make_report
from sdrecon.models import build_reconstruction_method, build_compression_method
from sdrecon.models.metric import error_norms
from sdrecon.utils.io import read_field, read_mask, write_field, write_mask, write_report, format_value
from sdrecon.utils.logger import setup_logger

_RECONSTRUCTION_METHODS = ("ldmm", "dct", "dft", "spline", "nearest")
_COMPRESSION_METHODS = ("ldmm", "dct", "dft", "svd")
_INIT_STRATEGIES = ("nearest", "mean", "dct", "dft", "spline")


def _parse_ints(values):
    """Accept "128 128" as well as "128x128"."""
    ints = []
    for value in values:
        ints.extend(int(v) for v in str(value).lower().split("x") if v)
    return tuple(ints)


def _load_cfg(base_cfg, config_file, opts):
    cfg = base_cfg.clone()
    if config_file:
        cfg.merge_from_file(config_file)
    if opts:
        cfg.merge_from_list(opts)
    return cfg


def _finalize(cfg):
    purge_cfg(cfg)
    cfg.freeze()
    return cfg


def _emit_report(report, fname):
    for k, v in report.items():
        print("{}={}".format(k, format_value(v)))
    if fname:
        write_report(fname, report)


def cmd_gen(args):
    dims = _parse_ints(args.dims)
    field = generate_field(args.kind, dims, args.seed)
    write_field(args.output, field)


def cmd_sample(args):
    field = read_field(args.input)
    if args.mask == "random":
        mask = random_mask(field.shape, args.rate, args.seed)
    else:
        if not args.strides:
            raise ValueError("regular sampling needs --strides")
        mask = regular_mask(field.shape, _parse_ints(args.strides))
    write_mask(args.output, mask)


def cmd_reconstruct(args):
    from sdrecon.config.reconstruction import cfg as base_cfg

    field = read_field(args.input)
    mask = as_mask(read_mask(args.mask), field.shape)

    cfg = _load_cfg(base_cfg, args.config_file, args.opts)
    cfg.MODEL.TYPE = args.method.upper()
    if args.method == "ldmm":
        if args.init:
            cfg.MODEL.LDMM.INIT = args.init
        if args.patch:
            shape = PatchShape.parse(args.patch)
            shape.check(field.shape)
            cfg.MODEL.LDMM.PATCH_SHAPE = shape.sizes
        if args.iters is not None:
            cfg.MODEL.LDMM.MAX_ITER = args.iters
        if args.tol is not None:
            cfg.MODEL.LDMM.TOL = args.tol
    _finalize(cfg)

    method = build_reconstruction_method(cfg)
    tic = time.time()
    recon, info = method(restrict(field, mask), mask, reference=field)
    seconds = time.time() - tic
    write_field(args.output, recon)
    _emit_report(make_report(field, recon, info["iters"], seconds), args.report)


def cmd_compress(args):
    from sdrecon.config.compression import cfg as base_cfg

    field = read_field(args.input)
    cfg = _load_cfg(base_cfg, args.config_file, args.opts)
    cfg.MODEL.TYPE = args.method.upper()
    cfg.COMPRESSION.RATE = args.rate
    cfg.SAMPLING.SEED = args.seed
    _finalize(cfg)

    method = build_compression_method(cfg)
    tic = time.time()
    recon, info = method(field)
    seconds = time.time() - tic
    write_field(args.output, recon)
    report = make_report(field, recon, info["iters"], seconds)
    report["rate"] = float(info["rate"])
    _emit_report(report, args.report)


def cmd_metrics(args):
    reference = read_field(args.a)
    recon = read_field(args.b)
    _emit_report(error_norms(reference, recon).as_dict(), args.output)


def _add_cfg_args(parser):
    parser.add_argument("--cfg", dest="config_file", default="", metavar="FILE",
                        help="path to config file", type=str)
    parser.add_argument("--opts", nargs="+", default=None, metavar="KEY VALUE",
                        help="Modify config options")


def build_parser():
    parser = argparse.ArgumentParser(prog="sdrecon",
                                     description="Scientific data reconstruction from partial samples")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    subparsers = parser.add_subparsers(dest="command")
    subparsers.required = True

    p = subparsers.add_parser("gen", help="generate a synthetic field")
    p.add_argument("kind", type=str)
    p.add_argument("--dims", nargs="+", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = subparsers.add_parser("sample", help="draw a sample mask for a field")
    p.add_argument("--mask", choices=("random", "regular"), required=True)
    p.add_argument("--rate", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strides", nargs="+", default=None)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_sample)

    p = subparsers.add_parser("reconstruct", help="reconstruct a field from a mask")
    p.add_argument("--method", choices=_RECONSTRUCTION_METHODS, default="ldmm")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-m", "--mask", required=True)
    p.add_argument("--init", choices=_INIT_STRATEGIES, default=None)
    p.add_argument("--patch", type=str, default=None, help="s1xs2 or s1xs2xs3")
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--report", default=None)
    _add_cfg_args(p)
    p.set_defaults(func=cmd_reconstruct)

    p = subparsers.add_parser("compress", help="compress a field within a budget")
    p.add_argument("--method", choices=_COMPRESSION_METHODS, default="dct")
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--report", default=None)
    _add_cfg_args(p)
    p.set_defaults(func=cmd_compress)

    p = subparsers.add_parser("metrics", help="error norms of a reconstruction")
    p.add_argument("-a", required=True, help="reference field")
    p.add_argument("-b", required=True, help="reconstructed field")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_metrics)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.verbose:
        setup_logger("sdrecon", "", level=logging.INFO, stream=sys.stderr)
    try:
        args.func(args)
    except (ValueError, IndexError, RuntimeError, OSError, KeyError) as e:
        message = str(e).splitlines()[0] if str(e) else e.__class__.__name__
        print("error: {}".format(message), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
