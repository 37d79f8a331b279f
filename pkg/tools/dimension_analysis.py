#!/usr/bin/env python
"""Local dimension of the patch manifold of the synthetic archetypes

For each generator, estimate at random voxels the number of principal
components of the patch neighbourhood that capture a share of its variance,
and print the histogram.

"""

import argparse

import numpy as np
from prettytable import PrettyTable
from tqdm import tqdm

from sdrecon.data.datagen import generate_field
from sdrecon.data.grid import PatchShape
from sdrecon.graph.patch_graph import PatchCloud, dimension_profile
from sdrecon.utils.logger import setup_logger
from sdrecon.utils.np_util import make_rng


def parse_args():
    parser = argparse.ArgumentParser(description="Patch manifold dimension analysis")
    parser.add_argument("--kinds", nargs="+", default=["smooth", "shock", "oscillatory"])
    parser.add_argument("--dims", nargs="+", type=int, default=[128, 128])
    parser.add_argument("--patch", type=str, default="10x10")
    parser.add_argument("--num-neighbours", dest="k", type=int, default=200)
    parser.add_argument("--threshold", type=float, default=0.95)
    parser.add_argument("--num-points", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    return parser.parse_args()


def main():
    args = parse_args()
    logger = setup_logger("sdrecon", "", prefix="dimension")
    logger.info(args)

    shape = PatchShape.parse(args.patch)
    table = PrettyTable(["Field", "Median dim", "Mean dim", "Histogram"])
    for kind in tqdm(args.kinds):
        field = generate_field(kind, args.dims, args.seed)
        cloud = PatchCloud.from_field(field, shape)
        ordinals = make_rng(args.seed).choice(len(cloud), size=args.num_points, replace=False)
        profile = dimension_profile(cloud, ordinals, args.k, args.threshold)
        values = np.repeat(list(profile.keys()), list(profile.values()))
        table.add_row([kind,
                       int(np.median(values)),
                       "{:.2f}".format(values.mean()),
                       " ".join("{}:{}".format(d, c) for d, c in sorted(profile.items()))])
    logger.info("Local dimension at {:.0f}% energy, patch {}, k={}:\n{}".format(
        100.0 * args.threshold, shape, args.k, table))


if __name__ == "__main__":
    main()
