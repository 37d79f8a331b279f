from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from setuptools import setup
from setuptools import find_packages

exclude_dirs = ("configs", "tests", "scripts", "data", "outputs")

setup(
    name='sdrecon',
    version="0.1.0",
    description="scientific data reconstruction and compression with the low dimensional manifold model",
    packages=find_packages(exclude=exclude_dirs),
    install_requires=[
        "numpy",
        "scipy>=1.12",
        "yacs",
        "tqdm",
        "PrettyTable",
        "tensorboardX",
    ],
    entry_points={
        "console_scripts": ["sdrecon=sdrecon.cli:main"],
    },
)
