"""Records in labeled rooted trees, forests and endofunctions.

Exact counts, explicit bijections, generating functions and brute-force
oracles for the record statistic.
"""

from .core import Catalyst, Endofunction, IntPartition, RootedForest, RootedTree
from .errors import EnvironmentProblem, TreeRecError

__version__ = "0.1.0"

__all__ = [
    "Catalyst",
    "Endofunction",
    "EnvironmentProblem",
    "IntPartition",
    "RootedForest",
    "RootedTree",
    "TreeRecError",
]
