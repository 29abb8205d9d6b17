"""Python bindings for the spr-lab Steiner point removal toolkit.

The heavy objects (instances, solutions) stay in C++; reports come back as
plain dicts decoded from the same JSON the CLI writes.
"""

import json

from . import _core
from ._core import (
    ArgumentError,
    CapacityError,
    DisconnectedPairError,
    FormatError,
    GenerationError,
    HandshakeError,
    Instance,
    ParameterError,
    PreconditionError,
    Solution,
    ValidationError,
    cage_names,
)

__all__ = [
    "ArgumentError",
    "CapacityError",
    "DisconnectedPairError",
    "FormatError",
    "GenerationError",
    "HandshakeError",
    "Instance",
    "ParameterError",
    "PreconditionError",
    "Solution",
    "ValidationError",
    "cage_graph",
    "cage_names",
    "certify",
    "cov_distribution",
    "girth",
    "instance_from_cage",
    "instance_from_core",
    "random_core",
    "run_cli",
    "solve",
    "stretch",
]


def cage_graph(name):
    return json.loads(_core.cage_graph_json(name))


def random_core(n, girth, seed=0):
    return json.loads(_core.random_core_json(n, girth, seed))


def girth(graph):
    """Weighted girth of a graph dict, or None for a forest."""
    return _core.girth(json.dumps(graph))


def instance_from_cage(name, mode="custom", M=None, S=None, L=None, g=None, terminals=None):
    return instance_from_core(cage_graph(name), mode, M, S, L, g, terminals)


def instance_from_core(graph, mode="custom", M=None, S=None, L=None, g=None, terminals=None):
    if L is not None:
        L = str(L)
    return Instance.from_core(json.dumps(graph), mode, M, S, L, g, terminals)


def solve(instance, method="voronoi", budget=100000):
    return Solution.solve(instance, method, budget)


def stretch(solution, threads=0):
    return json.loads(solution.stretch(threads))


def certify(solution, seed=0, budget=200000, ignore_edge_budget=False):
    return json.loads(solution.certify(seed, budget, ignore_edge_budget))


def cov_distribution(solution, s, trials=10000, seed=0, threads=0):
    return json.loads(solution.cov_distribution(s, trials, seed, threads))


def run_cli(*args):
    """Run an spr-lab subcommand in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
