"""
Build linear solvers

Notes:
    A solver is called as solve(A, b, tol, max_iter, x0) and returns
    (x, iterations, relative_residual).
    Custom solvers should be implemented and registered in '_SOLVERS'.

"""
from functools import partial

from .cg import conjugate_gradient, direct_solve

_SOLVERS = {
    "CG": conjugate_gradient,
    "DIRECT": direct_solve,
}


def get_solver(name):
    if name not in _SOLVERS:
        raise ValueError("Unsupported type of solver: {}".format(name))
    return _SOLVERS[name]


def build_linear_solver(cfg):
    """SOLVER.TYPE with SOLVER.TOL and SOLVER.MAX_ITER bound."""
    return partial(get_solver(cfg.SOLVER.TYPE), tol=cfg.SOLVER.TOL, max_iter=cfg.SOLVER.MAX_ITER)


def register_solver(name, solve):
    if name in _SOLVERS:
        raise KeyError(
            "Duplicate keys for {:s} with {} and {}."
            "Solve key conflicts first!".format(name, _SOLVERS[name], solve))
    _SOLVERS[name] = solve
