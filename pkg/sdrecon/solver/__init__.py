from .build import build_linear_solver, register_solver, get_solver
