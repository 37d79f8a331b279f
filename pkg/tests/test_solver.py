import numpy as np
import pytest
from scipy import sparse
from scipy.sparse import linalg as splinalg

from sdrecon.config.base import _C
from sdrecon.solver import build_linear_solver, register_solver, get_solver
from sdrecon.solver.build import _SOLVERS
from sdrecon.solver.cg import conjugate_gradient, direct_solve, jacobi_preconditioner, ConvergenceError


def random_spd(n, seed):
    rng = np.random.RandomState(seed)
    B = sparse.random(n, n, density=0.05, random_state=rng, format="csr")
    B = B + B.T
    diag = np.asarray(abs(B).sum(1)).ravel() + rng.uniform(0.5, 2.0, n)
    return (B + sparse.diags(diag)).tocsr(), rng.randn(n)


def test_conjugate_gradient():
    A, b = random_spd(200, 0)
    x, iterations, residual = conjugate_gradient(A, b, tol=1e-10)
    expected = splinalg.spsolve(A.tocsc(), b)
    np.testing.assert_allclose(x, expected, rtol=1e-7, atol=1e-9)
    assert 0 < iterations <= 200
    assert residual <= 1e-9

    # warm start at the solution needs no iteration
    x_again, iterations, _ = conjugate_gradient(A, b, tol=1e-6, x0=expected)
    assert iterations == 0
    np.testing.assert_array_equal(x_again, expected)


def test_conjugate_gradient_not_converged():
    A, b = random_spd(200, 1)
    with pytest.raises(ConvergenceError) as info:
        conjugate_gradient(A, b, tol=1e-14, max_iter=2)
    assert info.value.iterations == 2
    assert info.value.residual > 1e-14
    assert isinstance(info.value, RuntimeError)


def test_direct_solve():
    A, b = random_spd(50, 2)
    x, iterations, residual = direct_solve(A, b)
    np.testing.assert_allclose(A.dot(x), b, atol=1e-10)
    assert iterations == 0
    assert residual < 1e-12


def test_jacobi_preconditioner():
    A, _ = random_spd(10, 3)
    M = jacobi_preconditioner(A)
    np.testing.assert_allclose(M.diagonal() * A.diagonal(), 1.0)
    with pytest.raises(ValueError):
        jacobi_preconditioner(sparse.diags([1.0, 0.0, 2.0]))


def test_build_linear_solver():
    cfg = _C.clone()
    cfg.SOLVER.TOL = 1e-10
    A, b = random_spd(100, 4)
    x, _, residual = build_linear_solver(cfg)(A, b)
    assert residual <= 1e-9

    cfg.SOLVER.TYPE = "DIRECT"
    x_direct, iterations, _ = build_linear_solver(cfg)(A, b)
    assert iterations == 0
    np.testing.assert_allclose(x, x_direct, rtol=1e-7, atol=1e-9)

    cfg.SOLVER.TYPE = "GMRES"
    with pytest.raises(ValueError):
        build_linear_solver(cfg)
    with pytest.raises(ValueError):
        get_solver("GMRES")
    with pytest.raises(KeyError):
        register_solver("CG", conjugate_gradient)


def test_register_solver():
    calls = []

    def counting_solve(A, b, tol=1e-6, max_iter=2000, x0=None):
        calls.append((tol, max_iter))
        return direct_solve(A, b)

    register_solver("COUNTING", counting_solve)
    try:
        assert get_solver("COUNTING") is counting_solve
        cfg = _C.clone()
        cfg.SOLVER.TYPE = "COUNTING"
        cfg.SOLVER.MAX_ITER = 7
        A, b = random_spd(30, 5)
        x, iterations, residual = build_linear_solver(cfg)(A, b)
        assert calls == [(cfg.SOLVER.TOL, 7)]
        assert residual < 1e-12
    finally:
        del _SOLVERS["COUNTING"]
