"""Jacobi-preconditioned conjugate gradient for the sparse SPD systems of WGL"""

import logging

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as splinalg


class ConvergenceError(RuntimeError):
    def __init__(self, message, iterations, residual):
        super(ConvergenceError, self).__init__(message)
        self.iterations = iterations
        self.residual = residual


def relative_residual(A, x, b):
    norm_b = np.linalg.norm(b)
    norm_r = np.linalg.norm(b - A.dot(x))
    return norm_r / norm_b if norm_b > 0 else norm_r


def jacobi_preconditioner(A):
    diag = A.diagonal()
    if np.any(diag <= 0):
        raise ValueError("Jacobi preconditioner needs a positive diagonal")
    return sparse.diags(1.0 / diag)


def conjugate_gradient(A, b, tol=1e-6, max_iter=2000, x0=None):
    """Solve A x = b to relative residual tol.

    Returns:
        x (np.ndarray): solution
        iterations (int): number of CG iterations
        residual (float): final relative residual

    """
    logger = logging.getLogger("sdrecon.cg")
    counter = [0]

    def callback(xk):
        counter[0] += 1

    x, info = splinalg.cg(A, b, x0=x0, rtol=tol, atol=0.0, maxiter=max_iter,
                          M=jacobi_preconditioner(A), callback=callback)
    residual = relative_residual(A, x, b)
    if info != 0 or not np.isfinite(residual):
        raise ConvergenceError(
            "CG did not converge in {} iterations, relative residual {:.3e}".format(counter[0], residual),
            counter[0], residual)
    logger.debug("CG converged in {} iterations, relative residual {:.3e}".format(counter[0], residual))
    return x, counter[0], residual


def direct_solve(A, b, tol=None, max_iter=None, x0=None):
    """Sparse LU solve; same return contract as conjugate_gradient."""
    x = splinalg.spsolve(sparse.csc_matrix(A), b)
    x = np.atleast_1d(x)
    return x, 0, relative_residual(A, x, b)
