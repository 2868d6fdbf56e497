"""Solvers for the stage pressure-Poisson systems.

The discrete pressure operator is tridiagonal (cyclic tridiagonal for
periodic topologies), symmetric, and negative semi-definite; its nullspace
is the constant vector unless a pressure boundary value is imposed.  The
default solver is preconditioned conjugate gradient on the negated
(positive semi-definite) operator; a direct Thomas solver is provided as a
cross-check for the nonsingular branch.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CGConfig:
    tol: float = 1e-12       # relative residual tolerance
    max_iter: int = 0        # 0 -> 10 N + 20
    precond: str = "diagonal"  # "diagonal" | "none"


class PoissonSolveError(RuntimeError):
    pass


class PoissonOperator:
    """Symmetric (cyclic) tridiagonal operator with optional constant nullspace.

    ``lower[i]`` couples row i with row i-1 (lower[0] is the periodic corner
    entry, used only when cyclic).  Row sums need not vanish in the
    nonsingular (pressure-BC) branch.
    """

    def __init__(self, diag, lower, cyclic=False, singular=True):
        self.diag = np.asarray(diag, dtype=float)
        self.lower = np.asarray(lower, dtype=float)
        self.cyclic = bool(cyclic)
        self.singular = bool(singular)
        self.n = self.diag.size

    def matvec(self, x):
        y = self.diag * x
        y[1:] += self.lower[1:] * x[:-1]
        y[:-1] += self.lower[1:] * x[1:]
        if self.cyclic:
            y[0] += self.lower[0] * x[-1]
            y[-1] += self.lower[0] * x[0]
        return y

    def dense(self):
        mat = np.diag(self.diag)
        idx = np.arange(1, self.n)
        mat[idx, idx - 1] += self.lower[1:]
        mat[idx - 1, idx] += self.lower[1:]
        if self.cyclic:
            mat[0, -1] += self.lower[0]
            mat[-1, 0] += self.lower[0]
        return mat


def solve(op, rhs, config=None, x0=None):
    """Solve op x = rhs by preconditioned conjugate gradient.

    For a singular operator the rhs is projected onto the range (constant
    component removed) and the zero-mean representative is returned.
    Returns (x, iterations).
    """
    if config is None:
        config = CGConfig()
    b = -np.asarray(rhs, dtype=float)  # negate: CG wants positive semi-definite
    if op.singular:
        b = b - b.mean()
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return np.zeros(op.n), 0
    inv_diag = None
    if config.precond == "diagonal":
        inv_diag = 1.0 / (-op.diag)
    max_iter = config.max_iter or (10 * op.n + 20)

    if x0 is not None:
        x = np.array(x0, dtype=float)
        if op.singular:
            x -= x.mean()
    else:
        x = np.zeros(op.n)
    r = b - (-op.matvec(x)) if x0 is not None else b.copy()
    z = inv_diag * r if inv_diag is not None else r.copy()
    if op.singular:
        z -= z.mean()
    p = z.copy()
    rz = r @ z
    it = 0
    for it in range(1, max_iter + 1):
        Ap = -op.matvec(p)
        alpha = rz / (p @ Ap)
        x += alpha * p
        r -= alpha * Ap
        if np.linalg.norm(r) <= config.tol * bnorm:
            break
        z = inv_diag * r if inv_diag is not None else r.copy()
        if op.singular:
            z -= z.mean()
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new
    else:
        raise PoissonSolveError(
            f"CG failed to converge in {max_iter} iterations "
            f"(relative residual {np.linalg.norm(r) / bnorm:.3e})")
    if op.singular:
        x -= x.mean()
    return x, it


def thomas_solve(op, rhs):
    """Direct tridiagonal factorization for the nonsingular non-cyclic branch.

    Used as a cross-check oracle for the CG solver.
    """
    if op.cyclic:
        raise ValueError("Thomas solver does not handle cyclic systems")
    n = op.n
    c = np.empty(n)   # modified upper diagonal
    d = np.empty(n)   # modified rhs
    rhs = np.asarray(rhs, dtype=float)
    beta = op.diag[0]
    c[0] = op.lower[1] / beta if n > 1 else 0.0
    d[0] = rhs[0] / beta
    for i in range(1, n):
        beta = op.diag[i] - op.lower[i] * c[i - 1]
        if i < n - 1:
            c[i] = op.lower[i + 1] / beta
        d[i] = (rhs[i] - op.lower[i] * d[i - 1]) / beta
    x = np.empty(n)
    x[-1] = d[-1]
    for i in range(n - 2, -1, -1):
        x[i] = d[i] - c[i] * x[i + 1]
    return x
