"""Nystrom-style discretization and solve for second-kind integral equations.

Both discretizations collocate x(t) + lam * int_a^b k(t,s) x(s) ds = y(t) at
the Chebyshev nodes of a single panel.  ``discretize_smooth`` treats the
kernel as one smooth function and needs only the full-interval weight row;
``discretize_semismooth`` keeps the two branches separate and pairs each with
the one-sided integration matrix that is exact for polynomial integrands up
to the discretization degree, which is what preserves spectral accuracy when
the kernel has a kink or jump on the diagonal.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .spectral_core import ChebGrid, SpectralOperators, build_operators, cheb_grid, chebyshev_eval

__all__ = [
    "SingularMatrixError",
    "DiscreteSystem",
    "ChebSolution",
    "dense_solve",
    "schur_product",
    "semismooth_block",
    "discretize_smooth",
    "discretize_semismooth",
    "solve_system",
    "solve_fredholm",
    "relative_sup_error",
]

RCOND_WARN = 1e-12


class SingularMatrixError(np.linalg.LinAlgError):
    """LU factorization hit an exactly zero pivot."""


def dense_solve(matrix: np.ndarray, rhs: np.ndarray):
    """Solve via LU with partial pivoting; returns (x, rcond, warning).

    ``rcond`` is the LAPACK reciprocal condition estimate in the 1-norm and
    ``warning`` is True when it drops below 1e-12.
    """
    matrix = np.asarray(matrix, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    if not np.all(np.isfinite(matrix)):
        raise ValueError("system matrix contains non-finite entries")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(matrix, check_finite=False)
    if np.min(np.abs(np.diag(lu))) == 0.0:
        raise SingularMatrixError("discretized operator is singular to working precision")
    gecon = linalg.get_lapack_funcs("gecon", (matrix,))
    rcond, _info = gecon(lu, np.linalg.norm(matrix, 1))
    x = linalg.lu_solve((lu, piv), rhs, check_finite=False)
    return x, float(rcond), bool(rcond < RCOND_WARN)


def schur_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise product, with a shape check that fails loudly."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return a * b


def semismooth_block(
    ops: SpectralOperators, k1_vals: np.ndarray, k2_vals: np.ndarray, scale: float
) -> np.ndarray:
    """I + scale * (W o K1 + V o K2), the one-panel semismooth system matrix."""
    n1 = ops.order + 1
    return np.eye(n1) + scale * (
        schur_product(ops.int_left, k1_vals) + schur_product(ops.int_right, k2_vals)
    )


@dataclass(frozen=True)
class DiscreteSystem:
    matrix: np.ndarray
    rhs: np.ndarray
    grid: ChebGrid
    ops: SpectralOperators
    lam: float
    kind: str  # "smooth" or "semismooth"


def _rhs_values(rhs, nodes: np.ndarray) -> np.ndarray:
    if callable(rhs):
        vals = np.asarray(rhs(nodes), dtype=float)
    else:
        vals = np.asarray(rhs, dtype=float)
    if vals.shape != nodes.shape:
        raise ValueError(f"rhs has shape {vals.shape}, expected {nodes.shape}")
    if not np.all(np.isfinite(vals)):
        raise ValueError("rhs contains non-finite values")
    return vals


def discretize_smooth(kernel, grid: ChebGrid, lam: float, rhs) -> DiscreteSystem:
    """Plain product-quadrature discretization with the full weight row.

    ``kernel`` may be a two-branch kernel (sampled with the branch selected by
    the side of the diagonal) or any callable k(t, s).
    """
    ops = build_operators(grid.order)
    t = grid.nodes
    if hasattr(kernel, "eval"):
        k_vals = kernel.eval(t[:, None], t[None, :])
    else:
        k_vals = np.asarray(kernel(t[:, None], t[None, :]), dtype=float)
    scale = lam * grid.width / 2.0
    matrix = np.eye(grid.order + 1) + scale * k_vals * ops.full_weights[None, :]
    return DiscreteSystem(matrix, _rhs_values(rhs, t), grid, ops, lam, "smooth")


def discretize_semismooth(kernel, grid: ChebGrid, lam: float, rhs) -> DiscreteSystem:
    """Branch-split discretization: each branch gets its one-sided matrix."""
    ops = build_operators(grid.order)
    t = grid.nodes
    if hasattr(kernel, "eval_lower"):
        k1_vals = kernel.eval_lower(t[:, None], t[None, :])
        k2_vals = kernel.eval_upper(t[:, None], t[None, :])
    else:
        k1_vals = np.asarray(kernel(t[:, None], t[None, :]), dtype=float)
        k2_vals = k1_vals
    scale = lam * grid.width / 2.0
    matrix = semismooth_block(ops, k1_vals, k2_vals, scale)
    return DiscreteSystem(matrix, _rhs_values(rhs, t), grid, ops, lam, "semismooth")


@dataclass(frozen=True)
class ChebSolution:
    """Piecewise-Chebyshev solution: node values plus coefficients per panel."""

    grids: tuple
    values: tuple
    coeffs: tuple
    rcond: float
    cond_warning: bool

    @property
    def breakpoints(self) -> np.ndarray:
        return np.concatenate(
            [[self.grids[0].a], [g.b for g in self.grids]]
        )

    @property
    def nodes(self) -> np.ndarray:
        return np.concatenate([g.nodes for g in self.grids])

    @property
    def node_values(self) -> np.ndarray:
        return np.concatenate(self.values)

    def evaluate(self, t) -> np.ndarray:
        """Evaluate the interpolant; t must lie in the solved interval."""
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        bps = self.breakpoints
        a, b = bps[0], bps[-1]
        slack = 1e-12 * (1.0 + abs(a) + abs(b))
        if np.any(t_arr < a - slack) or np.any(t_arr > b + slack):
            raise ValueError(f"evaluation point outside [{a}, {b}]")
        t_arr = np.clip(t_arr, a, b)
        idx = np.searchsorted(bps[1:-1], t_arr, side="left")
        out = np.empty_like(t_arr)
        for p in range(len(self.grids)):
            mask = idx == p
            if not np.any(mask):
                continue
            g = self.grids[p]
            out[mask] = chebyshev_eval(self.coeffs[p], g.to_reference(t_arr[mask]))
        return out if np.ndim(t) else out[0]


def solve_system(system: DiscreteSystem) -> ChebSolution:
    vals, rcond, warn = dense_solve(system.matrix, system.rhs)
    coeffs = system.ops.cosine_inv @ vals
    return ChebSolution(
        grids=(system.grid,),
        values=(vals,),
        coeffs=(coeffs,),
        rcond=rcond,
        cond_warning=warn,
    )


def solve_fredholm(
    kernel, a: float, b: float, lam: float, rhs, order: int, smooth: bool = False
) -> ChebSolution:
    """One-call path: grid, discretize (semismooth by default), dense solve."""
    grid = cheb_grid(order, a, b)
    disc = discretize_smooth if smooth else discretize_semismooth
    return solve_system(disc(kernel, grid, lam, rhs))


def relative_sup_error(approx: np.ndarray, exact: np.ndarray) -> float:
    """max|approx - exact| / max|exact|; absolute if exact is all zero."""
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    denom = np.max(np.abs(exact))
    num = np.max(np.abs(approx - exact))
    return float(num) if denom == 0.0 else float(num / denom)
