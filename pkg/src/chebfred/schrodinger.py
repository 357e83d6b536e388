"""Radial Schrodinger equation with a nonlocal potential, in integral form.

The scattering problem on [0, T] with a nonlocal potential v(p, r') is
recast as a second-kind integral equation for the wave function psi.  The
equation's kernel involves integrals of the potential against sin/cos
factors; those integrals are themselves computed with the one-sided spectral
matrices, so a potential with a kink across p = r' is handled branch by
branch end to end.  The assembled system is

    [I + (T/2k) D_c (W o K11 + V o K12) + (T/2k) D_s (W o K21 + V o K22)] psi = rhs

with D_c = diag(cos(k t_i)), D_s = diag(sin(k t_i)) and the K matrices built
below.  The default right-hand side is the free solution sin(k t); tests with
a manufactured solution override it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fredholm_solver import ChebSolution, dense_solve, relative_sup_error, schur_product
from .kernel_catalog import NonlocalPotential, SchrodingerProblem
from .spectral_core import ChebGrid, SpectralOperators, build_operators, cheb_grid

__all__ = [
    "NonlocalPotential",
    "SchrodingerProblem",
    "SchrodingerSystem",
    "build_kernel_matrices",
    "assemble",
    "solve_schrodinger",
    "self_convergence",
]


def build_kernel_matrices(potential: NonlocalPotential, grid: ChebGrid, ops: SpectralOperators):
    """Sample the potential and spectrally integrate it into K11, K12, K21, K22.

    V1[l, j] = v_lower(t_l, t_j) and V2[l, j] = v_upper(t_l, t_j): the row
    index is the integration variable.  Row i of W integrates over [0, t_i],
    row i of V over [t_i, T], so for instance K12[i, j] approximates
    int_0^{t_i} sin(k p) v_lower(p, t_j) dp up to the (T/2) interval scaling.
    The d and e columns splice the two branches of the inner integral where it
    crosses the diagonal; exactness of the splice shows up as continuity of
    K11 vs K12 (and K21 vs K22) along the diagonal.
    """
    t = grid.nodes
    kappa = potential.kappa
    half_t = grid.width / 2.0
    sin_t = np.sin(kappa * t)
    cos_t = np.cos(kappa * t)
    v1 = potential.eval_lower(t[:, None], t[None, :])
    v2 = potential.eval_upper(t[:, None], t[None, :])
    w_sin = ops.int_left * sin_t[None, :]  # W D_s
    v_cos = ops.int_right * cos_t[None, :]  # V D_c
    d = np.diag(w_sin @ (v1 - v2))
    e = np.diag(v_cos @ (v2 - v1))
    k11 = half_t * (d[None, :] + w_sin @ v2)
    k12 = half_t * (w_sin @ v1)
    k21 = half_t * (v_cos @ v2)
    k22 = half_t * (v_cos @ v1 + e[None, :])
    return k11, k12, k21, k22


@dataclass(frozen=True)
class SchrodingerSystem:
    grid: ChebGrid
    ops: SpectralOperators
    d_cos: np.ndarray  # cos(kappa * t_i)
    d_sin: np.ndarray
    v_lower: np.ndarray
    v_upper: np.ndarray
    k11: np.ndarray
    k12: np.ndarray
    k21: np.ndarray
    k22: np.ndarray
    matrix: np.ndarray
    rhs: np.ndarray
    kappa: float


def assemble(potential: NonlocalPotential, grid: ChebGrid, rhs_override=None) -> SchrodingerSystem:
    if not (grid.a == 0.0 and grid.b == potential.cutoff):
        raise ValueError(
            f"grid [{grid.a}, {grid.b}] must span [0, {potential.cutoff}]"
        )
    kappa = potential.kappa
    if not kappa > 0.0:
        raise ValueError(f"need kappa > 0, got {kappa}")
    ops = build_operators(grid.order)
    t = grid.nodes
    sin_t = np.sin(kappa * t)
    cos_t = np.cos(kappa * t)
    v1 = potential.eval_lower(t[:, None], t[None, :])
    v2 = potential.eval_upper(t[:, None], t[None, :])
    k11, k12, k21, k22 = build_kernel_matrices(potential, grid, ops)
    scale = grid.width / (2.0 * kappa)
    matrix = (
        np.eye(grid.order + 1)
        + scale * cos_t[:, None] * (schur_product(ops.int_left, k11) + schur_product(ops.int_right, k12))
        + scale * sin_t[:, None] * (schur_product(ops.int_left, k21) + schur_product(ops.int_right, k22))
    )
    if rhs_override is None:
        rhs = sin_t.copy()
    else:
        rhs = np.asarray(rhs_override(t), dtype=float)
        if rhs.shape != t.shape:
            raise ValueError(f"rhs override returned shape {rhs.shape}, expected {t.shape}")
    return SchrodingerSystem(
        grid=grid,
        ops=ops,
        d_cos=cos_t,
        d_sin=sin_t,
        v_lower=v1,
        v_upper=v2,
        k11=k11,
        k12=k12,
        k21=k21,
        k22=k22,
        matrix=matrix,
        rhs=rhs,
        kappa=kappa,
    )


def solve_schrodinger(potential: NonlocalPotential, order: int, rhs_override=None) -> ChebSolution:
    grid = cheb_grid(order, 0.0, potential.cutoff)
    system = assemble(potential, grid, rhs_override)
    vals, rcond, warn = dense_solve(system.matrix, system.rhs)
    coeffs = system.ops.cosine_inv @ vals
    return ChebSolution(
        grids=(grid,), values=(vals,), coeffs=(coeffs,), rcond=rcond, cond_warning=warn
    )


def self_convergence(potential: NonlocalPotential, order: int, rhs_override=None) -> float:
    """Relative sup distance between the order-n and order-2n solutions,
    measured at the order-n nodes through the finer solution's interpolant."""
    if order < 4:
        raise ValueError(f"need order >= 4, got {order}")
    coarse = solve_schrodinger(potential, order, rhs_override)
    fine = solve_schrodinger(potential, 2 * order, rhs_override)
    nodes = coarse.grids[0].nodes
    return relative_sup_error(coarse.node_values, fine.evaluate(nodes))
