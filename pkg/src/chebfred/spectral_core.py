"""Chebyshev grids and spectral integration operators.

Everything here lives on the reference interval [-1, 1].  The nodes are the
roots of T_{n+1} in descending order, so interpolation and quadrature are
spectrally accurate for smooth integrands.  The two integration operators map
samples of f at the nodes to samples of the running integrals from -1 up to
each node (``int_left``) and from each node up to +1 (``int_right``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChebGrid",
    "SpectralOperators",
    "chebyshev_nodes",
    "cosine_matrix",
    "inverse_cosine_matrix",
    "spectral_matrix_left",
    "spectral_matrix_right",
    "build_operators",
    "cheb_grid",
    "chebyshev_eval",
]


def chebyshev_nodes(n: int) -> np.ndarray:
    """Roots of T_{n+1}, descending.

    Parameters
    ----------
    n : int
        Polynomial order; the grid has n+1 points.

    Returns
    -------
    ndarray
        cos((2k+1)pi/(2(n+1))) for k = 0..n, strictly inside (-1, 1) and
        strictly decreasing.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    k = np.arange(n + 1)
    return np.cos((2 * k + 1) * np.pi / (2 * (n + 1)))


def cosine_matrix(n: int) -> np.ndarray:
    """Matrix C with C[k, j] = T_j(tau_k), built in closed form.

    T_j(cos theta) = cos(j theta), so no polynomial recurrence is needed and
    the entries are accurate to rounding for any order.  C maps Chebyshev
    coefficients to node values.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    k = np.arange(n + 1)[:, None]
    j = np.arange(n + 1)[None, :]
    return np.cos((2 * k + 1) * j * np.pi / (2 * (n + 1)))


def inverse_cosine_matrix(n: int, cosine: np.ndarray | None = None) -> np.ndarray:
    """Inverse of :func:`cosine_matrix`, i.e. the node-values-to-coefficients map.

    By discrete orthogonality of cosines at the first-kind points the inverse
    is a row-scaled transpose: diag(1/(n+1), 2/(n+1), ..., 2/(n+1)) @ C.T.
    """
    if cosine is None:
        cosine = cosine_matrix(n)
    scale = np.full(n + 1, 2.0 / (n + 1))
    scale[0] = 1.0 / (n + 1)
    return scale[:, None] * cosine.T


def _antiderivative_factor(n: int) -> np.ndarray:
    # Coefficient map of f -> int f: b_j = (a_{j-1} - a_{j+1})/(2j) for j >= 1,
    # truncated to degree n (the degree-(n+1) coefficient is dropped; it only
    # shifts node values by the constant a_n/(2(n+1)) since T_{n+1} vanishes
    # at the nodes).
    B = np.zeros((n + 1, n + 1))
    if n >= 1:
        B[1, 0] = 1.0
    if n >= 2:
        B[1, 2] = -0.5
    for j in range(2, n):
        B[j, j - 1] = 1.0 / (2 * j)
        B[j, j + 1] = -1.0 / (2 * j)
    if n >= 2:
        B[n, n - 1] = 1.0 / (2 * n)
    return B


def spectral_matrix_left(n: int) -> np.ndarray:
    """Coefficient-space map a(f) -> a(F) with F(x) = integral from -1 to x of f.

    Row 0 fixes the integration constant so that F(-1) = 0, using
    T_j(-1) = (-1)^j.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    B = _antiderivative_factor(n)
    L = np.eye(n + 1)
    j = np.arange(1, n + 1)
    L[0, 1:] = (-1.0) ** (j + 1)
    return L @ B


def spectral_matrix_right(n: int) -> np.ndarray:
    """Coefficient-space map for F(x) = integral from x to +1 of f (so F(1) = 0)."""
    if n < 1:
        raise ValueError("order must be >= 1")
    B = _antiderivative_factor(n)
    R = -np.eye(n + 1)
    R[0, :] = 1.0
    return R @ B


@dataclass(frozen=True)
class SpectralOperators:
    """Bundle of the order-n transforms and integration matrices.

    Attributes
    ----------
    order : int
    cosine, cosine_inv : ndarray
        Coefficients-to-values map and its inverse.
    coeff_int_left, coeff_int_right : ndarray
        Coefficient-space antiderivative maps.
    int_left, int_right : ndarray
        Node-space running-integral operators: (int_left @ f)[k] approximates
        the integral of f from -1 to tau_k; int_right integrates tau_k to 1.
    full_weights : ndarray
        Quadrature weights for the whole interval, ones @ coeff_int_left
        @ cosine_inv; strictly positive and summing to 2.
    """

    order: int
    cosine: np.ndarray
    cosine_inv: np.ndarray
    coeff_int_left: np.ndarray
    coeff_int_right: np.ndarray
    int_left: np.ndarray
    int_right: np.ndarray
    full_weights: np.ndarray


def build_operators(n: int) -> SpectralOperators:
    """Construct all order-n spectral operators.

    Cheap debug-mode sanity checks assert the O(n^2) row-sum identities; the
    full inverse and exactness checks live in the test suite.
    """
    C = cosine_matrix(n)
    Ci = inverse_cosine_matrix(n, C)
    SL = spectral_matrix_left(n)
    SR = spectral_matrix_right(n)
    W = C @ SL @ Ci
    V = C @ SR @ Ci
    sigma = np.ones(n + 1) @ SL @ Ci
    if __debug__:
        tau = chebyshev_nodes(n)
        scale = 1e-13 * max(1.0, n)
        assert np.max(np.abs(W @ np.ones(n + 1) - (tau + 1))) < scale
        assert np.max(np.abs(V @ np.ones(n + 1) - (1 - tau))) < scale
        assert np.max(np.abs((W + V) - sigma[None, :])) < scale
    return SpectralOperators(
        order=n,
        cosine=C,
        cosine_inv=Ci,
        coeff_int_left=SL,
        coeff_int_right=SR,
        int_left=W,
        int_right=V,
        full_weights=sigma,
    )


@dataclass(frozen=True)
class ChebGrid:
    """First-kind Chebyshev grid mapped onto [a, b].

    ``ref_nodes`` are the reference nodes on (-1, 1), ``nodes`` their affine
    images on (a, b); both descending.  ``order`` is the polynomial order, so
    there are order+1 points.
    """

    order: int
    a: float
    b: float
    ref_nodes: np.ndarray
    nodes: np.ndarray

    @property
    def width(self) -> float:
        return self.b - self.a

    def to_reference(self, t: np.ndarray) -> np.ndarray:
        """Map points of [a, b] back to the reference interval."""
        return (2.0 * np.asarray(t, dtype=float) - (self.a + self.b)) / (self.b - self.a)


def cheb_grid(n: int, a: float, b: float) -> ChebGrid:
    if not b > a:
        raise ValueError(f"need b > a, got [{a}, {b}]")
    ref = chebyshev_nodes(n)
    return ChebGrid(
        order=n,
        a=float(a),
        b=float(b),
        ref_nodes=ref,
        nodes=0.5 * (b - a) * ref + 0.5 * (a + b),
    )


def chebyshev_eval(coeffs: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Evaluate sum_j coeffs[j] T_j(x) by the three-term recurrence.

    ``x`` is on the reference interval; scalar or array.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    x = np.asarray(x, dtype=float)
    result = np.full_like(x, coeffs[0])
    if len(coeffs) == 1:
        return result
    t_prev = np.ones_like(x)
    t_cur = x.copy()
    result = result + coeffs[1] * t_cur
    for c in coeffs[2:]:
        t_next = 2.0 * x * t_cur - t_prev
        result = result + c * t_next
        t_prev, t_cur = t_cur, t_next
    return result
