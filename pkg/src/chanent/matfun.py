"""Dense complex matrix utilities.

Everything here operates on plain numpy arrays. Matrices are small (the
rest of the package never goes past dimension ~64), so eigendecompositions
and SVDs are used freely instead of iterative methods.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg

__all__ = [
    "NotPSDError",
    "DegenerateSpectrumError",
    "NoRealLogError",
    "reshuffle",
    "partial_trace",
    "kron",
    "hermitize",
    "psd_sqrt",
    "polar",
    "sqrt_product",
    "schur_positive",
    "sqrt2x2",
    "stochastic3_log",
    "matrix_exp",
]

class NotPSDError(ValueError):
    """Matrix expected to be positive semi-definite is not."""


class DegenerateSpectrumError(ValueError):
    """Spectrum too degenerate for the closed-form construction."""


class NoRealLogError(ValueError):
    """Matrix has no real logarithm (non-positive or complex spectrum)."""


def hermitize(m: np.ndarray) -> np.ndarray:
    """Return the Hermitian part (m + m†)/2."""
    return (m + m.conj().T) / 2


def reshuffle(m: np.ndarray) -> np.ndarray:
    """Permute the indices of an N²×N² matrix: out[(i,j),(k,l)] = m[(i,k),(j,l)].

    This is the involution relating the superoperator matrix of a map to
    its dynamical matrix. Composite indices are row-major, so (i,j) means
    row i*N + j.
    """
    m = np.asarray(m)
    d = m.shape[0]
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("reshuffle needs a square matrix")
    n = math.isqrt(d)
    if n * n != d:
        raise ValueError(f"dimension {d} is not a perfect square")
    return m.reshape(n, n, n, n).transpose(0, 2, 1, 3).reshape(d, d)


def partial_trace(m: np.ndarray, dims: tuple[int, int], which: int) -> np.ndarray:
    """Trace out subsystem `which` (1 or 2) of a matrix on C^d1 ⊗ C^d2.

    Tracing the second factor returns a d1×d1 matrix, tracing the first a
    d2×d2 one; the total trace is preserved.
    """
    m = np.asarray(m)
    d1, d2 = dims
    if m.shape != (d1 * d2, d1 * d2):
        raise ValueError(f"matrix shape {m.shape} does not match dims {dims}")
    t = m.reshape(d1, d2, d1, d2)
    if which == 2:
        return np.einsum("ijkj->ik", t)
    if which == 1:
        return np.einsum("ijil->jl", t)
    raise ValueError("which must be 1 or 2")


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, row-major index composition: (a⊗b)[(i,j),(k,l)] = a[i,k]b[j,l]."""
    return np.kron(np.asarray(a), np.asarray(b))


def _clipped_eigh(h: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix with small negatives clipped.

    Eigenvalues below -tol raise NotPSDError; values in [-tol, 0) become 0.
    """
    w, v = np.linalg.eigh(hermitize(h))
    if w.min(initial=0.0) < -tol:
        raise NotPSDError(f"min eigenvalue {w.min():.3e} below -{tol:.0e}")
    return np.clip(w, 0.0, None), v


def psd_sqrt(h: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Principal square root of a PSD Hermitian matrix."""
    w, v = _clipped_eigh(h, tol)
    return hermitize((v * np.sqrt(w)) @ v.conj().T)


def psd_inv_sqrt(h: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Inverse square root of a positive definite Hermitian matrix."""
    w, v = _clipped_eigh(h, tol)
    if w.min() <= tol:
        raise NotPSDError("matrix is singular, inverse square root undefined")
    return hermitize((v / np.sqrt(w)) @ v.conj().T)


def polar(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Left polar decomposition x = P @ W with P PSD Hermitian and W unitary.

    For rank-deficient x the unitary part is completed on the null space of
    P (through the SVD pairing), so W is always exactly unitary.
    """
    u, s, vh = np.linalg.svd(np.asarray(x, dtype=complex))
    p = hermitize((u * s) @ u.conj().T)
    w = u @ vh
    return p, w


def sqrt_product(rho: np.ndarray, sigma: np.ndarray, eps: float = 1e-9) -> np.ndarray:
    """Square root of the product of two density matrices.

    Returns rho^{1/2} (rho^{1/2} sigma rho^{1/2})^{1/2} rho^{-1/2}. Its trace
    is the root fidelity of the pair. A singular rho is replaced by
    (1-eps) rho + eps I/N before inverting; pass eps=0 to disable the
    regularization and get an error instead.
    """
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0]
    w = np.linalg.eigvalsh(hermitize(rho))
    if w.min() <= 1e-10:
        if not eps:
            raise NotPSDError("rho is singular and regularization is disabled")
        rho = (1 - eps) * rho + eps * np.eye(n) / n
    sr = psd_sqrt(rho)
    return sr @ psd_sqrt(sr @ sigma @ sr) @ psd_inv_sqrt(rho)


def schur_positive(
    a: np.ndarray,
    b: np.ndarray,
    c: np.ndarray,
    tol_pd: float = 1e-12,
    tol_psd: float = 1e-10,
) -> bool:
    """Whether the block matrix [[a, b], [b†, c]] is PSD, via the Schur complement.

    Requires a to be Hermitian positive definite; then positivity of the
    block matrix is equivalent to c - b† a^{-1} b being PSD.
    """
    a = np.asarray(a, dtype=complex)
    wa = np.linalg.eigvalsh(hermitize(a))
    if wa.min() <= tol_pd:
        raise NotPSDError("block A must be positive definite")
    comp = hermitize(np.asarray(c) - np.asarray(b).conj().T @ np.linalg.solve(a, b))
    return bool(np.linalg.eigvalsh(comp).min() >= -tol_psd)


def sqrt2x2(x: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Square root of a 2×2 PSD matrix via (x + sqrt(det x) I)/tr sqrt(x)."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (2, 2):
        raise ValueError("sqrt2x2 needs a 2×2 matrix")
    det = np.linalg.det(x).real
    tr = np.trace(x).real
    if tr < -tol or det < -max(tol, tol * tr * tr):
        raise NotPSDError("matrix is not PSD")
    det = max(det, 0.0)
    tr_sqrt = math.sqrt(max(tr + 2 * math.sqrt(det), 0.0))
    if tr_sqrt <= tol:
        raise ValueError("zero matrix has no normalized square root")
    return (x + math.sqrt(det) * np.eye(2)) / tr_sqrt


def _stochastic3_check(f: np.ndarray, tol: float) -> None:
    if f.shape != (3, 3):
        raise ValueError("expected a 3×3 matrix")
    if np.abs(f.imag).max(initial=0.0) > tol:
        raise ValueError("expected a real matrix")
    if np.max(np.abs(f.sum(axis=0) - 1.0)) > 1e-12:
        raise ValueError("columns must sum to 1")
    if f.min() < -1e-14:
        raise ValueError("entries must be nonnegative")


def stochastic3_xy(f: np.ndarray) -> tuple[float, float]:
    """The (x, y) parameters of a 3×3 stochastic matrix with spectrum {1, x+y, x-y}."""
    f = np.asarray(f, dtype=float)
    tr = float(np.trace(f))
    x = (tr - 1.0) / 2.0
    disc = 2.0 * float(np.trace(f @ f)) - tr * tr + 2.0 * tr - 3.0
    if disc < -1e-12:
        raise NoRealLogError(f"complex eigenvalue pair (discriminant {disc:.3e})")
    y = 0.5 * math.sqrt(max(disc, 0.0))
    return x, y


def stochastic3_log(
    f: np.ndarray, tol: float = 1e-9, coeff_tol: float = 1e-12
) -> tuple[np.ndarray, tuple[float, float, float]]:
    """Analytic logarithm of a 3×3 column-stochastic matrix with spectrum {1, x+y, x-y}.

    The log is assembled from the spectral projectors (Z² ± Z)/2 built out
    of F itself, without diagonalizing. Terms coeff·log(eig) with
    |coeff| <= coeff_tol are set to 0, so boundary points with a zero
    eigenvalue evaluate by continuity. Returns (L, spectrum).
    """
    f = np.asarray(f, dtype=float)
    _stochastic3_check(f.astype(complex), tol)
    if np.abs(f - np.eye(3)).max() <= coeff_tol:
        return np.zeros((3, 3)), (1.0, 1.0, 1.0)
    x, y = stochastic3_xy(f)
    lam_p, lam_m = x + y, x - y
    for lam in (lam_p, lam_m):
        if lam < -coeff_tol or lam > 1.0 + 1e-12:
            raise NoRealLogError(f"eigenvalue {lam:.6g} outside (0, 1]")
    denom = y * y - (x - 1.0) ** 2
    if abs(denom) < 1e-12 or y < 1e-12:
        raise DegenerateSpectrumError(
            "y² = (x-1)² or y = 0: fall back to an eigensolver"
        )
    g = f - np.eye(3)
    z2 = g @ (g - 2.0 * (x - 1.0) * np.eye(3)) / denom
    z = (g - (x - 1.0) * z2) / y
    proj_p = (z2 + z) / 2.0
    proj_m = (z2 - z) / 2.0

    def term(proj: np.ndarray, lam: float) -> np.ndarray:
        out = np.zeros((3, 3))
        mask = np.abs(proj) > coeff_tol
        if mask.any():
            if lam <= 0.0:
                raise NoRealLogError("zero eigenvalue with nonzero projector entry")
            out[mask] = proj[mask] * math.log(lam)
        return out

    log_f = term(proj_p, lam_p) + term(proj_m, lam_m)
    return log_f, (1.0, lam_p, lam_m)


def matrix_exp(m: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring, via scipy)."""
    return scipy.linalg.expm(np.asarray(m))
