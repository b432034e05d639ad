"""
最小特徵值 - 位移反迭代 (eigsh shift-invert)

位移 σ 由帶狀 Cholesky 二分法求得：A - σI 可分解即 σ < λ_min。
區間從 Gershgorin 下界與最小對角元開始，收窄到 λ_min 附近後交給 eigsh。
"""

import logging
from typing import Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.linalg import LinAlgError, cholesky_banded
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, eigsh
from scipy.sparse.linalg import norm as sparse_norm

from .config import SpectralConfig
from .exceptions import EigenSolverError

logger = logging.getLogger(__name__)


def gershgorin_lower(matrix) -> float:
    A = sp.csr_matrix(matrix)
    diagonal = A.diagonal()
    radius = np.asarray(abs(A).sum(axis=1)).ravel() - np.abs(diagonal)
    return float(np.min(diagonal - radius))


def bandwidth(matrix) -> int:
    A = sp.coo_matrix(matrix)
    if A.nnz == 0:
        return 0
    return int(np.max(np.abs(A.row - A.col)))


def lower_banded(matrix) -> np.ndarray:
    """對稱矩陣轉成 cholesky_banded(lower=True) 的儲存格式"""
    A = sp.csr_matrix(matrix)
    size = A.shape[0]
    width = bandwidth(A)
    ab = np.zeros((width + 1, size))
    for k in range(width + 1):
        ab[k, :size - k] = A.diagonal(-k)
    return ab


def _positive_definite(ab: np.ndarray, shift: float) -> bool:
    shifted = ab.copy()
    shifted[0] -= shift
    try:
        cholesky_banded(shifted, lower=True, check_finite=False)
    except LinAlgError:
        return False
    return True


def bracket_min_eig(matrix, rtol: Optional[float] = None, maxiter: Optional[int] = None) -> Tuple[float, float]:
    """
    二分法夾住 λ_min

    Returns:
        Tuple: (lo, hi)，A - lo·I 正定，λ_min ≤ hi，hi - lo ≤ rtol·max(1, |lo|)
    """
    rtol = SpectralConfig.BISECT_RTOL if rtol is None else rtol
    maxiter = SpectralConfig.BISECT_MAXITER if maxiter is None else maxiter
    ab = lower_banded(matrix)
    lo = gershgorin_lower(matrix) - 1.0
    hi = float(np.min(ab[0]))
    for _ in range(maxiter):
        if hi - lo <= rtol * max(1.0, abs(lo)):
            return lo, hi
        mid = 0.5 * (lo + hi)
        if _positive_definite(ab, mid):
            lo = mid
        else:
            hi = mid
    logger.error(f"λ_min 二分法在 {maxiter} 次內未收斂: [{lo:.6g}, {hi:.6g}]")
    raise EigenSolverError(f"λ_min 二分法在 {maxiter} 次內未收斂: [{lo:.6g}, {hi:.6g}]")


def eigen_residual(matrix, value: float, vector: np.ndarray) -> float:
    """‖Av - λv‖ / ‖v‖"""
    return float(np.linalg.norm(matrix @ vector - value * vector) / np.linalg.norm(vector))


def residual_tolerance(matrix) -> float:
    norm1 = float(sparse_norm(matrix, 1))
    return SpectralConfig.RESIDUAL_TOL + SpectralConfig.ROUNDOFF_FACTOR * np.finfo(float).eps * norm1


def min_eig(matrix, maxiter: Optional[int] = None, tol: Optional[float] = None) -> Tuple[float, np.ndarray, float]:
    """
    對稱帶狀矩陣的最小特徵值

    Args:
        matrix: 對稱稀疏矩陣
        maxiter: ARPACK 迭代上限
        tol: ARPACK 收斂容差

    Returns:
        Tuple: (λ_min, 單位特徵向量, 相對殘差)

    Raises:
        EigenSolverError: 不收斂，或殘差超過 1e-6 加捨入下限
    """
    maxiter = SpectralConfig.MAX_ITER if maxiter is None else maxiter
    tol = SpectralConfig.EIG_TOL if tol is None else tol
    A = sp.csc_matrix(matrix)
    sigma, upper = bracket_min_eig(A)
    v0 = np.ones(A.shape[0]) / np.sqrt(A.shape[0])
    try:
        values, vectors = eigsh(A, k=1, sigma=sigma, which="LM", tol=tol, maxiter=maxiter, v0=v0)
    except ArpackNoConvergence as e:
        logger.error(f"eigsh 在 {maxiter} 次迭代內未收斂: size={A.shape[0]}")
        raise EigenSolverError(f"eigsh 在 {maxiter} 次迭代內未收斂 (size={A.shape[0]})") from e
    except (ArpackError, RuntimeError) as e:
        logger.error(f"eigsh 執行失敗: {str(e)}")
        raise EigenSolverError(f"eigsh 執行失敗: {str(e)}") from e

    value = float(values[0])
    vector = vectors[:, 0] / np.linalg.norm(vectors[:, 0])
    residual = eigen_residual(A, value, vector)
    limit = residual_tolerance(A)
    if residual > limit:
        logger.error(f"特徵對殘差過大: {residual:.3e} > {limit:.3e}")
        raise EigenSolverError(f"特徵對殘差 {residual:.3e} 超過 {limit:.3e}")
    logger.debug(f"λ_min={value:.10g}, residual={residual:.2e}, 位移區間=[{sigma:.6g}, {upper:.6g}]")
    return value, vector, residual
