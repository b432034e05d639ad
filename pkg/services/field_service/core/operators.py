"""
差分算子 - 二階中心 Laplacian、前向梯度、離散內積

週期網格用 np.roll；徑向網格用有限體積形式
(Δu)_i = [r_{i+½}^{m-1}(u_{i+1}-u_i) - r_{i-½}^{m-1}(u_i-u_{i-1})] / (r_i^{m-1} h²)，
r=0 的面通量為零，外邊界用 Dirichlet 鬼點或零通量。
兩種網格上 ⟨Δu, v⟩ = -⟨∇u, ∇v⟩ 都精確成立 (內積用 weights() 加權)。
"""

import numpy as np
import scipy.sparse as sp

from .exceptions import GridError
from .models import OuterBoundary, PeriodicGrid, RadialGrid, VectorField


def _radial_fluxes(grid: RadialGrid, values: np.ndarray, boundary):
    """所有面上的通量 r^{m-1}∂r u，形狀 (N+1, n)，第 0 個是 r=0"""
    h = grid.h
    n = values.shape[-1]
    flux = np.zeros((grid.size + 1, n))
    flux[1:-1] = grid.radial_weight(grid.faces)[:, None] * np.diff(values, axis=0) / h
    if grid.outer_bc == OuterBoundary.DIRICHLET:
        if boundary is None:
            raise GridError("Dirichlet 外邊界缺少邊界值")
        flux[-1] = grid.radial_weight(grid.length) * 2.0 * (boundary - values[-1]) / h
    return flux


def laplacian_values(grid, values: np.ndarray, boundary=None) -> np.ndarray:
    """對陣列直接套用 Laplacian，values 形狀 (*shape, n)"""
    values = np.asarray(values, dtype=float)
    if isinstance(grid, PeriodicGrid):
        out = np.zeros_like(values)
        for axis, h in enumerate(grid.spacing):
            out += (np.roll(values, -1, axis=axis) - 2.0 * values + np.roll(values, 1, axis=axis)) / h ** 2
        return out
    if isinstance(grid, RadialGrid):
        flux = _radial_fluxes(grid, values, boundary)
        return np.diff(flux, axis=0) / (grid.radial_weight(grid.radii)[:, None] * grid.h)
    raise GridError(f"不支援的網格類型: {type(grid).__name__}")


def laplacian(field: VectorField) -> VectorField:
    """逐分量二階中心差分"""
    return field.with_values(laplacian_values(field.grid, field.values, field.boundary))


def _periodic_1d(N: int, h: float):
    main = -2.0 * np.ones(N)
    off = np.ones(N - 1)
    L = sp.diags([off, main, off], [-1, 0, 1], shape=(N, N), format="lil")
    L[0, N - 1] = 1.0
    L[N - 1, 0] = 1.0
    return L.tocsr() / h ** 2


def laplacian_matrix(grid):
    """
    稀疏 Laplacian

    Returns:
        (L, source): Δu = L @ u + source[:, None] * u_D；週期網格 source 全為零。
        展平順序與 values.reshape(-1, n) 一致 (C order)。
    """
    if isinstance(grid, PeriodicGrid):
        blocks = [_periodic_1d(N, h) for N, h in zip(grid.sizes, grid.spacing)]
        if grid.m == 1:
            return blocks[0], np.zeros(grid.sizes[0])
        Ix = sp.identity(grid.sizes[0], format="csr")
        Iy = sp.identity(grid.sizes[1], format="csr")
        L = sp.kron(blocks[0], Iy, format="csr") + sp.kron(Ix, blocks[1], format="csr")
        return L, np.zeros(L.shape[0])
    if isinstance(grid, RadialGrid):
        N, h = grid.size, grid.h
        wc = grid.radial_weight(grid.radii) * h ** 2
        wf = grid.radial_weight(grid.faces)
        lower = wf / wc[1:]
        upper = wf / wc[:-1]
        diag = np.zeros(N)
        diag[:-1] -= wf / wc[:-1]
        diag[1:] -= wf / wc[1:]
        source = np.zeros(N)
        if grid.outer_bc == OuterBoundary.DIRICHLET:
            edge = 2.0 * grid.radial_weight(grid.length) / wc[-1]
            diag[-1] -= edge
            source[-1] = edge
        L = sp.diags([lower, diag, upper], [-1, 0, 1], shape=(N, N), format="csr")
        return L, source
    raise GridError(f"不支援的網格類型: {type(grid).__name__}")


def forward_gradient(field: VectorField) -> np.ndarray:
    """週期網格上的前向差分，形狀 (*shape, m, n)"""
    grid = field.grid
    if not isinstance(grid, PeriodicGrid):
        raise GridError("forward_gradient 只用於週期網格，徑向網格沒有逐點梯度")
    parts = [(np.roll(field.values, -1, axis=axis) - field.values) / h for axis, h in enumerate(grid.spacing)]
    return np.stack(parts, axis=-2)


def inner_product(u: VectorField, v: VectorField) -> float:
    """⟨u, v⟩ = Σ w_i u_i·v_i"""
    return float(np.sum(u.grid.weights() * np.sum(u.values * v.values, axis=-1)))


def gradient_inner_product(u: VectorField, v: VectorField) -> float:
    """⟨∇u, ∇v⟩，和 laplacian 的離散分部積分配對"""
    grid = u.grid
    if isinstance(grid, PeriodicGrid):
        gu, gv = forward_gradient(u), forward_gradient(v)
        return float(grid.cell_volume * np.sum(gu * gv))
    fu = _radial_fluxes(grid, u.values, u.boundary)
    fv = _radial_fluxes(grid, v.values, v.boundary)
    inner_w = grid.radial_weight(grid.faces)[:, None]
    total = np.sum(fu[1:-1] * fv[1:-1] / inner_w) * grid.h
    if grid.outer_bc == OuterBoundary.DIRICHLET:
        # 鬼點面只佔半格
        total += np.sum(fu[-1] * fv[-1]) / grid.radial_weight(grid.length) * 0.5 * grid.h
    return float(grid.measure * total)
