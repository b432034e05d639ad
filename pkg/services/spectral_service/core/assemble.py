"""
二次型離散化 - 分段線性元素、集中質量、自然邊界

對分段線性的 b，∫|∂r b|² 精確等於 bᵀKb；位能項用梯形公式 Σ wᵢVᵢbᵢ²。
兩者相加就是連續二次型在該 b 上的求積值，特徵問題 (K + WV)v = λWv
經 W^{-1/2} 對稱化後交給 eigsh。
"""

import logging
from typing import Optional

import numpy as np
import scipy.sparse as sp

from services.expansion_service import ApproxConfig, build_uK
from services.field_service import InterfaceGeometry
from services.potential_service import Df_at, fA_at, fB_at
from services.profile_service import ProfileParams, ProfileTable, build_table

from .models import FormMatrix, FormSpec

logger = logging.getLogger(__name__)


def lumped_weights(nodes: int, h: float) -> np.ndarray:
    w = np.full(nodes, h)
    w[0] = w[-1] = 0.5 * h
    return w


def stiffness_matrix(nodes: int, h: float):
    """自由端點的剛度矩陣，兩端對角是 1/h"""
    main = np.full(nodes, 2.0 / h)
    main[0] = main[-1] = 1.0 / h
    off = np.full(nodes - 1, -1.0 / h)
    return sp.diags([off, main, off], [-1, 0, 1], format="csr")


def profile_table(spec: FormSpec, table: Optional[ProfileTable] = None) -> ProfileTable:
    if table is None:
        return build_table(ProfileParams(a=spec.a, b=spec.b))
    if (table.params.a, table.params.b) != (spec.a, spec.b):
        raise ValueError(f"剖面表參數 (a={table.params.a}, b={table.params.b}) 與 (a={spec.a}, b={spec.b}) 不符")
    return table


def theta_values(eps: float, r, table: ProfileTable):
    """(θ₁,ε, θ₂,ε) = (ρ₀'(r/ε), ρ₀(r/ε))"""
    z = np.asarray(r, dtype=float) / eps
    return table.rho0_prime_eval(z), table.rho0_eval(z)


def uK_cross_section(spec: FormSpec, r, table: ProfileTable) -> np.ndarray:
    """平面截面 d₀ = r 上的 u^K (K=0)，形狀 (N, n)"""
    cfg = ApproxConfig(a=spec.a, b=spec.b, n=spec.n, m=1, K=0, eps=spec.eps, delta=spec.delta,
                       geometry=InterfaceGeometry(kind="planar", axis=0, offset=0.0),
                       phi_gamma=spec.phi_gamma, slope_minus=spec.slope_minus, slope_plus=spec.slope_plus)
    solution = build_uK(cfg, table)
    return solution(np.asarray(r, dtype=float)[:, None])


def potential_values(spec: FormSpec, r, table: ProfileTable) -> np.ndarray:
    """ε⁻²·係數；純量型回傳 (N,)，vector 型回傳 (N, n, n)"""
    r = np.asarray(r, dtype=float)
    if spec.plumbing:
        return np.zeros(r.shape) if spec.width == 1 else np.zeros(r.shape + (spec.n, spec.n))
    if spec.kind == "vector":
        return Df_at(uK_cross_section(spec, r, table), spec.potential) / spec.eps ** 2
    _, theta2 = theta_values(spec.eps, r, table)
    coefficient = fA_at if spec.kind == "q0" else fB_at
    return coefficient(theta2, spec.potential) / spec.eps ** 2


def _block_diagonal(blocks: np.ndarray):
    count = blocks.shape[0]
    return sp.bsr_matrix((blocks, np.arange(count), np.arange(count + 1)),
                         shape=(count * blocks.shape[1], count * blocks.shape[2]))


def assemble(spec: FormSpec, table: Optional[ProfileTable] = None) -> FormMatrix:
    """
    組裝對稱矩陣

    Args:
        spec: 二次型設定
        table: 剖面表，省略時依 a, b 建表

    Returns:
        FormMatrix: 純量型是三對角；vector 型按節點排序，每個節點一個 n×n 區塊
    """
    table = profile_table(spec, table)
    nodes = spec.resolution
    h = 2.0 / (nodes - 1)
    r = spec.grid()
    K = stiffness_matrix(nodes, h)
    w = lumped_weights(nodes, h)
    V = potential_values(spec, r, table)

    if spec.boundary == "dirichlet":
        inner = slice(1, -1)
        K = K[inner, inner]
        w, r, V = w[inner], r[inner], V[inner]

    scale = sp.diags(1.0 / np.sqrt(w))
    K_sym = (scale @ K @ scale).tocsr()
    if spec.width == 1:
        A = K_sym + sp.diags(V)
    else:
        A = sp.kron(K_sym, sp.identity(spec.n), format="csr") + _block_diagonal(V).tocsr()
    A = A.tocsr()
    logger.info(f"二次型組裝完成: kind={spec.kind}, eps={spec.eps}, nodes={nodes}, size={A.shape[0]}")
    return FormMatrix(spec=spec, matrix=A, r=r, weights=w, stiffness=K, potential=V)


def _as_columns(fm: FormMatrix, b) -> np.ndarray:
    b = np.asarray(b, dtype=float)
    return b.reshape(len(fm.r), fm.spec.width)


def form_value(fm: FormMatrix, b) -> float:
    """離散二次型 Σ_k b_kᵀ K b_k + Σ wᵢ bᵢ·Vᵢ bᵢ"""
    cols = _as_columns(fm, b)
    gradient = float(np.sum(cols * (fm.stiffness @ cols)))
    if fm.spec.width == 1:
        potential = float(np.sum(fm.weights * fm.potential * cols[:, 0] ** 2))
    else:
        potential = float(np.sum(fm.weights * np.einsum("ni,nij,nj->n", cols, fm.potential, cols)))
    return gradient + potential


def l2_norm2(fm: FormMatrix, b) -> float:
    cols = _as_columns(fm, b)
    return float(np.sum(fm.weights[:, None] * cols ** 2))


def to_function(fm: FormMatrix, y) -> np.ndarray:
    """對稱化座標 y 轉回節點值 b = W^{-1/2}y"""
    cols = np.asarray(y, dtype=float).reshape(len(fm.r), fm.spec.width) / np.sqrt(fm.weights)[:, None]
    return cols[:, 0] if fm.spec.width == 1 else cols


def layer_mass(fm: FormMatrix, b, width: float) -> float:
    """|r| ≤ width·ε 內的 L² 質量比例"""
    cols = _as_columns(fm, b)
    density = fm.weights * np.sum(cols ** 2, axis=1)
    total = float(np.sum(density))
    if total == 0.0:
        return 0.0
    return float(np.sum(density[np.abs(fm.r) <= width * fm.spec.eps])) / total
