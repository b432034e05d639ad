"""
時間推進 - 顯式 Euler 或 IMEX (擴散隱式、反應顯式)

    explicit:  u' = u + dt(Δu - ε⁻²f(u))
    imex:      (I - dt·L)u' = u - dt·ε⁻²f(u) + dt·source·u_D

L 與 source 來自 field_service.laplacian_matrix，每個分量共用同一個 LU 分解。
"""

import logging
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from services.field_service import VectorField, laplacian_matrix, laplacian_values
from services.potential_service import f_at

from .exceptions import BlowUpError, DiffuseServiceError, StabilityError
from .models import DiffuseRunConfig

logger = logging.getLogger(__name__)


def check_stability(cfg: DiffuseRunConfig) -> None:
    limit = cfg.dt_limit
    if cfg.dt > limit:
        logger.error(f"dt={cfg.dt} 超過 {cfg.scheme} 穩定上限 {limit:.3e}")
        raise StabilityError(f"dt={cfg.dt} 超過 {cfg.scheme} 格式的穩定上限 {limit:.3e} "
                             f"(h={cfg.h:.3e}, eps={cfg.eps}, c={cfg.stability_c})")


class Stepper:
    """
    單一 run 的推進器

    IMEX 的矩陣 I - dt·L 在建構時分解一次，之後每步只做回代。
    """

    def __init__(self, cfg: DiffuseRunConfig, grid=None):
        check_stability(cfg)
        self.cfg = cfg
        self.grid = cfg.grid_model() if grid is None else grid
        self.params = cfg.potential
        self._lu = None
        self._source = None
        if cfg.scheme == "imex":
            L, source = laplacian_matrix(self.grid)
            system = (sp.identity(L.shape[0], format="csc") - cfg.dt * L).tocsc()
            try:
                self._lu = splu(system)
            except RuntimeError as e:
                logger.error(f"IMEX 矩陣分解失敗: {str(e)}")
                raise DiffuseServiceError(f"IMEX 矩陣分解失敗: {str(e)}") from e
            self._source = source

    def reaction(self, values: np.ndarray) -> np.ndarray:
        """ε⁻²f(u)"""
        return f_at(values, self.params) / self.cfg.eps ** 2

    def __call__(self, field: VectorField, t: float = 0.0) -> VectorField:
        """
        推進一步

        Args:
            field: 目前的場
            t: 推進後的時間，只用於錯誤訊息

        Raises:
            BlowUpError: 新的場出現 NaN 或 Inf
        """
        dt = self.cfg.dt
        u = field.values
        if self._lu is None:
            new = u + dt * (laplacian_values(self.grid, u, field.boundary) - self.reaction(u))
        else:
            flat = u.reshape(-1, field.n)
            rhs = flat - dt * self.reaction(flat)
            if field.boundary is not None:
                rhs = rhs + dt * self._source[:, None] * field.boundary[None, :]
            new = self._lu.solve(np.asfortranarray(rhs)).reshape(u.shape)

        if not np.all(np.isfinite(new)):
            with np.errstate(invalid="ignore", over="ignore"):
                modulus = np.linalg.norm(new, axis=-1)
            max_modulus = float(np.nanmax(modulus)) if not np.all(np.isnan(modulus)) else float("nan")
            logger.error(f"t={t:.6g} 數值爆炸，max|u|={max_modulus:.3e}")
            raise BlowUpError(f"t={t:.6g} 出現非有限值 (max|u|={max_modulus:.3e})", t=t, max_modulus=max_modulus)
        return field.with_values(new)


def step(field: VectorField, cfg: DiffuseRunConfig, stepper: Optional[Stepper] = None, t: float = 0.0) -> VectorField:
    """u → u'；沒給 stepper 就臨時建一個"""
    if stepper is None:
        stepper = Stepper(cfg, field.grid)
    return stepper(field, t)
