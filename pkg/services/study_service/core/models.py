"""
收斂研究數據模型 - 指令參數、收斂表的一列、誤差能量與摘要
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from services.profile_service import ProfileConfig
from services.sharp_service import SharpResult, extinction_time
from services.spectral_service import FORM_KINDS, SpectralConfig

from .config import StudyConfig

CONVERGENCE_COLUMNS = [
    "eps", "t_probe", "nx", "dt",
    "interface_error", "bulk_modulus_error_plus", "bulk_modulus_error_minus",
    "director_error", "jump_mismatch", "error_energy", "max_energy_increase",
]
RATE_METRICS = [
    "interface_error", "bulk_modulus_error_plus", "bulk_modulus_error_minus", "director_error", "jump_mismatch",
]
ENERGY_NOTE = ("error_energy 是 E(u^ε - u^K) 的趨勢診斷：u^K 只做到 K ≤ 1，"
               "低於 K = k+1 的要求，不是 ε^{2k} 上界的驗證")


def split_floats(value):
    """'0.1, 0.05' 或 '(0.1, 0.05)' 轉成 tuple"""
    if isinstance(value, str):
        text = value.strip().strip("()[]").replace(" ", "")
        return tuple(float(v) for v in text.split(",") if v)
    return value


def _check_eps_list(eps_list: Tuple[float, ...]) -> None:
    if not eps_list or any(e <= 0 for e in eps_list):
        raise ValueError(f"eps_list 必須是正數列表: {eps_list}")
    if any(x <= y for x, y in zip(eps_list, eps_list[1:])):
        raise ValueError(f"eps_list 必須嚴格遞減: {eps_list}")


class ConvergeRunConfig(BaseModel):
    """
    converge 指令的參數

    m=2 是徑向收縮圓，m=1 是對稱平面層 (介面不動)。nx_list 省略時依 ε 決定網格，
    給定時長度必須與 eps_list 相同。
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = 1.0
    b: float = 2.0
    m: int = 2
    n: int = 2
    radius: float = StudyConfig.RADIUS
    length: float = 1.0
    eps_list: Tuple[float, ...] = StudyConfig.EPS_LIST
    t_probe: float = StudyConfig.T_PROBE
    nx_list: Optional[Tuple[int, ...]] = None
    dt_factor: float = StudyConfig.DT_FACTOR
    phi_gamma: float = 0.0
    slope_minus: float = 1.0
    slope_plus: float = 0.25
    collar_factor: float = StudyConfig.COLLAR_FACTOR
    sharp_nx: int = StudyConfig.SHARP_NODES
    out_dir: Optional[str] = None

    @field_validator("eps_list", mode="before")
    @classmethod
    def _split_eps(cls, value):
        return split_floats(value)

    @field_validator("nx_list", mode="before")
    @classmethod
    def _split_nx(cls, value):
        if isinstance(value, str):
            return tuple(int(round(v)) for v in split_floats(value))
        return value

    @model_validator(mode="after")
    def _check(self) -> "ConvergeRunConfig":
        if not 0 < self.a < self.b:
            raise ValueError(f"需要 0 < a < b，收到 a={self.a}, b={self.b}")
        if self.m not in (1, 2) or self.n < 2:
            raise ValueError(f"需要 m ∈ {{1, 2}} 且 n ≥ 2: m={self.m}, n={self.n}")
        if not 0 < self.radius < self.length:
            raise ValueError(f"介面半徑 {self.radius} 必須落在 (0, {self.length})")
        _check_eps_list(self.eps_list)
        if not 0 < self.t_probe < extinction_time(self.radius, self.m):
            raise ValueError(f"t_probe={self.t_probe} 必須在 (0, 消失時間) 內")
        if self.nx_list is not None:
            if len(self.nx_list) != len(self.eps_list):
                raise ValueError(f"nx_list 長度 {len(self.nx_list)} 與 eps_list 長度 {len(self.eps_list)} 不符")
            if any(nx < 8 for nx in self.nx_list):
                raise ValueError(f"nx_list 每項至少為 8: {self.nx_list}")
        if not 0 < self.dt_factor <= 1:
            raise ValueError(f"dt_factor 必須在 (0, 1]: {self.dt_factor}")
        if not self.collar_factor > 0 or self.sharp_nx < 8:
            raise ValueError(f"collar_factor 必須為正且 sharp_nx ≥ 8: {self.collar_factor}, {self.sharp_nx}")
        return self

    def nodes(self, index: int) -> int:
        if self.nx_list is not None:
            return self.nx_list[index]
        return StudyConfig.diffuse_nodes(self.eps_list[index], self.length)

    @property
    def energy_k(self) -> int:
        return error_energy_k(self.m)


class SpectrumRunConfig(BaseModel):
    """spectrum 指令的參數"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    form: str = "q1"
    a: float = 1.0
    b: float = 2.0
    n: int = 2
    eps_list: Tuple[float, ...] = (0.1, 0.05, 0.025, 0.0125)
    nodes: Optional[int] = None
    k_res: int = SpectralConfig.K_RES
    boundary: str = "free"
    phi_gamma: float = 0.0
    slope_minus: float = 0.0
    slope_plus: float = 0.0
    bound: Optional[float] = None
    check_refinement: bool = True
    out: Optional[str] = None

    @field_validator("eps_list", mode="before")
    @classmethod
    def _split(cls, value):
        return split_floats(value)

    @model_validator(mode="after")
    def _check(self) -> "SpectrumRunConfig":
        if self.form not in FORM_KINDS:
            raise ValueError(f"form 只能是 {FORM_KINDS}: {self.form}")
        _check_eps_list(self.eps_list)
        return self


class ProfileRunConfig(BaseModel):
    """profile 指令的參數"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = ProfileConfig.A
    b: float = ProfileConfig.B
    z_max: float = ProfileConfig.Z_MAX
    nodes: int = ProfileConfig.NODES
    out_dir: Optional[str] = None


class CompatRunConfig(BaseModel):
    """compat-check 指令的參數"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = 1.0
    b: float = 2.0
    n: int = 2
    m: int = 2
    radius: float = StudyConfig.RADIUS
    phi_gamma: float = 0.0
    slope_minus: float = 1.0
    slope_plus: float = 0.25
    weight: str = "eta1"
    out_dir: Optional[str] = None

    @model_validator(mode="after")
    def _check(self) -> "CompatRunConfig":
        if not 0 < self.a < self.b:
            raise ValueError(f"需要 0 < a < b，收到 a={self.a}, b={self.b}")
        if self.weight not in ("eta1", "profile"):
            raise ValueError(f"weight 只能是 eta1 或 profile: {self.weight}")
        if not self.radius > 0:
            raise ValueError(f"radius 必須為正: {self.radius}")
        return self


def error_energy_k(m: int) -> int:
    """k = 3([m/2]+1)+3"""
    return 3 * (m // 2 + 1) + 3


@dataclass(frozen=True)
class ErrorEnergy:
    """E(u) = Σ_{i=0}^{[m/2]+1} ε^{6i}∫‖∂ⁱu‖²；terms 是未乘權重的各階積分"""
    eps: float
    k: int
    value: float
    terms: Tuple[float, ...] = ()


@dataclass
class ConvergenceRow:
    eps: float
    t_probe: float
    nx: int
    dt: float
    interface_error: float
    bulk_modulus_error_plus: float
    bulk_modulus_error_minus: float
    director_error: float
    jump_mismatch: float
    error_energy: float = math.nan
    max_energy_increase: float = math.nan

    def row(self) -> dict:
        return {column: getattr(self, column) for column in CONVERGENCE_COLUMNS}

    @property
    def valid(self) -> bool:
        """所有誤差欄位有限且非負"""
        values = [getattr(self, column) for column in RATE_METRICS]
        return all(math.isfinite(v) and v >= 0.0 for v in values)


@dataclass
class ConvergeResult:
    config: ConvergeRunConfig
    rows: List[ConvergenceRow]
    sharp: SharpResult
    energies: List[ErrorEnergy] = field(default_factory=list)
    dissipative: List[bool] = field(default_factory=list)
    files: dict = field(default_factory=dict)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.row() for r in self.rows], columns=CONVERGENCE_COLUMNS)


class StudySummary(BaseModel):
    """summary.json 的內容；沒有結果時 rows 與 rates 為空"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    config_hash: Optional[str] = None
    config: Dict[str, str] = {}
    energy_k: Optional[int] = None
    energy_note: str = ENERGY_NOTE
    rows: List[Dict[str, float]] = []
    rates: List[Dict[str, float]] = []
    slopes: Dict[str, float] = {}
    files: List[str] = []
