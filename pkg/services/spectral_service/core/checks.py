"""
下界估計的輔助檢查

- 端點估計 |b(±1)|² ≤ Cε(Q₀(b) + ∫b²) 的比值掃描
- Rayleigh 上界 λ_min ≤ form(b)/‖b‖²
- 剖面特徵恆等式 ε²θ₁'' = θ₁f_A(θ₂)、ε²θ₂'' = θ₂f_B(θ₂)
- 修正項 (1/ε)ρ₁f_C(θ₂) 的一致上界
- 剖面函數上的二次型等於邊界項
"""

import logging
import math
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from services.expansion_service import loglog_slope
from services.potential_service import fA_at, fB_at, fC_at
from services.profile_service import ProfileParams, ProfileTable

from .assemble import assemble, form_value, l2_norm2, profile_table, theta_values
from .config import SpectralConfig
from .models import EndpointReport, FormMatrix, FormSpec

logger = logging.getLogger(__name__)


def c1_constant(a: float, b: float) -> float:
    """c₁ = 64√2 b⁵(b²-a²)³((b-a)/(b+a))^{2b/a}"""
    return 64.0 * math.sqrt(2.0) * b ** 5 * (b ** 2 - a ** 2) ** 3 * ((b - a) / (b + a)) ** (2.0 * b / a)


def q0_envelope(eps: float, params: ProfileParams) -> float:
    """Q₀(θ₁,ε) 的上界 (c₁/ε)e^{-2α/ε}"""
    return c1_constant(params.a, params.b) / eps * math.exp(-2.0 * params.alpha / eps)


def default_samples(r: np.ndarray, eps: float, table: ProfileTable,
                    count: Optional[int] = None, modes: Optional[int] = None,
                    seed: Optional[int] = None) -> Dict[str, np.ndarray]:
    """
    端點估計與 Rayleigh 檢查用的樣本函數

    θ₁,ε、三個平滑凸塊、常數 1，以及 count 個由前 modes 個 Fourier 模態組成的隨機函數。
    """
    count = SpectralConfig.ENDPOINT_SAMPLES if count is None else count
    modes = SpectralConfig.ENDPOINT_MODES if modes is None else modes
    seed = SpectralConfig.ENDPOINT_SEED if seed is None else seed
    theta1, _ = theta_values(eps, r, table)
    samples = {"theta1": theta1, "one": np.ones_like(r)}
    for center in (-0.75, 0.0, 0.75):
        samples[f"bump{center:+.2f}"] = np.exp(-((r - center) / 0.25) ** 2)

    rng = np.random.default_rng(seed)
    phase = 0.5 * math.pi * (r + 1.0)
    for i in range(count):
        coefficients = rng.normal(size=(modes, 2))
        b = np.zeros_like(r)
        for k in range(modes):
            b += coefficients[k, 0] * np.cos(k * phase) + coefficients[k, 1] * np.sin(k * phase)
        samples[f"random{i}"] = b
    return samples


def _endpoint_form(eps: float, a: float, b: float, nodes: Optional[int], table: ProfileTable) -> FormMatrix:
    return assemble(FormSpec(kind="q0", eps=eps, a=a, b=b, nodes=nodes), table)


def endpoint_ratio(fm: FormMatrix, b: np.ndarray) -> Optional[float]:
    """|b(±1)|² / (ε(Q₀(b) + ∫b²))；分母非正 (含 b ≡ 0) 時回傳 None"""
    denominator = fm.spec.eps * (form_value(fm, b) + l2_norm2(fm, b))
    if not denominator > 0.0:
        return None
    return max(b[0] ** 2, b[-1] ** 2) / denominator


def endpoint_estimate_check(eps: float,
                            samples: Optional[Dict[str, np.ndarray]] = None,
                            a: float = 1.0, b: float = 2.0,
                            nodes: Optional[int] = None,
                            table: Optional[ProfileTable] = None) -> EndpointReport:
    """
    端點估計比值

    Args:
        eps: ε
        samples: 名稱 → 節點值；省略時用 default_samples
        nodes: 網格節點數，省略時依 ε 決定

    Returns:
        EndpointReport: 各樣本比值與最大值；被排除的樣本不出現在 ratios
    """
    table = profile_table(FormSpec(kind="q0", a=a, b=b), table)
    fm = _endpoint_form(eps, a, b, nodes, table)
    if samples is None:
        samples = default_samples(fm.r, eps, table)
    ratios = {}
    for name, values in samples.items():
        ratio = endpoint_ratio(fm, np.asarray(values, dtype=float))
        if ratio is None:
            logger.warning(f"樣本 {name} 分母非正，略過")
            continue
        ratios[name] = ratio
    worst = max(ratios.values()) if ratios else 0.0
    logger.info(f"端點估計: eps={eps}, 最大比值={worst:.4e}, 樣本數={len(ratios)}")
    return EndpointReport(eps=eps, worst=worst, ratios=ratios)


def endpoint_ratio_sweep(eps_list: Sequence[float], a: float = 1.0, b: float = 2.0,
                         nodes: Optional[int] = None,
                         table: Optional[ProfileTable] = None) -> Tuple[pd.DataFrame, float]:
    """
    對 eps_list 做端點估計

    Returns:
        Tuple: (eps, worst 表格, log(worst) 對 log(ε) 的斜率；少於兩點時為 NaN)
    """
    table = profile_table(FormSpec(kind="q0", a=a, b=b), table)
    rows = [{"eps": float(e), "worst": endpoint_estimate_check(e, a=a, b=b, nodes=nodes, table=table).worst}
            for e in eps_list]
    frame = pd.DataFrame(rows, columns=["eps", "worst"])
    slope = loglog_slope(frame["eps"], frame["worst"]) if len(frame) >= 2 else math.nan
    return frame, slope


def rayleigh_check(fm: FormMatrix, lambda_min: float, samples: Dict[str, np.ndarray]) -> pd.DataFrame:
    """
    每個樣本的 Rayleigh 商與 λ_min 比較

    vector 型時一維樣本沿第一個座標方向展開。
    """
    width = fm.spec.width
    rows = []
    for name, values in samples.items():
        b = np.asarray(values, dtype=float)
        if width > 1 and b.ndim == 1:
            lifted = np.zeros((len(b), width))
            lifted[:, 0] = b
            b = lifted
        norm2 = l2_norm2(fm, b)
        if norm2 == 0.0:
            continue
        quotient = form_value(fm, b) / norm2
        tolerance = 1e-9 * max(1.0, abs(quotient))
        rows.append({"sample": name, "quotient": quotient, "lambda_min": lambda_min,
                     "ok": lambda_min <= quotient + tolerance})
    return pd.DataFrame(rows, columns=["sample", "quotient", "lambda_min", "ok"])


def eigen_identity_defects(eps: float, nodes: int, table: ProfileTable) -> Dict[str, float]:
    """
    中心差分下剖面特徵恆等式的最大殘差 (端點除外)

    Returns:
        Dict: {"theta1": max|ε²D²θ₁ - θ₁f_A(θ₂)|, "theta2": max|ε²D²θ₂ - θ₂f_B(θ₂)|}
    """
    r = np.linspace(-1.0, 1.0, nodes)
    h = r[1] - r[0]
    z = r / eps
    theta1 = table.rho0_prime_eval(z)
    theta2 = table.rho0_eval(z)
    p = table.params.potential

    def second(values):
        return (values[2:] - 2.0 * values[1:-1] + values[:-2]) / h ** 2

    inner = slice(1, -1)
    defect1 = eps ** 2 * second(theta1) - theta1[inner] * fA_at(theta2[inner], p)
    defect2 = eps ** 2 * second(theta2) - theta2[inner] * fB_at(theta2[inner], p)
    return {"theta1": float(np.max(np.abs(defect1))), "theta2": float(np.max(np.abs(defect2)))}


def correction_term_bound(eps_list: Sequence[float], table: ProfileTable, c: float = 1.0,
                          nodes: Optional[int] = None) -> pd.DataFrame:
    """
    修正項 (1/ε)ρ₁f_C(θ₂,ε) 的逐點上界

    模型資料 (1/ε)ρ₁ = c·(r/ε)e^{-α|r|/ε}，在介面上線性消失。

    Returns:
        pd.DataFrame: eps, nodes, sup
    """
    p = table.params
    rows = []
    for eps in eps_list:
        count = nodes or SpectralConfig.resolution(eps)
        z = np.linspace(-1.0, 1.0, count) / eps
        term = c * z * np.exp(-p.alpha * np.abs(z)) * fC_at(table.rho0_eval(z), p.potential)
        rows.append({"eps": float(eps), "nodes": count, "sup": float(np.max(np.abs(term)))})
    return pd.DataFrame(rows, columns=["eps", "nodes", "sup"])


def boundary_terms(eps: float, table: ProfileTable) -> Dict[str, float]:
    """
    分部積分後剩下的邊界項

        Q₀(θ₁,ε) = θ₁θ₁'|₋₁¹，θ₁' = ρ₀''(r/ε)/ε
        Q₁(θ₂,ε) = θ₂θ₂'|₋₁¹，θ₂' = ρ₀'(r/ε)/ε
    """
    ends = np.array([-1.0, 1.0]) / eps
    theta1 = table.rho0_prime_eval(ends)
    dtheta1 = table.rho0_second_eval(ends) / eps
    theta2 = table.rho0_eval(ends)
    dtheta2 = table.rho0_prime_eval(ends) / eps
    return {
        "q0_theta1": float(theta1[1] * dtheta1[1] - theta1[0] * dtheta1[0]),
        "q1_theta2": float(theta2[1] * dtheta2[1] - theta2[0] * dtheta2[0]),
    }


def profile_form_values(eps: float, nodes: int, table: ProfileTable) -> Dict[str, float]:
    """離散 Q₀(θ₁,ε) 與 Q₁(θ₂,ε)，與 boundary_terms 對照"""
    a, b = table.params.a, table.params.b
    q0 = assemble(FormSpec(kind="q0", eps=eps, a=a, b=b, nodes=nodes), table)
    q1 = assemble(FormSpec(kind="q1", eps=eps, a=a, b=b, nodes=nodes), table)
    theta1, theta2 = theta_values(eps, q0.r, table)
    return {"q0_theta1": form_value(q0, theta1), "q1_theta2": form_value(q1, theta2)}
