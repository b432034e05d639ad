"""
勢能參數模型 - 雙球面勢 F(u) = (|u|²-a²)²(|u|²-b²)²/4
"""

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .exceptions import ParameterError


class PotentialParams(BaseModel):
    """井半徑 a < b，兩個球面 |u|=a 與 |u|=b 都是極小值"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: float = 1.0
    b: float = 2.0

    @field_validator("a", "b")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError(f"井半徑必須為正數: {value}")
        return float(value)

    @model_validator(mode="after")
    def _ordered(self) -> "PotentialParams":
        if not self.a < self.b:
            raise ValueError(f"需要 0 < a < b，收到 a={self.a}, b={self.b}")
        return self

    @property
    def gap(self) -> float:
        """b² - a²，幾乎所有常數都帶這個因子"""
        return self.b ** 2 - self.a ** 2


def make_params(a: float, b: float) -> PotentialParams:
    """建立參數 - pydantic 驗證失敗轉成服務異常"""
    try:
        return PotentialParams(a=a, b=b)
    except ValueError as e:
        raise ParameterError(f"勢能參數無效: {str(e)}") from e
