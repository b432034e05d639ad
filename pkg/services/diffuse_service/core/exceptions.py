class DiffuseServiceError(Exception):
    """擴散介面服務基礎異常"""
    pass

class ConfigError(DiffuseServiceError):
    """配置錯誤 - 參數不合法、網格與檢查點不符"""
    pass

class StabilityError(ConfigError):
    """時間步長超過穩定上限"""
    pass

class BlowUpError(DiffuseServiceError):
    """數值爆炸 - 一步之後出現 NaN 或 Inf"""

    def __init__(self, message: str, t: float, max_modulus: float):
        super().__init__(message)
        self.t = t
        self.max_modulus = max_modulus

class CheckpointWriteError(DiffuseServiceError):
    """檢查點或指標檔寫入失敗"""
    pass
