class ProfileServiceError(Exception):
    """剖面服務基礎異常"""
    pass

class ParameterError(ProfileServiceError):
    """參數錯誤 - 井半徑、衰減指數或表格尺寸不合法"""
    pass

class ProfileSolverError(ProfileServiceError):
    """隱式關係求解失敗 - 帶著 z 和最後的括號區間"""

    def __init__(self, message: str, z: float, bracket: tuple):
        super().__init__(f"{message} (z={z}, bracket={bracket})")
        self.z = z
        self.bracket = bracket

class ConsistencyError(ProfileServiceError):
    """內部一致性錯誤 - 例如 e 的閉式解與數值積分對不上"""
    pass

class TableCorruptionError(ProfileServiceError):
    """表格損壞 - 積分出現 NaN 或 η₁ 超出 [0,1] 太多"""
    pass
