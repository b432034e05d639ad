class ExpansionServiceError(Exception):
    """漸近展開服務基礎異常"""
    pass

class AmbiguousGeodesicError(ExpansionServiceError):
    """測地線不唯一 - ω⁻ 與 ω⁺ 互為對蹠點"""
    pass

class DomainRangeError(ExpansionServiceError):
    """求值點超出定義域、含 NaN 或介面已經消失"""
    pass

class CompatibilityError(ExpansionServiceError):
    """兩點問題的相容條件 ∫hθ = 0 不成立"""
    pass
