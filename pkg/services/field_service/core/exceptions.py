class FieldServiceError(Exception):
    """場服務基礎異常"""
    pass

class GridError(FieldServiceError):
    """網格錯誤 - 尺寸不足、維度不符或場的形狀和網格對不上"""
    pass

class NoInterfaceError(FieldServiceError):
    """找不到介面 - |u| 在整條射線上都沒有穿過 (a+b)/2"""
    pass

class CheckpointError(FieldServiceError):
    """檢查點檔案錯誤 - 魔數、版本或長度不符"""
    pass
