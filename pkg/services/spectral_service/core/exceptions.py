class SpectralServiceError(Exception):
    """譜估計服務基礎異常"""
    pass

class EigenSolverError(SpectralServiceError):
    """特徵值求解失敗 - 超過迭代上限或殘差檢查不通過"""
    pass

class UnderResolvedError(SpectralServiceError):
    """解析度不足 - 網格加倍後 λ_min 變動超過 5%"""
    pass

class BoundStoreError(SpectralServiceError):
    """下界常數存檔讀寫錯誤"""
    pass
