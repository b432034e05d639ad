class PotentialServiceError(Exception):
    """勢能服務基礎異常"""
    pass

class ParameterError(PotentialServiceError):
    """參數錯誤 - 通常是井半徑不滿足 0 < a < b"""
    pass
