class StudyServiceError(Exception):
    """收斂研究服務基礎異常"""
    pass

class ConfigError(StudyServiceError):
    """設定錯誤 - 未知的鍵、不合法的值或網格不一致"""
    pass

class ReportError(StudyServiceError):
    """報告輸出錯誤"""
    pass
