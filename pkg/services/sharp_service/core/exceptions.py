class SharpServiceError(Exception):
    """銳利介面服務基礎異常"""
    pass

class ConfigError(SharpServiceError):
    """配置錯誤 - 參數不合法或時間步長超過穩定上限"""
    pass

class DegenerateDirectorError(SharpServiceError):
    """指向場退化 - 正規化前的向量長度小於 1e-6"""
    pass
