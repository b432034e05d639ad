"""
設定檔讀寫 - 扁平 key=value 文字檔

解析用 dotenv_values (支援 # 註解)，未知的鍵直接報錯；序列化時依鍵排序、浮點數取 repr，
因此 parse_config(serialize_config(cfg)) == cfg。
"""

import hashlib
import io
import logging
import os
from enum import Enum
from typing import Dict, Optional, Type, TypeVar

from dotenv import dotenv_values
from pydantic import BaseModel, ValidationError

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


def read_config_file(path: str) -> Dict[str, str]:
    if not os.path.isfile(path):
        logger.error(f"設定檔不存在: {path}")
        raise ConfigError(f"設定檔不存在: {path}")
    return _clean(dotenv_values(dotenv_path=path), path)


def read_config_text(text: str) -> Dict[str, str]:
    return _clean(dotenv_values(stream=io.StringIO(text)), "<text>")


def _clean(raw: Dict[str, Optional[str]], source: str) -> Dict[str, str]:
    values = {}
    for key, value in raw.items():
        if value is None:
            raise ConfigError(f"{source}: 鍵 {key} 缺少 '=' 與值")
        if value == "":
            continue
        values[key] = value
    return values


def build_config(model: Type[ModelT], values: Dict[str, object],
                 overrides: Optional[Dict[str, object]] = None) -> ModelT:
    """
    以 model 驗證設定值

    Args:
        model: 指令對應的 pydantic 模型
        values: 設定檔內容
        overrides: 命令列覆蓋值，None 的項目忽略

    Raises:
        ConfigError: 未知的鍵或驗證失敗
    """
    merged = dict(values)
    if overrides:
        merged.update({k: v for k, v in overrides.items() if v is not None})
    unknown = sorted(set(merged) - set(model.model_fields))
    if unknown:
        logger.error(f"{model.__name__} 不認得的設定鍵: {unknown}")
        raise ConfigError(f"未知的設定鍵: {', '.join(unknown)}")
    try:
        return model(**merged)
    except ValidationError as e:
        logger.error(f"{model.__name__} 設定不合法: {str(e)}")
        raise ConfigError(f"設定不合法: {str(e)}") from e


def parse_config(source: str, model: Type[ModelT], overrides: Optional[Dict[str, object]] = None) -> ModelT:
    """source 是檔案路徑，或含 '=' 的 key=value 文字"""
    if os.path.isfile(source) or "=" not in source:
        values = read_config_file(source)
    else:
        values = read_config_text(source)
    return build_config(model, values, overrides)


def format_value(value) -> str:
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return ",".join(format_value(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_config(cfg: BaseModel) -> str:
    """排序後的 key=value 行；None 的欄位省略"""
    data = cfg.model_dump()
    lines = [f"{key}={format_value(value)}" for key, value in sorted(data.items()) if value is not None]
    return "\n".join(lines) + "\n"


def config_hash(cfg: BaseModel) -> str:
    return hashlib.sha256(serialize_config(cfg).encode("utf-8")).hexdigest()


def write_config(cfg: BaseModel, path: str) -> str:
    directory = os.path.dirname(path)
    try:
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(serialize_config(cfg))
    except OSError as e:
        logger.error(f"設定檔寫入失敗: {str(e)}")
        raise ConfigError(f"無法寫入設定檔 {path}: {str(e)}") from e
    return path
