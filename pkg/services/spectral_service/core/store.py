"""
C_cfg 存檔 - 第一次 sweep 校準後寫入 JSON，之後凍結當作回歸下界
"""

import json
import logging
import os
from typing import Dict, Optional

from pydantic import ValidationError

from .config import SpectralConfig
from .exceptions import BoundStoreError
from .models import BoundEntry, bound_key

logger = logging.getLogger(__name__)


class BoundStore:
    """
    以 (kind, a, b) 為鍵的下界常數存檔

    檔案格式: {"q1:a=1.0:b=2.0": {"kind": "q1", "a": 1.0, ...}, ...}
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path or SpectralConfig.store_path()

    def load(self) -> Dict[str, BoundEntry]:
        if not os.path.exists(self.path):
            return {}
        try:
            with open(self.path, "r", encoding="utf-8") as f:
                raw = json.load(f)
            return {key: BoundEntry(**value) for key, value in raw.items()}
        except (OSError, json.JSONDecodeError, ValidationError, AttributeError, TypeError) as e:
            logger.error(f"下界存檔讀取失敗: {self.path}: {str(e)}")
            raise BoundStoreError(f"無法讀取下界存檔 {self.path}: {str(e)}") from e

    def _save(self, entries: Dict[str, BoundEntry]) -> None:
        payload = {key: entries[key].model_dump() for key in sorted(entries)}
        try:
            directory = os.path.dirname(self.path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(self.path, "w", encoding="utf-8") as f:
                json.dump(payload, f, indent=2, ensure_ascii=False)
                f.write("\n")
        except OSError as e:
            logger.error(f"下界存檔寫入失敗: {self.path}: {str(e)}")
            raise BoundStoreError(f"無法寫入下界存檔 {self.path}: {str(e)}") from e

    def get(self, kind: str, a: float, b: float) -> Optional[BoundEntry]:
        return self.load().get(bound_key(kind, a, b))

    def set(self, entry: BoundEntry) -> BoundEntry:
        entries = self.load()
        entries[entry.key] = entry
        self._save(entries)
        logger.info(f"C_cfg 已寫入: {entry.key} → {entry.bound:.6g}")
        return entry

    def reset(self, kind: Optional[str] = None, a: Optional[float] = None, b: Optional[float] = None) -> int:
        """
        刪除存檔中的項目

        Args:
            kind: 只刪除這種二次型，省略時全部刪除
            a, b: 與 kind 一起指定時只刪除單一鍵

        Returns:
            int: 刪除的項目數
        """
        entries = self.load()
        if kind is None:
            removed = list(entries)
        elif a is not None and b is not None:
            removed = [k for k in entries if k == bound_key(kind, a, b)]
        else:
            removed = [k for k, v in entries.items() if v.kind == kind]
        for key in removed:
            del entries[key]
        self._save(entries)
        logger.info(f"下界存檔已清除 {len(removed)} 筆")
        return len(removed)
