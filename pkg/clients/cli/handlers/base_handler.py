"""
基礎處理器 - 每個子指令一個處理器，統一設定讀取與回應格式
"""

import argparse
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional, Type

from pydantic import BaseModel

from services.study_service import build_config, read_config_file


@dataclass
class HandlerResponse:
    """統一的處理器回應格式；ok=False 時以非零狀態結束"""
    text: str
    files: List[str] = field(default_factory=list)
    ok: bool = True


class BaseHandler(ABC):
    """基礎處理器 - 所有子指令處理器的父類"""

    # 子指令的參數模型；None 表示不讀設定檔
    config_model: Optional[Type[BaseModel]] = None
    # --out-dir 對應的設定鍵
    out_key: Optional[str] = "out_dir"

    def __init__(self, command: str, help_text: str):
        self.command = command
        self.help_text = help_text

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """子指令自己的旗標"""
        pass

    def overrides(self, args: argparse.Namespace) -> dict:
        """命令列旗標轉成設定值，None 表示沿用設定檔"""
        return {}

    def out_value(self, out_dir: str) -> str:
        return out_dir

    def load_config(self, args: argparse.Namespace) -> Optional[BaseModel]:
        if self.config_model is None:
            return None
        values = read_config_file(args.config) if args.config else {}
        overrides = self.overrides(args)
        if args.out_dir and self.out_key and overrides.get(self.out_key) is None:
            overrides[self.out_key] = self.out_value(args.out_dir)
        return build_config(self.config_model, values, overrides)

    def run(self, args: argparse.Namespace) -> HandlerResponse:
        return self.handle(self.load_config(args), args)

    @abstractmethod
    def handle(self, cfg: Optional[BaseModel], args: argparse.Namespace) -> HandlerResponse:
        """執行子指令"""
        pass

    @staticmethod
    def output_path(directory: Optional[str], name: str) -> Optional[str]:
        if not directory:
            return None
        os.makedirs(directory, exist_ok=True)
        return os.path.join(directory, name)
