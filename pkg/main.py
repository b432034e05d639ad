#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Vector AC Lab - 主程式入口
向量 Allen-Cahn 方程的數值實驗命令列工具

用法: python main.py <命令> [--config 設定檔] [--out-dir 目錄] ...
"""

import os
import sys

# 添加當前目錄到Python路徑
current_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, current_dir)

# 載入環境變數
from dotenv import load_dotenv
load_dotenv()

from clients.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
