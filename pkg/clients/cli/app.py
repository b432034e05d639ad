"""
命令列入口 - 解析全域旗標、設定 logging、分派到子指令處理器

服務層的例外轉成一行錯誤訊息與非零結束碼；其他例外連同 traceback 記錄下來。
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

from services.diffuse_service import DiffuseServiceError
from services.expansion_service import ExpansionServiceError
from services.field_service import FieldServiceError
from services.potential_service import PotentialServiceError
from services.profile_service import ProfileServiceError
from services.sharp_service import SharpServiceError
from services.spectral_service import SpectralServiceError
from services.study_service import StudyServiceError

from .services.service_registry import ServiceRegistry

logger = logging.getLogger(__name__)

SERVICE_ERRORS = (
    ProfileServiceError, PotentialServiceError, FieldServiceError, DiffuseServiceError,
    SharpServiceError, ExpansionServiceError, SpectralServiceError, StudyServiceError,
)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(verbose: bool = False) -> None:
    level = "DEBUG" if verbose else os.getenv("LAB_LOG_LEVEL", "INFO").upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), format=LOG_FORMAT)


def build_parser(registry: ServiceRegistry) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value 設定檔")
    common.add_argument("--out-dir", dest="out_dir", help="輸出目錄，覆蓋設定檔的 out_dir")
    common.add_argument("--threads", type=int, help="平行執行緒數")
    common.add_argument("--verbose", action="store_true", help="輸出 DEBUG 訊息")

    parser = argparse.ArgumentParser(prog="vector-ac-lab", description="向量 Allen-Cahn 數值實驗室")
    subparsers = parser.add_subparsers(dest="command", help="可用命令")
    for handler in registry.handlers():
        sub = subparsers.add_parser(handler.command, help=handler.help_text, parents=[common])
        handler.add_arguments(sub)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    registry = ServiceRegistry()
    parser = build_parser(registry)
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 0

    configure_logging(args.verbose)
    handler = registry.get_handler(args.command)
    try:
        response = handler.run(args)
    except SERVICE_ERRORS as e:
        logger.error(f"{args.command} 失敗: {str(e)}")
        print(f"❌ {args.command}: {str(e)}", file=sys.stderr)
        return 1
    except Exception as e:
        logger.error(f"{args.command} 發生未預期錯誤: {str(e)}", exc_info=True)
        print(f"❌ {args.command}: 未預期錯誤 {type(e).__name__}: {str(e)}", file=sys.stderr)
        return 2

    print(response.text)
    for path in response.files:
        print(f"📄 {path}")
    return 0 if response.ok else 1
