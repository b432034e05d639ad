#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
C_cfg 下界存檔管理工具
校準、查看、清除 data/spectral_bounds.json
"""

import os
import sys
import argparse

# 將專案根目錄添加到 sys.path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from services.spectral_service import FORM_KINDS, BoundStore, FormSpec, SpectralServiceError, sweep


def show_bounds(store: BoundStore):
    """列出所有已凍結的下界"""
    entries = store.load()
    print(f"📋 下界存檔: {store.path}")
    print("=" * 50)
    if not entries:
        print("(空)")
        return
    for key, entry in entries.items():
        print(f"{key}")
        print(f"      C_cfg={entry.bound:.6g}  (校準於 eps={entry.eps}, λ_min={entry.lambda_min:.6g})")


def calibrate(store: BoundStore, kind: str, a: float, b: float, eps: float, force: bool):
    """以單一 ε 求 λ_min 並寫入 C_cfg"""
    if store.get(kind, a, b) is not None and not force:
        print(f"❌ {kind} (a={a}, b={b}) 已有存檔，要重新校準請加 --force")
        return 1
    if force:
        store.reset(kind, a, b)
    result = sweep(FormSpec(kind=kind, a=a, b=b, eps=eps), [eps], store=store, check_refinement=False)
    report = result.reports[0]
    print(f"✅ 已校準 {kind}: C_cfg={result.bound:.6g}")
    print(f"  eps={report.eps}, nodes={report.nodes}, λ_min={report.lambda_min:.6g}")
    return 0


def reset_bounds(store: BoundStore, kind: str, a: float, b: float):
    """清除存檔"""
    removed = store.reset(kind, a, b)
    print(f"🗑️ 已刪除 {removed} 筆")


def main():
    parser = argparse.ArgumentParser(description="C_cfg 下界存檔管理工具")
    parser.add_argument("--store", help="存檔路徑 (預設 LAB_BOUND_STORE)")
    subparsers = parser.add_subparsers(dest="command", help="可用命令")

    # 列出存檔
    subparsers.add_parser("show", help="列出所有下界")

    # 校準
    calibrate_parser = subparsers.add_parser("calibrate", help="以單一 ε 校準 C_cfg")
    calibrate_parser.add_argument("kind", choices=FORM_KINDS, help="二次型種類")
    calibrate_parser.add_argument("--a", type=float, default=1.0)
    calibrate_parser.add_argument("--b", type=float, default=2.0)
    calibrate_parser.add_argument("--eps", type=float, default=0.1)
    calibrate_parser.add_argument("--force", action="store_true", help="覆蓋既有項目")

    # 清除
    reset_parser = subparsers.add_parser("reset", help="清除存檔項目")
    reset_parser.add_argument("kind", nargs="?", choices=FORM_KINDS, help="省略時全部清除")
    reset_parser.add_argument("--a", type=float)
    reset_parser.add_argument("--b", type=float)

    args = parser.parse_args()

    if not args.command:
        parser.print_help()
        return 0

    store = BoundStore(args.store)
    try:
        if args.command == "show":
            show_bounds(store)
        elif args.command == "calibrate":
            return calibrate(store, args.kind, args.a, args.b, args.eps, args.force)
        elif args.command == "reset":
            reset_bounds(store, args.kind, args.a, args.b)
    except SpectralServiceError as e:
        print(f"❌ {str(e)}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
