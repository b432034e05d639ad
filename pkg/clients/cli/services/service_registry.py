"""
處理器註冊器 - 子指令名稱對應處理器
"""

from typing import Dict, List, Optional

from ..handlers.base_handler import BaseHandler
from ..handlers.expansion_handler import CompatHandler, ResidualHandler
from ..handlers.profile_handler import ProfileHandler
from ..handlers.simulation_handler import SharpHandler, SimulateHandler
from ..handlers.spectrum_handler import SpectrumHandler
from ..handlers.study_handler import ConvergeHandler, ReportHandler


class ServiceRegistry:
    """統一管理 8 個子指令"""

    def __init__(self):
        handlers = [
            ProfileHandler(),
            SimulateHandler(),
            SharpHandler(),
            ResidualHandler(),
            CompatHandler(),
            SpectrumHandler(),
            ConvergeHandler(),
            ReportHandler(),
        ]
        self._handlers: Dict[str, BaseHandler] = {h.command: h for h in handlers}

    def get_handler(self, command: str) -> Optional[BaseHandler]:
        return self._handlers.get(command)

    def handlers(self) -> List[BaseHandler]:
        return list(self._handlers.values())
