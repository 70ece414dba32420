"""
Synchronous schedule
"""

from typing import Hashable, Optional

from .base import Schedule


class SynchronousSchedule(Schedule):
    """매 step 모든 노드 선택"""

    kind = "synchronous"

    def _draw(self) -> frozenset[int]:
        return frozenset(self.nodes)

    def permitted(self, selection: frozenset[int]) -> bool:
        return selection == frozenset(self.nodes)

    def phase(self) -> Optional[Hashable]:
        return "sync"
