"""
Liberal schedule
임의 부분집합 선택, 슬라이딩 창 마감 노드 강제 포함
"""

import random
from typing import TYPE_CHECKING, Optional

from .base import Schedule

if TYPE_CHECKING:
    from ..graphs import LabelledGraph


class LiberalSchedule(Schedule):
    """각 노드를 확률 ½ 로 선택"""

    kind = "liberal"

    def __init__(self, graph: "LabelledGraph", seed: int = 0, window: Optional[int] = None):
        super().__init__(graph, seed, window)
        self._rng = random.Random(seed)
        self._last = {v: -1 for v in self.nodes}

    def _draw(self) -> frozenset[int]:
        t = self.step
        selection = {v for v in self.nodes if self._rng.random() < 0.5}
        # 마지막 선택 후 W step 째인 노드는 반드시 포함
        selection.update(v for v in self.nodes if t - self._last[v] >= self.window)
        for v in selection:
            self._last[v] = t
        return frozenset(selection)

    def permitted(self, selection: frozenset[int]) -> bool:
        return selection <= frozenset(self.nodes)
