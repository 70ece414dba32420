"""
Exclusive schedule
매 step 정확히 한 노드 선택 (라운드 로빈 또는 마감 우선 무작위)
"""

import random
from typing import TYPE_CHECKING, Hashable, Optional

from .base import Schedule, ScheduleError

if TYPE_CHECKING:
    from ..graphs import LabelledGraph


EXCLUSIVE_ORDERS = ("round-robin", "random")


class ExclusiveSchedule(Schedule):
    """단일 노드 선택 스케줄"""

    kind = "exclusive"

    def __init__(
        self,
        graph: "LabelledGraph",
        seed: int = 0,
        window: Optional[int] = None,
        order: str = "round-robin",
    ):
        super().__init__(graph, seed, window)
        if self.window < len(self.nodes):
            raise ScheduleError(
                f"exclusive schedule needs window >= |V| ({len(self.nodes)}), got {self.window}"
            )
        if order not in EXCLUSIVE_ORDERS:
            raise ScheduleError(
                f"지원하지 않는 선택 순서: {order}\n"
                f"지원 순서: {', '.join(EXCLUSIVE_ORDERS)}"
            )
        self.order = order
        self._rng = random.Random(seed)
        self._due = {v: self.window - 1 for v in self.nodes}

    def _draw(self) -> frozenset[int]:
        t = self.step
        if self.order == "round-robin":
            return frozenset({self.nodes[t % len(self.nodes)]})

        ranked = sorted(self.nodes, key=lambda v: (self._due[v], v))
        tight = any(self._due[v] <= t + k for k, v in enumerate(ranked))
        chosen = ranked[0] if tight else self._rng.choice(self.nodes)
        self._due[chosen] = t + self.window
        return frozenset({chosen})

    def permitted(self, selection: frozenset[int]) -> bool:
        return len(selection) == 1 and selection <= frozenset(self.nodes)

    def phase(self) -> Optional[Hashable]:
        if self.order == "round-robin":
            return self.step % len(self.nodes)
        return None

    def clone(self, seed: Optional[int] = None) -> "ExclusiveSchedule":
        return ExclusiveSchedule(
            self.graph, self.seed if seed is None else seed, self.window, self.order
        )

    def describe(self) -> str:
        return f"{self.kind}[{self.order}](seed={self.seed}, window={self.window})"
