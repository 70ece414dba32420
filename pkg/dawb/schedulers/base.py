"""
Schedule 추상 클래스
"""

from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, Hashable, Iterator, Optional

if TYPE_CHECKING:
    from ..graphs import LabelledGraph


class ScheduleError(ValueError):
    """스케줄 파라미터 오류"""
    pass


class Schedule(ABC):
    """선택 열 생성기 (공정성 창 W 보장)"""

    kind: str = ""

    def __init__(self, graph: "LabelledGraph", seed: int = 0, window: Optional[int] = None):
        self.graph = graph
        self.nodes = tuple(graph.nodes())
        self.seed = seed
        self.window = window if window is not None else 4 * len(self.nodes)
        if self.window < 1:
            raise ScheduleError(f"fairness window must be positive: {self.window}")
        self.step = 0

    @abstractmethod
    def _draw(self) -> frozenset[int]:
        """현재 step 의 선택"""
        pass

    @abstractmethod
    def permitted(self, selection: frozenset[int]) -> bool:
        """스케줄러 종류가 허용하는 선택인지"""
        pass

    def next_selection(self) -> frozenset[int]:
        selection = self._draw()
        self.step += 1
        return selection

    def phase(self) -> Optional[Hashable]:
        """주기적 스케줄의 위상 (없으면 None)"""
        return None

    def clone(self, seed: Optional[int] = None) -> "Schedule":
        """같은 파라미터의 새 생성기 (병렬 탐색용)"""
        return type(self)(self.graph, self.seed if seed is None else seed, self.window)

    def describe(self) -> str:
        return f"{self.kind}(seed={self.seed}, window={self.window})"

    def __iter__(self) -> Iterator[frozenset[int]]:
        while True:
            yield self.next_selection()
