"""
Schedulers
선택 제약별 선택 열 생성기
"""

from typing import TYPE_CHECKING, Optional

from .base import Schedule, ScheduleError
from .synchronous import SynchronousSchedule
from .liberal import LiberalSchedule
from .exclusive import ExclusiveSchedule, EXCLUSIVE_ORDERS

if TYPE_CHECKING:
    from ..graphs import LabelledGraph

__all__ = [
    "Schedule",
    "ScheduleError",
    "SynchronousSchedule",
    "LiberalSchedule",
    "ExclusiveSchedule",
    "EXCLUSIVE_ORDERS",
    "make_schedule",
]


def make_schedule(
    kind: str,
    graph: "LabelledGraph",
    seed: int = 0,
    window: Optional[int] = None,
    **kwargs,
) -> Schedule:
    """
    스케줄 팩토리 함수

    Args:
        kind: 스케줄러 종류 ("synchronous" | "liberal" | "exclusive")
        graph: 대상 그래프
        seed: 난수 시드
        window: 공정성 창 W (None → 4·|V|)
        **kwargs: 종류별 추가 인자 (exclusive: order)

    Returns:
        Schedule 인스턴스
    """
    kind = kind.lower()

    if kind == "synchronous":
        return SynchronousSchedule(graph, seed, window)
    elif kind == "liberal":
        return LiberalSchedule(graph, seed, window)
    elif kind == "exclusive":
        return ExclusiveSchedule(graph, seed, window, order=kwargs.get("order", "round-robin"))
    else:
        raise ValueError(
            f"지원하지 않는 스케줄러: {kind}\n"
            "지원 스케줄러: synchronous, liberal, exclusive"
        )
