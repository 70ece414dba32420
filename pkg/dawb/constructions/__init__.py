"""
Constructions
구체적인 분산 머신과 공허성 환원 조립
"""

from .base import ConstructionError
from .recognizers import (
    bipartition,
    nlg_decider,
    nqlg_decider,
    snowball_holders,
    snowball_machine,
)
from .tm_head import encode_tm_config, tm_head_machine
from .product import adapt_labels, product_machine
from .reduction import (
    EmptinessSearch,
    ReductionClass,
    SearchReport,
    find_accepted_graph,
    reduction_automaton,
    witness_family,
)
from ..machine import DistributedMachine

__all__ = [
    "ConstructionError",
    "nlg_decider",
    "nqlg_decider",
    "snowball_machine",
    "snowball_holders",
    "bipartition",
    "tm_head_machine",
    "encode_tm_config",
    "product_machine",
    "adapt_labels",
    "ReductionClass",
    "reduction_automaton",
    "witness_family",
    "find_accepted_graph",
    "EmptinessSearch",
    "SearchReport",
    "create_machine",
]


def create_machine(name: str, **kwargs) -> DistributedMachine:
    """
    내장 머신 팩토리 함수

    Args:
        name: 머신 이름 ("nlg" | "nqlg" | "snowball" | "tm-head" | "reduce")
        **kwargs: 머신별 추가 인자 (tm-head: tm, reduce: tm, cls, probe_steps)

    Returns:
        DistributedMachine 인스턴스
    """
    name = name.lower()

    if name == "nlg":
        return nlg_decider()
    elif name == "nqlg":
        return nqlg_decider()
    elif name == "snowball":
        return snowball_machine()
    elif name == "tm-head":
        return tm_head_machine(kwargs["tm"])
    elif name == "reduce":
        cls = kwargs.get("cls", ReductionClass.DA)
        if isinstance(cls, str):
            cls = ReductionClass.parse(cls)
        return reduction_automaton(kwargs["tm"], cls, kwargs.get("probe_steps", 10_000))
    else:
        raise ValueError(
            f"지원하지 않는 머신: {name}\n"
            "지원 머신: nlg, nqlg, snowball, tm-head, reduce"
        )
