"""
Product constructions
두 머신의 곱 (안정 합의 / 정지 수락) 과 라벨 사영 적응
"""

from typing import Optional

from ..graphs import Alphabet
from ..machine import (
    HALTING,
    PRODUCT_MODES,
    DistributedMachine,
    ProductMachine,
    RuleMachine,
    labels_of,
)
from .base import ConstructionError


def product_machine(
    m1: DistributedMachine,
    m2: DistributedMachine,
    mode: str,
    name: Optional[str] = None,
) -> ProductMachine:
    """Y = Y1×Y2, N = (N1×Q2) ∪ (Y1×N2); halting 모드는 N1×Q2 를 정지시킴"""
    if mode not in PRODUCT_MODES:
        raise ConstructionError(
            f"지원하지 않는 곱 모드: {mode}\n"
            f"지원 모드: {', '.join(PRODUCT_MODES)}"
        )
    if m1.alphabet is not m2.alphabet:
        raise ConstructionError(
            f"components read different alphabets: {m1.alphabet.value} vs {m2.alphabet.value}"
        )
    if mode == HALTING and (m1.acceptance != "a" or m2.acceptance != "a"):
        raise ConstructionError("halting product needs two halting-acceptance components")
    return ProductMachine(m1, m2, mode, name=name)


def adapt_labels(m: DistributedMachine) -> DistributedMachine:
    """평범한 라벨 머신이 눈싸움 라벨을 첫 성분 사영으로 읽도록 변환"""
    if m.alphabet is not Alphabet.PLAIN:
        raise ConstructionError(f"machine {m.name} does not read plain labels")
    if isinstance(m, ProductMachine):
        return ProductMachine(adapt_labels(m.first), adapt_labels(m.second), m.mode, name=f"{m.name}-pi1")
    if not isinstance(m, RuleMachine):
        raise ConstructionError(f"cannot adapt {type(m).__name__}")
    init = {label: m.init[label.project()] for label in labels_of(Alphabet.SNOWBALL)}
    return m.with_init(Alphabet.SNOWBALL, init, name=f"{m.name}-pi1")
