"""
TM corpus
작은 테스트용 TM 모음 (정지 단계/칸 수를 손으로 확인할 수 있는 크기)
"""

import re
from typing import Callable

from .turing import BLANK, LEFT, RIGHT, TuringMachine


def immediate_halter() -> TuringMachine:
    """초기 상태에 전이가 없음: 0 단계, 1 칸"""
    return TuringMachine(
        name="immediate-halter",
        states=("q0",),
        initial="q0",
        accepting=frozenset({"q0"}),
        tape_alphabet=(BLANK, "1"),
        input_alphabet=("1",),
    )


def inc(k: int) -> TuringMachine:
    """INC_k: 1 을 k 개 쓰며 오른쪽으로 이동 후 정지 (k 단계, k+1 칸)"""
    if k < 1:
        raise ValueError(f"INC_k needs k >= 1: {k}")
    states = tuple(f"q{i}" for i in range(k + 1))
    delta = {(f"q{i}", BLANK): (f"q{i + 1}", "1", RIGHT) for i in range(k)}
    return TuringMachine(
        name=f"inc{k}",
        states=states,
        initial="q0",
        accepting=frozenset({states[-1]}),
        tape_alphabet=(BLANK, "1"),
        input_alphabet=("1",),
        delta=delta,
    )


def ping_pong() -> TuringMachine:
    """두 칸 사이를 영원히 왕복"""
    return TuringMachine(
        name="ping-pong",
        states=("q0", "q1"),
        initial="q0",
        accepting=frozenset(),
        tape_alphabet=(BLANK, "1"),
        input_alphabet=("1",),
        delta={
            ("q0", BLANK): ("q1", BLANK, RIGHT),
            ("q1", BLANK): ("q0", BLANK, LEFT),
        },
    )


def busy_beaver3() -> TuringMachine:
    """왼쪽 경계를 넘지 않는 3 상태 2 기호 표 (7 단계, 3 칸 후 H 에서 정지)"""
    return TuringMachine(
        name="bb3",
        states=("A", "B", "C", "H"),
        initial="A",
        accepting=frozenset({"H"}),
        tape_alphabet=(BLANK, "1"),
        input_alphabet=("1",),
        delta={
            ("A", BLANK): ("B", "1", RIGHT),
            ("A", "1"): ("C", "1", RIGHT),
            ("B", BLANK): ("A", "1", LEFT),
            ("B", "1"): ("A", BLANK, RIGHT),
            ("C", BLANK): ("H", "1", LEFT),
            ("C", "1"): ("B", "1", LEFT),
        },
    )


CORPUS: dict[str, Callable[[], TuringMachine]] = {
    "immediate-halter": immediate_halter,
    "inc1": lambda: inc(1),
    "inc2": lambda: inc(2),
    "inc3": lambda: inc(3),
    "inc4": lambda: inc(4),
    "ping-pong": ping_pong,
    "bb3": busy_beaver3,
}

_INC_NAME = re.compile(r"inc([1-9][0-9]*)")


def corpus_machine(name: str) -> TuringMachine:
    """코퍼스 이름으로 TM 생성 (inc<k> 는 임의의 k)"""
    if name in CORPUS:
        return CORPUS[name]()
    match = _INC_NAME.fullmatch(name)
    if match:
        return inc(int(match.group(1)))
    raise ValueError(
        f"지원하지 않는 TM: {name}\n"
        f"지원 TM: {', '.join(CORPUS)}, inc<k>"
    )
