"""
TM head simulation
경로 그래프 위에 TM 테이프를 한 칸씩 올리고 헤드 상태를 한 노드만 갖는 머신
"""

from ..engine import Configuration
from ..graphs import Alphabet, LabelledGraph, NodeLabel, linear_order
from ..machine import ACCEPT, ANY, BOTTOM, UNINIT, RuleMachine, State, at_least, none_of, rule
from ..turing import LEFT, RIGHT, TMConfig, TuringMachine
from .base import Z3, ConstructionError

HEAD = "H"
HEAD_MOVES = {RIGHT: "H+1", LEFT: "H-1"}


def tm_head_machine(t: TuringMachine) -> RuleMachine:
    """TM 한 단계를 동기 두 단계로 시뮬레이션 (d, a)"""
    gamma = t.tape_alphabet
    cells = [(s, n) for s in gamma for n in Z3]
    heads = [
        (s, n, q, h)
        for s in gamma for n in Z3 for q in t.states for h in (HEAD, *HEAD_MOVES.values())
    ]
    uninit = [(UNINIT, s, n) for s in gamma for n in Z3]

    rules = [
        rule("H-origin", (UNINIT, t.blank, 0), (t.blank, 0, t.initial, HEAD), none_of((UNINIT, ANY, 2)))
    ]
    for n in Z3:
        rules.append(rule(f"H-init-{n}", (UNINIT, t.blank, n), (t.blank, n)))

    for q in t.states:
        for s in gamma:
            move = t.transition(q, s)
            if move is None:
                continue
            q2, s2, d = move
            for n in Z3:
                rules.append(rule(f"H-tra1-{q}-{s}-{n}", (s, n, q, HEAD), (s2, n, q2, HEAD_MOVES[d])))
    for d, tag in HEAD_MOVES.items():
        for q in t.states:
            for s in gamma:
                for n in Z3:
                    rules.append(
                        rule(f"H-tra2-{q}-{s}-{n}{tag}", (s, n, q, tag), (s, n), at_least((ANY, (n + d) % 3)))
                    )
    for d, tag in HEAD_MOVES.items():
        for s in gamma:
            for n in Z3:
                for q in t.states:
                    rules.append(
                        rule(
                            f"H-tra3-{s}-{n}-{q}{tag}", (s, n), (s, n, q, HEAD),
                            at_least((ANY, (n - d) % 3, q, tag)),
                        )
                    )

    for q in t.states:
        for s in gamma:
            if t.transition(q, s) is None:
                for n in Z3:
                    rules.append(rule(f"H-halt-{q}-{s}-{n}", (s, n, q, HEAD), ACCEPT))

    for d, tag in HEAD_MOVES.items():
        for n in Z3:
            rules.append(rule(f"H-overflow-{n}{tag}", (ANY, n, ANY, tag), BOTTOM, none_of((ANY, (n + d) % 3))))

    for result in (ACCEPT, BOTTOM):
        for shape in ((ANY, ANY), (ANY, ANY, ANY, ANY), (UNINIT, ANY, ANY)):
            rules.append(rule("H-prop", shape, result, at_least(result)))

    states: list[State] = [*cells, *heads, *uninit, ACCEPT, BOTTOM]
    return RuleMachine(
        name=f"tm-head-{t.name}",
        alphabet=Alphabet.PLAIN,
        beta=1,
        detection="d",
        acceptance="a",
        states=states,
        init={NodeLabel(n): (UNINIT, t.blank, n) for n in Z3},
        rules=rules,
        accepting=[ACCEPT],
        rejecting=[BOTTOM],
    )


def encode_tm_config(c: TMConfig, g: LabelledGraph, blank: str = "_") -> Configuration:
    """TM 설정 (q, θ, p) 의 NLG 위 부호화"""
    order = linear_order(g)
    if order is None:
        raise ConstructionError("TM configurations are encoded on numbered linear graphs only")
    if len(order) < len(c.tape):
        raise ConstructionError(f"graph length {len(order)} is shorter than the tape word ({len(c.tape)})")
    states: list[State] = [None] * len(order)  # type: ignore[list-item]
    for i, v in enumerate(order):
        symbol = c.tape[i] if i < len(c.tape) else blank
        states[v] = (symbol, i % 3, c.state, HEAD) if i == c.head else (symbol, i % 3)
    return Configuration(tuple(states))
