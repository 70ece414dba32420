"""
Family recognizers
NLG / NQLG 결정기와 눈싸움 머신
"""

from typing import Iterable

import networkx as nx

from ..graphs import Alphabet, LabelledGraph, NodeLabel
from ..machine import (
    ACCEPT,
    ANY,
    BOTTOM,
    BOX,
    UNINIT,
    RuleMachine,
    State,
    at_least,
    at_most,
    none_of,
    rule,
)
from .base import DIRECTIONS, Z3


def nlg_decider() -> RuleMachine:
    """
    번호 매긴 선형 그래프 결정기 (D, A)

    원점(번호 0, 번호 2 이웃 없음)이 1 을 추측하고 추측이 경로를 따라 전파된다.
    이웃 번호가 자기와 같거나 같은 번호 이웃이 둘 이상이면 ⊥.
    """
    states: list[State] = [(n, g) for n in Z3 for g in (0, 1)] + [BOTTOM]
    rules = []
    for n in Z3:
        rules.append(rule(f"L-error-same-{n}", (n, ANY), BOTTOM, at_least((n, ANY))))
    for n in Z3:
        for m in Z3:
            rules.append(rule(f"L-error-twice-{n}-{m}", (n, ANY), BOTTOM, at_least((m, ANY), 2)))
    rules.append(rule("L-error-prop", (ANY, ANY), BOTTOM, at_least(BOTTOM)))
    rules.append(rule("L-origin", (0, 0), (0, 1), none_of((2, ANY))))
    for n in Z3:
        rules.append(rule(f"L-line-{n}", (n, 0), (n, 1), at_least((ANY, 1))))

    return RuleMachine(
        name="nlg",
        alphabet=Alphabet.PLAIN,
        beta=2,
        detection="D",
        acceptance="A",
        states=states,
        init={NodeLabel(n): (n, 0) for n in Z3},
        rules=rules,
        accepting=[(n, 1) for n in Z3],
        rejecting=[(n, 0) for n in Z3] + [BOTTOM],
    )


def nqlg_decider() -> RuleMachine:
    """
    번호 매긴 준선형 그래프 결정기 (d, A)

    1 단계: 원점 집합에서 바깥으로 stage 1 이 퍼진다.
    한계 노드(다음 번호 이웃 없음)가 stage 2 를 시작하고 원점 쪽으로 되돌아온다.
    후속 노드가 먼저 stage 에 도달하면 거리 불일치로 ⊥.
    """
    states: list[State] = [(n, k) for n in Z3 for k in (0, 1, 2)] + [BOTTOM]
    rules = []
    for n in Z3:
        rules.append(rule(f"QL-error-same-{n}", (n, ANY), BOTTOM, at_least((n, ANY))))
    rules.append(rule("QL-error-prop", (ANY, ANY), BOTTOM, at_least(BOTTOM)))
    rules.append(rule("QL-origin", (0, 0), (0, 1), none_of((2, ANY))))
    for n in Z3:
        before, after = (n - 1) % 3, (n + 1) % 3
        rules.append(
            rule(f"QL-stage1-{n}", (n, 0), (n, 1), at_least((before, 1)), none_of((after, 1)))
        )
        rules.append(rule(f"QL-stage1-fault-{n}", (n, 0), BOTTOM, at_least((after, 1))))
    for n in Z3:
        rules.append(rule(f"QL-limit-{n}", (n, 1), (n, 2), none_of(((n + 1) % 3, ANY))))
    for n in Z3:
        before, after = (n - 1) % 3, (n + 1) % 3
        rules.append(
            rule(f"QL-stage2-{n}", (n, 1), (n, 2), at_least((after, 2)), none_of((before, 2)))
        )
        rules.append(rule(f"QL-stage2-fault-{n}", (n, 1), BOTTOM, at_least((before, 2))))

    return RuleMachine(
        name="nqlg",
        alphabet=Alphabet.PLAIN,
        beta=1,
        detection="d",
        acceptance="A",
        states=states,
        init={NodeLabel(n): (n, 0) for n in Z3},
        rules=rules,
        accepting=[(n, 2) for n in Z3],
        rejecting=[(n, 0) for n in Z3] + [BOTTOM],
    )


# ──────────────────────────────────────────────────
# Snowball fight
# ──────────────────────────────────────────────────

def _lambda_states() -> list[tuple[int, int, int]]:
    return [(n, d, s) for n in Z3 for d in DIRECTIONS for s in (0, 1)]


def snowball_machine() -> RuleMachine:
    """
    눈싸움 머신 (D, a): SFNLG 를 정지 수락으로 인식

    눈덩이를 든 노드는 바라보는 방향으로 던지고, 마주 보는 노드가 받아서
    돌아서며, 등 뒤에서 맞은 노드는 ⊥ 이 된다.
    원점이 왼쪽을 보며 마지막 눈덩이를 들면 □ 파동이 끝까지 가서 ✓□ 로 돌아온다.
    """
    lam = _lambda_states()
    uninit = [(UNINIT, *q) for q in lam]
    quiet = (none_of(ACCEPT), none_of(BOX))
    rules = []

    for n in Z3:
        rules.append(rule(f"SF-error-same-{n}", (UNINIT, n, ANY, ANY), BOTTOM, at_least((UNINIT, n, ANY, ANY))))
    for n in Z3:
        for m in Z3:
            rules.append(
                rule(f"SF-error-twice-{n}-{m}", (UNINIT, n, ANY, ANY), BOTTOM, at_least((UNINIT, m, ANY, ANY), 2))
            )
    for shape in ((ANY, ANY, ANY), (UNINIT, ANY, ANY, ANY), BOX):
        rules.append(rule("SF-error-prop", shape, BOTTOM, at_least(BOTTOM)))

    for n, d in ((n, d) for n in Z3 for d in DIRECTIONS):
        rules.append(
            rule(f"SF-init-holder-{n}{d:+d}", (UNINIT, n, d, 1), (n, d, 1), *quiet, at_most((UNINIT, ANY, ANY, 1), 1))
        )
        rules.append(
            rule(f"SF-init-empty-{n}{d:+d}", (UNINIT, n, d, 0), (n, d, 0), *quiet, at_least((UNINIT, ANY, ANY, 1), 2))
        )
    rules.append(rule("SF-init-fault", (UNINIT, ANY, ANY, ANY), BOTTOM, *quiet))

    for n, d in ((n, d) for n in Z3 for d in DIRECTIONS):
        ahead = (n + d) % 3
        rules.append(rule(f"SF-throw-{n}{d:+d}", (n, d, 1), (n, d, 0), *quiet, at_least((ahead, ANY, 0))))
    for n, d in ((n, d) for n in Z3 for d in DIRECTIONS):
        ahead, behind = (n + d) % 3, (n - d) % 3
        rules.append(rule(f"SF-catch-{n}{d:+d}", (n, d, 0), (n, -d, 1), *quiet, at_least((ahead, -d, 1))))
        rules.append(
            rule(
                f"SF-hit-{n}{d:+d}", (n, d, 0), BOTTOM, *quiet,
                none_of((ahead, -d, 1)), at_least((behind, d, 1)),
            )
        )

    rules.append(rule("SF-end-origin", (0, -1, 1), BOX, none_of((2, ANY, ANY))))
    for n, d in ((n, d) for n in Z3 for d in DIRECTIONS):
        if (n, d) != (0, -1):
            rules.append(rule(f"SF-end-edge-{n}{d:+d}", (n, d, 1), BOTTOM, none_of(((n + d) % 3, ANY, ANY))))
    for n in Z3:
        rules.append(rule(f"SF-end-wave-{n}", (n, ANY, ANY), BOX, at_least(BOX), at_least(((n + 1) % 3, ANY, ANY))))
        rules.append(rule(f"SF-end-last-{n}", (n, ANY, ANY), ACCEPT, at_least(BOX), none_of(((n + 1) % 3, ANY, ANY))))
    rules.append(rule("SF-end-back", BOX, ACCEPT, at_least(ACCEPT)))
    rules.append(rule("SF-end-alone", BOX, ACCEPT, none_of(ANY)))

    return RuleMachine(
        name="snowball",
        alphabet=Alphabet.SNOWBALL,
        beta=2,
        detection="D",
        acceptance="a",
        states=[*lam, *uninit, ACCEPT, BOX, BOTTOM],
        init={NodeLabel(n, d, s): (UNINIT, n, d, s) for n, d, s in lam},
        rules=rules,
        accepting=[ACCEPT],
        rejecting=[BOTTOM],
    )


def snowball_holders(states: Iterable[State]) -> set[int]:
    """눈덩이를 든 노드 (초기화 전 상태 포함)"""
    holders = set()
    for v, q in enumerate(states):
        if isinstance(q, tuple) and q[-1] == 1 and len(q) in (3, 4):
            holders.add(v)
    return holders


def bipartition(graph: LabelledGraph) -> tuple[frozenset[int], frozenset[int]]:
    """BFS 깊이 짝홀에 따른 이분할 (U0, U1), 이분 그래프에서만 의미 있음"""
    layers = nx.bfs_layers(graph.to_networkx(), [0])
    even = frozenset(v for depth, layer in enumerate(layers) if depth % 2 == 0 for v in layer)
    return even, frozenset(graph.nodes()) - even
