"""
Distributed machine semantics
설정, 상한 이웃 뷰, 선택 단계, 동기 실행, 실행 분류
"""

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Optional, Sequence

from .graphs import LabelledGraph
from .machine import (
    AlphabetMismatchError,
    DistributedMachine,
    NeighborhoodView,
    State,
    format_state,
    parse_state,
)

if TYPE_CHECKING:
    from .schedulers import Schedule


class SelectionError(ValueError):
    """허용되지 않는 선택"""
    pass


class Verdict(str, Enum):
    """실행 판정"""
    ACCEPTING = "ACCEPTING"
    REJECTING = "REJECTING"
    UNDECIDED = "UNDECIDED"
    INCONSISTENT = "INCONSISTENT"


_ACC, _REJ, _NEITHER = "Y", "N", "-"


@dataclass(frozen=True)
class Configuration:
    """노드 id 순서의 상태 벡터"""
    states: tuple

    def __getitem__(self, v: int) -> State:
        return self.states[v]

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def format(self) -> str:
        return " ".join(f"{v}:{format_state(q)}" for v, q in enumerate(self.states))

    def fingerprint(self) -> str:
        """상태 벡터 직렬화의 다이제스트"""
        text = " ".join(format_state(q) for q in self.states)
        return hashlib.blake2b(text.encode("utf-8"), digest_size=16).hexdigest()

    def is_accepting(self, m: DistributedMachine) -> bool:
        return all(m.is_accepting(q) for q in self.states)

    def is_rejecting(self, m: DistributedMachine) -> bool:
        return all(m.is_rejecting(q) for q in self.states)


@dataclass
class RunLimits:
    """실행 한도"""
    max_steps: Optional[int] = None
    max_stored_configs: int = 100_000

    def steps_for(self, graph: LabelledGraph) -> int:
        if self.max_steps is not None:
            return self.max_steps
        return 10 * graph.order ** 2 + 1000


@dataclass
class RunTrace:
    """기록된 설정 열과 순환 분해"""
    configurations: list[Configuration] = field(default_factory=list)
    cycle_start: Optional[int] = None
    cycle_length: Optional[int] = None


@dataclass
class RunResult:
    """실행 분류 결과"""
    verdict: Verdict
    step: int
    details: str = ""
    cycle: Optional[tuple[int, int]] = None
    trace: Optional[RunTrace] = None

    @property
    def decided(self) -> bool:
        return self.verdict in (Verdict.ACCEPTING, Verdict.REJECTING)

    @property
    def first_stable_step(self) -> Optional[int]:
        return self.step if self.decided else None

    def verdict_line(self) -> str:
        return f"verdict {self.verdict.value} step {self.step}"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "step": self.step,
            "details": self.details,
            "cycle": list(self.cycle) if self.cycle else None,
        }


# ──────────────────────────────────────────────────
# Single steps
# ──────────────────────────────────────────────────

def init_configuration(m: DistributedMachine, g: LabelledGraph) -> Configuration:
    """C0 = init ∘ label"""
    if m.alphabet is not g.alphabet:
        raise AlphabetMismatchError(
            f"machine {m.name} reads {m.alphabet.value} labels, graph is {g.alphabet.value}"
        )
    return Configuration(tuple(m.init_state(label) for label in g.labels))


def neighborhood_view(
    g: LabelledGraph, c: Configuration, v: int, beta: int
) -> NeighborhoodView:
    return NeighborhoodView.from_states((c[w] for w in g.neighbours(v)), beta)


def step(
    m: DistributedMachine,
    g: LabelledGraph,
    c: Configuration,
    selection: Iterable[int],
) -> Configuration:
    """선택된 노드만 이전 설정의 뷰로 전이"""
    selected = set(selection)
    unknown = selected - set(g.nodes())
    if unknown:
        raise SelectionError(f"selection contains unknown nodes: {sorted(unknown)}")
    states = list(c.states)
    for v in selected:
        states[v] = m.transition(c[v], neighborhood_view(g, c, v, m.beta))
    return Configuration(tuple(states))


class _Stepper:
    """한 실행 전용의 전이 계산기 (뷰 메모이제이션 포함)"""

    def __init__(self, m: DistributedMachine, g: LabelledGraph):
        self.m = m
        self.g = g
        self._memo: dict = {}
        self._kinds: dict = {}

    def next_state(self, states: tuple, v: int) -> State:
        q = states[v]
        view = NeighborhoodView.from_states(
            (states[w] for w in self.g.neighbours(v)), self.m.beta
        )
        key = (q, view.key())
        result = self._memo.get(key)
        if result is None:
            result = self.m.transition(q, view)
            self._memo[key] = result
        return result

    def advance(self, states: tuple, candidates: Iterable[int]) -> tuple[tuple, set[int]]:
        updates = {}
        for v in candidates:
            q = self.next_state(states, v)
            if q != states[v]:
                updates[v] = q
        if not updates:
            return states, set()
        new = list(states)
        for v, q in updates.items():
            new[v] = q
        return tuple(new), set(updates)

    def dirty(self, changed: set[int]) -> set[int]:
        nodes = set(changed)
        for v in changed:
            nodes.update(self.g.neighbours(v))
        return nodes

    def kind(self, q: State) -> str:
        k = self._kinds.get(q)
        if k is None:
            if self.m.is_accepting(q):
                k = _ACC
            elif self.m.is_rejecting(q):
                k = _REJ
            else:
                k = _NEITHER
            self._kinds[q] = k
        return k


class _Cursor:
    """설정과 dirty 집합, 수락/거부 노드 수를 함께 진행"""

    def __init__(self, stepper: _Stepper, states: tuple):
        self.stepper = stepper
        self.states = states
        self.index = 0
        self.dirty: set[int] = set(range(len(states)))
        kinds = [stepper.kind(q) for q in states]
        self.accepting = kinds.count(_ACC)
        self.rejecting = kinds.count(_REJ)

    def copy(self) -> "_Cursor":
        other = _Cursor.__new__(_Cursor)
        other.__dict__.update(self.__dict__)
        other.dirty = set(self.dirty)
        return other

    def flag(self) -> str:
        n = len(self.states)
        if self.accepting == n:
            return _ACC
        if self.rejecting == n:
            return _REJ
        return _NEITHER

    def advance(self, selection: Optional[Iterable[int]] = None) -> set[int]:
        if selection is None:
            new, changed = self.stepper.advance(self.states, self.dirty)
            self.dirty = self.stepper.dirty(changed)
        else:
            new, changed = self.stepper.advance(self.states, selection)
        for v in changed:
            self._count(self.states[v], -1)
            self._count(new[v], +1)
        self.states = new
        self.index += 1
        return changed

    def _count(self, q: State, delta: int):
        k = self.stepper.kind(q)
        if k == _ACC:
            self.accepting += delta
        elif k == _REJ:
            self.rejecting += delta


def _classify(
    flags: Sequence[str], start: int, end: int
) -> tuple[Verdict, int, str]:
    """flags[start:end] 가 반복되는 순환일 때의 판정"""
    cycle = flags[start:end]
    for flag, verdict in ((_ACC, Verdict.ACCEPTING), (_REJ, Verdict.REJECTING)):
        if all(f == flag for f in cycle):
            first = start
            while first > 0 and flags[first - 1] == flag:
                first -= 1
            return verdict, first, f"cycle {start}..{end}"
    mix = {f: cycle.count(f) for f in (_ACC, _REJ, _NEITHER)}
    return (
        Verdict.INCONSISTENT,
        start,
        f"cycle {start}..{end} mixes accepting={mix[_ACC]} "
        f"rejecting={mix[_REJ]} neither={mix[_NEITHER]}",
    )


# ──────────────────────────────────────────────────
# Runs
# ──────────────────────────────────────────────────

def synchronous_trajectory(
    m: DistributedMachine, g: LabelledGraph, steps: int
) -> list[Configuration]:
    """C0..C_steps"""
    cursor = _Cursor(_Stepper(m, g), init_configuration(m, g).states)
    trajectory = [Configuration(cursor.states)]
    for _ in range(steps):
        cursor.advance()
        trajectory.append(Configuration(cursor.states))
    return trajectory


def run_synchronous(
    m: DistributedMachine,
    g: LabelledGraph,
    limits: Optional[RunLimits] = None,
    record_trace: bool = False,
) -> RunResult:
    """전체 선택 동기 실행과 순환 검출"""
    limits = limits or RunLimits()
    max_steps = limits.steps_for(g)
    stepper = _Stepper(m, g)
    cursor = _Cursor(stepper, init_configuration(m, g).states)

    flags = [cursor.flag()]
    index = {cursor.states: 0}
    history = [cursor.states] if record_trace else None

    while cursor.index < max_steps:
        cursor.advance()
        i = cursor.index
        if history is not None:
            history.append(cursor.states)
        seen = index.get(cursor.states)
        if seen is not None:
            verdict, first, details = _classify(flags, seen, i)
            return RunResult(verdict, first, details, (seen, i), _trace(history, seen, i))
        if len(index) >= limits.max_stored_configs:
            return _run_brent(m, g, stepper, max_steps, record_trace)
        index[cursor.states] = i
        flags.append(cursor.flag())

    return RunResult(
        Verdict.UNDECIDED, max_steps, f"no cycle within {max_steps} steps",
        trace=_trace(history, None, None),
    )


def _trace(history, start, end) -> Optional[RunTrace]:
    if history is None:
        return None
    return RunTrace(
        [Configuration(s) for s in history],
        start,
        None if start is None else end - start,
    )


def _run_brent(
    m: DistributedMachine,
    g: LabelledGraph,
    stepper: _Stepper,
    max_steps: int,
    record_trace: bool,
) -> RunResult:
    """지문 색인이 가득 찼을 때 상수 메모리 순환 검출"""
    start = init_configuration(m, g).states
    power = lam = 1
    tortoise = _Cursor(stepper, start)
    hare = _Cursor(stepper, start)
    hare.advance()
    while tortoise.states != hare.states:
        if hare.index >= max_steps:
            return RunResult(Verdict.UNDECIDED, max_steps, f"no cycle within {max_steps} steps")
        if power == lam:
            tortoise = hare.copy()
            power *= 2
            lam = 0
        hare.advance()
        lam += 1

    tortoise = _Cursor(stepper, start)
    hare = _Cursor(stepper, start)
    for _ in range(lam):
        hare.advance()
    while tortoise.states != hare.states:
        tortoise.advance()
        hare.advance()
    mu = tortoise.index

    replay = _Cursor(stepper, start)
    flags = [replay.flag()]
    history = [replay.states] if record_trace else None
    while replay.index < mu + lam:
        replay.advance()
        flags.append(replay.flag())
        if history is not None:
            history.append(replay.states)
    verdict, first, details = _classify(flags, mu, mu + lam)
    return RunResult(verdict, first, details + " (brent)", (mu, mu + lam), _trace(history, mu, mu + lam))


def run_scheduled(
    m: DistributedMachine,
    g: LabelledGraph,
    schedule: "Schedule",
    limits: Optional[RunLimits] = None,
    record_trace: bool = False,
) -> RunResult:
    """스케줄이 선택을 정하는 실행"""
    limits = limits or RunLimits()
    max_steps = limits.steps_for(g)
    stepper = _Stepper(m, g)
    cursor = _Cursor(stepper, init_configuration(m, g).states)
    nodes = set(g.nodes())

    flags = [cursor.flag()]
    history = [cursor.states] if record_trace else None
    phase = schedule.phase()
    index: Optional[dict] = {(cursor.states, phase): 0} if phase is not None else None

    # 주기 위상이 없는 스케줄은 전역 고정점에서 멈춤
    active: set[int] = set()
    if index is None:
        active = _active_nodes(stepper, cursor.states, nodes)
        if not active:
            verdict, first, details = _classify(flags, 0, 1)
            return RunResult(verdict, first, "fixed point at 0", (0, 1), _trace(history, 0, 1))

    while cursor.index < max_steps:
        selection = schedule.next_selection()
        if not schedule.permitted(selection) or not set(selection) <= nodes:
            raise SelectionError(
                f"{schedule.kind} schedule produced a non-permitted selection: {sorted(selection)}"
            )
        changed = cursor.advance(selection)
        i = cursor.index
        flags.append(cursor.flag())
        if history is not None:
            history.append(cursor.states)

        if index is not None:
            key = (cursor.states, schedule.phase())
            seen = index.get(key)
            if seen is not None:
                verdict, first, details = _classify(flags, seen, i)
                return RunResult(verdict, first, details, (seen, i), _trace(history, seen, i))
            if len(index) < limits.max_stored_configs:
                index[key] = i
        elif changed:
            active -= stepper.dirty(changed)
            active |= _active_nodes(stepper, cursor.states, stepper.dirty(changed))
            if not active:
                verdict, first, details = _classify(flags, i, i + 1)
                return RunResult(verdict, first, f"fixed point at {i}", (i, i + 1), _trace(history, i, i + 1))

    return RunResult(
        Verdict.UNDECIDED, max_steps, f"undecided after {max_steps} scheduled steps",
        trace=_trace(history, None, None),
    )


def _active_nodes(stepper: _Stepper, states: tuple, candidates: Iterable[int]) -> set[int]:
    return {v for v in candidates if stepper.next_state(states, v) != states[v]}


# ──────────────────────────────────────────────────
# Consistency sampling
# ──────────────────────────────────────────────────

@dataclass
class ConsistencyReport:
    """여러 스케줄에서의 판정 비교 (반례 탐색만 가능)"""
    verdicts: list[tuple[str, RunResult]] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        decided = {r.verdict for _, r in self.verdicts if r.decided}
        inconsistent = any(r.verdict is Verdict.INCONSISTENT for _, r in self.verdicts)
        return len(decided) <= 1 and not inconsistent

    def to_dict(self) -> dict:
        return {
            "consistent": self.consistent,
            "runs": [{"schedule": label, **r.to_dict()} for label, r in self.verdicts],
        }


def check_consistency(
    m: DistributedMachine,
    g: LabelledGraph,
    schedules: Sequence["Schedule"],
    limits: Optional[RunLimits] = None,
) -> ConsistencyReport:
    report = ConsistencyReport()
    for schedule in schedules:
        label = schedule.describe()
        report.verdicts.append((label, run_scheduled(m, g, schedule, limits)))
    return report


# ──────────────────────────────────────────────────
# Trace format
# ──────────────────────────────────────────────────

def format_trace(result: RunResult) -> str:
    """step 줄들과 마지막 verdict 줄"""
    lines = []
    if result.trace is not None:
        for i, c in enumerate(result.trace.configurations):
            lines.append(f"step {i} {c.format()}")
    lines.append(result.verdict_line())
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> tuple[list[Configuration], Optional[str]]:
    """trace 텍스트에서 설정 열과 verdict 줄 복원"""
    configurations: list[Configuration] = []
    verdict_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "verdict":
            verdict_line = line
            continue
        if tokens[0] != "step" or len(tokens) < 2 or int(tokens[1]) != len(configurations):
            raise ValueError(f"line {lineno}: expected 'step {len(configurations)} ...'")
        states = []
        for position, token in enumerate(tokens[2:]):
            node, sep, state_text = token.partition(":")
            if not sep or int(node) != position:
                raise ValueError(f"line {lineno}: expected node {position}")
            states.append(parse_state(state_text))
        configurations.append(Configuration(tuple(states)))
    return configurations, verdict_line


def replay_trace(m: DistributedMachine, text: str) -> RunResult:
    """동기 실행 trace 를 독립적으로 재분류"""
    configurations, _ = parse_trace(text)
    flags: list[str] = []
    index: dict = {}
    for i, c in enumerate(configurations):
        seen = index.get(c.states)
        if seen is not None:
            verdict, first, details = _classify(flags, seen, i)
            return RunResult(verdict, first, details, (seen, i))
        index[c.states] = i
        if c.is_accepting(m):
            flags.append(_ACC)
        elif c.is_rejecting(m):
            flags.append(_REJ)
        else:
            flags.append(_NEITHER)
    steps = max(len(configurations) - 1, 0)
    return RunResult(Verdict.UNDECIDED, steps, "trace does not close a cycle")
