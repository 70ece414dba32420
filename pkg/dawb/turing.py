"""
Left-bounded Turing machines
TM 모델, 한 단계 관계 (TM), 직접 실행, T∞ 변환, TM 텍스트 형식
"""

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping, Optional

BLANK = "_"
LEFT, RIGHT = -1, +1
MARK_VISITED = "v"
MARK_CURRENT = "c"
T_INF_PHASES = ("sim", "mark", "sweep", "return", "resume")

_MOVES = {"L": LEFT, "R": RIGHT}
_FORBIDDEN = set("'") | {" ", "\t", "\n"}

Transition = tuple[str, str, int]


class TuringError(ValueError):
    """TM 관련 오류 기본 클래스"""
    pass


class TMFormatError(TuringError):
    """TM 텍스트 형식 오류"""
    pass


@dataclass(frozen=True, eq=True)
class TuringMachine:
    """왼쪽이 막힌 단일 테이프 TM"""
    name: str
    states: tuple[str, ...]
    initial: str
    accepting: frozenset[str]
    tape_alphabet: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    delta: Mapping[tuple[str, str], Transition] = field(default_factory=dict)
    blank: str = BLANK

    __hash__ = None  # type: ignore[assignment]

    def __post_init__(self):
        for token in (*self.states, *self.tape_alphabet):
            if not token or any(ch in _FORBIDDEN for ch in token):
                raise TuringError(f"token must be non-empty and free of whitespace/quotes: {token!r}")
        if len(set(self.states)) != len(self.states):
            raise TuringError("duplicate states")
        if len(set(self.tape_alphabet)) != len(self.tape_alphabet):
            raise TuringError("duplicate tape symbols")
        if self.initial not in self.states:
            raise TuringError(f"initial state {self.initial} is not a state")
        if not self.accepting <= set(self.states):
            raise TuringError(f"accepting states {sorted(self.accepting - set(self.states))} are not states")
        if self.blank not in self.tape_alphabet:
            raise TuringError(f"blank {self.blank} is not in the tape alphabet")
        if self.blank in self.input_alphabet:
            raise TuringError("blank must not be an input symbol")
        if not set(self.input_alphabet) <= set(self.tape_alphabet):
            raise TuringError("input alphabet must be contained in the tape alphabet")
        for (q, s), (q2, s2, d) in self.delta.items():
            if q in self.accepting:
                raise TuringError(f"transition defined on accepting state {q}")
            if q not in self.states or q2 not in self.states:
                raise TuringError(f"transition uses unknown state: {q} -> {q2}")
            if s not in self.tape_alphabet or s2 not in self.tape_alphabet:
                raise TuringError(f"transition uses unknown symbol: {s} -> {s2}")
            if d not in (LEFT, RIGHT):
                raise TuringError(f"head move must be -1 or +1: {d}")

    def transition(self, state: str, symbol: str) -> Optional[Transition]:
        return self.delta.get((state, symbol))

    def start(self) -> "TMConfig":
        return TMConfig(self.initial, (self.blank,), 0)


@dataclass(frozen=True)
class TMConfig:
    """(q, θ, p): 공백을 지우지 않는 테이프 단어"""
    state: str
    tape: tuple[str, ...]
    head: int

    @property
    def symbol(self) -> str:
        return self.tape[self.head]

    def format(self) -> str:
        cells = [f"[{s}]" if i == self.head else s for i, s in enumerate(self.tape)]
        return f"{self.state} {' '.join(cells)}"


class StepKind(str, Enum):
    NEXT = "NEXT"
    HALTED = "HALTED"
    BOUNDARY = "BOUNDARY"


@dataclass(frozen=True)
class StepResult:
    kind: StepKind
    config: TMConfig


class RunKind(str, Enum):
    HALTS = "HALTS"
    RUNNING = "RUNNING"
    BOUNDARY = "BOUNDARY"


@dataclass
class TMRunOutcome:
    """tm_run 결과"""
    kind: RunKind
    steps: int
    config: TMConfig
    cells_visited: int

    @property
    def halts(self) -> bool:
        return self.kind is RunKind.HALTS

    def summary(self) -> str:
        if self.kind is RunKind.HALTS:
            return f"HALTS steps={self.steps} cells={self.cells_visited}"
        return f"{self.kind.value} steps={self.steps}"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "steps": self.steps,
            "cells_visited": self.cells_visited,
            "state": self.config.state,
            "head": self.config.head,
            "tape": list(self.config.tape),
        }


# ──────────────────────────────────────────────────
# Execution
# ──────────────────────────────────────────────────

def tm_step(t: TuringMachine, c: TMConfig) -> StepResult:
    """관계 (TM) 의 한 단계"""
    symbol = c.tape[c.head]
    if symbol not in t.tape_alphabet:
        raise TuringError(f"symbol {symbol!r} is not in the tape alphabet of {t.name}")
    move = t.transition(c.state, symbol)
    if move is None:
        return StepResult(StepKind.HALTED, c)
    q2, s2, d = move
    p2 = c.head + d
    if p2 < 0:
        return StepResult(StepKind.BOUNDARY, c)
    tape = c.tape[:c.head] + (s2,) + c.tape[c.head + 1:]
    if p2 == len(tape):
        tape = tape + (t.blank,)
    return StepResult(StepKind.NEXT, TMConfig(q2, tape, p2))


def tm_run(t: TuringMachine, max_steps: int, start: Optional[TMConfig] = None) -> TMRunOutcome:
    """공백 테이프에서 최대 max_steps 단계 실행"""
    if max_steps < 0:
        raise TuringError(f"max_steps must be non-negative: {max_steps}")
    c = start or t.start()
    for steps in range(max_steps + 1):
        result = tm_step(t, c)
        if result.kind is StepKind.HALTED:
            return TMRunOutcome(RunKind.HALTS, steps, c, len(c.tape))
        if result.kind is StepKind.BOUNDARY:
            return TMRunOutcome(RunKind.BOUNDARY, steps, c, len(c.tape))
        if steps == max_steps:
            break
        c = result.config
    return TMRunOutcome(RunKind.RUNNING, max_steps, c, len(c.tape))


def tm_configurations(t: TuringMachine, max_steps: int) -> list[TMConfig]:
    """정지 또는 한도까지의 설정 열 (시작 설정 포함)"""
    c = t.start()
    configurations = [c]
    for _ in range(max_steps):
        result = tm_step(t, c)
        if result.kind is not StepKind.NEXT:
            break
        c = result.config
        configurations.append(c)
    return configurations


# ──────────────────────────────────────────────────
# T∞
# ──────────────────────────────────────────────────

def _marked(symbol: str, marker: str) -> str:
    return f"{symbol}|{marker}"


def split_symbol(symbol: str) -> tuple[str, Optional[str]]:
    """T∞ 기호를 (원래 기호, 표시) 로 분리"""
    base, sep, marker = symbol.rpartition("|")
    if sep and marker in (MARK_VISITED, MARK_CURRENT):
        return base, marker
    return symbol, None


def project_tape(tape: tuple[str, ...]) -> tuple[str, ...]:
    """표시를 제거한 테이프"""
    return tuple(split_symbol(s)[0] for s in tape)


def marked_frontier(tape: tuple[str, ...]) -> int:
    """표시된 칸의 수 (표시된 칸은 항상 접두부)"""
    count = 0
    for symbol in tape:
        if split_symbol(symbol)[1] is None:
            break
        count += 1
    return count


def phase_state(phase: str, q: str) -> str:
    return f"{phase}.{q}"


def make_t_infinity(t: TuringMachine) -> TuringMachine:
    """
    T 가 정지하면 정지하고, 아니면 모든 칸을 방문하는 T∞

    한 라운드 = T 전이 한 번 + 서브루틴:
    떠난 칸을 visited, 도착 칸을 current 로 표시하고, 표시된 접두부 끝까지
    오른쪽으로 훑어 첫 빈 칸을 visited 로 만든 뒤, current 칸으로 돌아와
    표시를 visited 로 바꾸고 재개
    """
    symbols = t.tape_alphabet
    visited = {s: _marked(s, MARK_VISITED) for s in symbols}
    current = {s: _marked(s, MARK_CURRENT) for s in symbols}
    all_forms = {s: (s, visited[s], current[s]) for s in symbols}

    delta: dict[tuple[str, str], Transition] = {}
    for q in t.states:
        sim, mark, sweep, ret, resume = (phase_state(p, q) for p in T_INF_PHASES)
        for s in symbols:
            move = t.transition(q, s)
            if move is not None:
                q2, s2, d = move
                for form in all_forms[s]:
                    delta[(sim, form)] = (phase_state("mark", q2), visited[s2], d)
            for form in all_forms[s]:
                delta[(mark, form)] = (sweep, current[s], RIGHT)
            for form in (visited[s], current[s]):
                delta[(sweep, form)] = (sweep, form, RIGHT)
            delta[(sweep, s)] = (ret, visited[s], LEFT)
            for form in (s, visited[s]):
                delta[(ret, form)] = (ret, form, LEFT)
            delta[(ret, current[s])] = (resume, visited[s], RIGHT)
            for form in all_forms[s]:
                delta[(resume, form)] = (sim, form, LEFT)

    return TuringMachine(
        name=f"{t.name}-inf",
        states=tuple(phase_state(p, q) for q in t.states for p in T_INF_PHASES),
        initial=phase_state("sim", t.initial),
        accepting=frozenset(phase_state("sim", f) for f in t.accepting),
        tape_alphabet=tuple(form for s in symbols for form in all_forms[s]),
        input_alphabet=t.input_alphabet,
        delta=delta,
        blank=t.blank,
    )


def t_infinity_rounds(tinf: TuringMachine, max_steps: int) -> list[TMConfig]:
    """T∞ 실행에서 라운드 경계 (sim 단계) 설정만 추출"""
    return [
        c for c in tm_configurations(tinf, max_steps)
        if c.state.startswith("sim.")
    ]


# ──────────────────────────────────────────────────
# TM text format
# ──────────────────────────────────────────────────

def format_tm(t: TuringMachine) -> str:
    """TM 텍스트 직렬화"""
    lines = [
        f"tm {t.name}",
        f"states {' '.join(t.states)}",
        f"initial {t.initial}",
        f"accept {' '.join(q for q in t.states if q in t.accepting)}".rstrip(),
        f"blank {t.blank}",
        f"input {' '.join(t.input_alphabet)}".rstrip(),
        f"tape {' '.join(t.tape_alphabet)}",
    ]
    for q in t.states:
        for s in t.tape_alphabet:
            move = t.transition(q, s)
            if move is not None:
                q2, s2, d = move
                lines.append(f"delta {q} {s} -> {q2} {s2} {'L' if d == LEFT else 'R'}")
    return "\n".join(lines) + "\n"


def parse_tm(text: str) -> TuringMachine:
    """TM 텍스트 파싱"""
    name = "tm"
    header = False
    fields: dict[str, list[str]] = {}
    delta: dict[tuple[str, str], Transition] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, *tokens = line.split()
        if keyword == "tm":
            header = True
            if tokens:
                name = tokens[0]
        elif keyword in ("states", "initial", "accept", "blank", "input", "tape"):
            if keyword in fields:
                raise TMFormatError(f"line {lineno}: duplicate '{keyword}' line")
            fields[keyword] = tokens
        elif keyword == "delta":
            if len(tokens) != 6 or tokens[2] != "->" or tokens[5] not in _MOVES:
                raise TMFormatError(f"line {lineno}: expected 'delta <q> <sym> -> <q'> <sym'> <L|R>'")
            q, s, _, q2, s2, d = tokens
            if (q, s) in delta:
                raise TMFormatError(f"line {lineno}: duplicate transition for ({q}, {s})")
            delta[(q, s)] = (q2, s2, _MOVES[d])
        else:
            raise TMFormatError(f"line {lineno}: unknown directive {keyword!r}")

    if not header:
        raise TMFormatError("missing 'tm' header")
    for required in ("states", "initial"):
        if required not in fields:
            raise TMFormatError(f"missing '{required}' line")
    if len(fields["initial"]) != 1:
        raise TMFormatError("'initial' takes exactly one state")

    blank = fields.get("blank", [BLANK])
    if len(blank) != 1:
        raise TMFormatError("'blank' takes exactly one symbol")
    input_alphabet = tuple(fields.get("input", []))
    if "tape" in fields:
        tape_alphabet = tuple(fields["tape"])
    else:
        derived = [blank[0], *input_alphabet]
        for (_, s), (_, s2, _) in delta.items():
            derived.extend((s, s2))
        tape_alphabet = tuple(dict.fromkeys(derived))

    try:
        return TuringMachine(
            name=name,
            states=tuple(fields["states"]),
            initial=fields["initial"][0],
            accepting=frozenset(fields.get("accept", [])),
            tape_alphabet=tape_alphabet,
            input_alphabet=input_alphabet,
            delta=delta,
            blank=blank[0],
        )
    except TuringError as e:
        raise TMFormatError(str(e))


def load_tm(path: str | Path) -> TuringMachine:
    return parse_tm(Path(path).read_text(encoding="utf-8"))


def save_tm(t: TuringMachine, path: str | Path) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(format_tm(t), encoding="utf-8")
    return target
