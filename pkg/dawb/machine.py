"""
Distributed machine model
상태 패턴, 우선순위 규칙, 분산 머신 추상 클래스, 머신 텍스트 형식
"""

import itertools
import re
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Hashable, Iterable, Iterator, Mapping, Optional, Sequence

from .graphs import Alphabet, NodeLabel


State = Hashable

BOTTOM = "⊥"
ACCEPT = "✓□"
BOX = "□"
UNINIT = "∘"

DETECTION_KINDS = ("d", "D")
ACCEPTANCE_KINDS = ("a", "A")

STABLE_CONSENSUS = "stable-consensus"
HALTING = "halting"
PRODUCT_MODES = (STABLE_CONSENSUS, HALTING)

_INT_TOKEN = re.compile(r"^[+-]?\d+$")
_RESERVED = set("(),'*") | {" ", "\t", "\n"}
_ATOM = re.compile(r"^count\((.+)\) (>=|==|<=) (\d+)$")


class MachineError(ValueError):
    """머신 관련 오류 기본 클래스"""
    pass


class MachineFormatError(MachineError):
    """머신 텍스트 형식 오류"""
    pass


class AlphabetMismatchError(MachineError):
    """머신과 그래프의 알파벳 불일치"""
    pass


class Wildcard:
    """패턴 안에서 임의의 성분과 일치"""

    def __eq__(self, other) -> bool:
        return isinstance(other, Wildcard)

    def __hash__(self) -> int:
        return hash("*")

    def __repr__(self) -> str:
        return "*"

    def __reduce__(self):
        return "ANY"


ANY = Wildcard()


# ──────────────────────────────────────────────────
# State text
# ──────────────────────────────────────────────────

@lru_cache(maxsize=65536, typed=True)
def format_state(state: State) -> str:
    """상태의 정규 텍스트 표현"""
    if isinstance(state, Wildcard):
        return "*"
    if isinstance(state, bool):
        raise MachineError(f"boolean is not a valid state component: {state!r}")
    if isinstance(state, int):
        return str(state)
    if isinstance(state, str):
        if "'" in state:
            raise MachineError(f"state token must not contain quotes: {state!r}")
        if not state or _INT_TOKEN.match(state) or any(ch in _RESERVED for ch in state):
            if any(ch in (" ", "\t", "\n") for ch in state):
                raise MachineError(f"state token must not contain whitespace: {state!r}")
            return f"'{state}'"
        return state
    if isinstance(state, tuple):
        return "(" + ",".join(format_state(item) for item in state) + ")"
    raise MachineError(f"unsupported state value: {state!r}")


def state_key(state: State) -> str:
    """상태의 전순서 키"""
    return format_state(state)


def parse_state(text: str, pattern: bool = False) -> State:
    """정규 텍스트에서 상태(또는 패턴) 복원"""
    pos = 0

    def fail(message: str):
        raise MachineFormatError(f"{message} in state {text!r}")

    def item() -> State:
        nonlocal pos
        if pos >= len(text):
            fail("unexpected end")
        ch = text[pos]
        if ch == "(":
            pos += 1
            items: list[State] = []
            if text[pos:pos + 1] == ")":
                pos += 1
                return ()
            while True:
                items.append(item())
                if pos >= len(text):
                    fail("unterminated tuple")
                if text[pos] == ",":
                    pos += 1
                elif text[pos] == ")":
                    pos += 1
                    return tuple(items)
                else:
                    fail(f"unexpected {text[pos]!r}")
        if ch == "'":
            end = text.find("'", pos + 1)
            if end < 0:
                fail("unterminated quote")
            token = text[pos + 1:end]
            pos = end + 1
            return token
        start = pos
        while pos < len(text) and text[pos] not in "(),'":
            pos += 1
        token = text[start:pos]
        if not token or any(ch.isspace() for ch in token):
            fail(f"bad token {token!r}")
        if token == "*":
            if not pattern:
                fail("wildcard outside a pattern")
            return ANY
        if _INT_TOKEN.match(token):
            return int(token)
        return token

    value = item()
    if pos != len(text):
        fail(f"trailing text {text[pos:]!r}")
    return value


# ──────────────────────────────────────────────────
# Patterns, guards, rules
# ──────────────────────────────────────────────────

def _matches(shape, state) -> bool:
    if isinstance(shape, Wildcard):
        return True
    if isinstance(shape, tuple):
        return (
            isinstance(state, tuple)
            and len(shape) == len(state)
            and all(_matches(s, q) for s, q in zip(shape, state))
        )
    return type(shape) is type(state) and shape == state


def _is_concrete(shape) -> bool:
    if isinstance(shape, Wildcard):
        return False
    if isinstance(shape, tuple):
        return all(_is_concrete(s) for s in shape)
    return True


@dataclass(frozen=True)
class Pattern:
    """와일드카드를 포함할 수 있는 상태 모양"""
    shape: State

    def matches(self, state: State) -> bool:
        return _matches(self.shape, state)

    @property
    def concrete(self) -> bool:
        return _is_concrete(self.shape)

    def __str__(self) -> str:
        return format_state(self.shape)


@dataclass(frozen=True)
class CountAtom:
    """count(pat) op k"""
    pattern: Pattern
    op: str
    bound: int

    def __post_init__(self):
        if self.op not in (">=", "==", "<="):
            raise MachineError(f"unsupported comparison {self.op!r}")
        if self.bound < 0:
            raise MachineError(f"count bound must be non-negative: {self.bound}")

    def holds(self, count: int) -> bool:
        if self.op == ">=":
            return count >= self.bound
        if self.op == "<=":
            return count <= self.bound
        return count == self.bound

    def __str__(self) -> str:
        return f"count({self.pattern}) {self.op} {self.bound}"


@dataclass(frozen=True)
class Guard:
    """CountAtom 들의 논리곱 (빈 논리곱은 true)"""
    atoms: tuple[CountAtom, ...] = ()

    def holds(self, view: "NeighborhoodView") -> bool:
        return all(atom.holds(view.count(atom.pattern)) for atom in self.atoms)

    def __str__(self) -> str:
        return " & ".join(str(a) for a in self.atoms) if self.atoms else "true"


@dataclass(frozen=True)
class Rule:
    """패턴에 맞고 가드가 성립하면 result 로 전이"""
    pattern: Pattern
    guard: Guard
    result: State
    name: str = field(default="rule", compare=False)


def at_least(shape: State, bound: int = 1) -> CountAtom:
    return CountAtom(Pattern(shape), ">=", bound)


def at_most(shape: State, bound: int) -> CountAtom:
    return CountAtom(Pattern(shape), "<=", bound)


def none_of(shape: State) -> CountAtom:
    return CountAtom(Pattern(shape), "==", 0)


def rule(name: str, shape: State, result: State, *atoms: CountAtom) -> Rule:
    return Rule(Pattern(shape), Guard(tuple(atoms)), result, name)


# ──────────────────────────────────────────────────
# Neighbourhood views
# ──────────────────────────────────────────────────

@dataclass(frozen=True)
class NeighborhoodView:
    """이웃 상태별 상한 적용 개수 (0 인 항목은 생략)"""
    capped: Mapping[State, int]

    @classmethod
    def from_states(cls, states: Iterable[State], beta: int) -> "NeighborhoodView":
        counts = Counter(states)
        return cls({q: min(n, beta) for q, n in counts.items()})

    def __getitem__(self, state: State) -> int:
        return self.capped.get(state, 0)

    def count(self, pattern: Pattern) -> int:
        """패턴에 맞는 상태들의 상한 개수 합"""
        return sum(n for q, n in self.capped.items() if pattern.matches(q))

    def total(self) -> int:
        return sum(self.capped.values())

    def project(self, component: int, beta: int) -> "NeighborhoodView":
        """곱 상태의 한 성분으로 합산한 뷰 (성분 상한으로 다시 자름)"""
        projected: dict[State, int] = {}
        for q, n in self.capped.items():
            part = q[component]
            projected[part] = projected.get(part, 0) + n
        return NeighborhoodView({q: min(n, beta) for q, n in projected.items()})

    def key(self) -> frozenset:
        return frozenset(self.capped.items())


# ──────────────────────────────────────────────────
# Machines
# ──────────────────────────────────────────────────

def labels_of(alphabet: Alphabet) -> list[NodeLabel]:
    """알파벳의 모든 라벨"""
    if alphabet is Alphabet.PLAIN:
        return [NodeLabel(n) for n in range(3)]
    return [NodeLabel(n, d, s) for n in range(3) for d in (-1, 1) for s in (0, 1)]


class DistributedMachine(ABC):
    """분산 머신 추상 클래스"""

    name: str
    alphabet: Alphabet
    beta: int
    detection: str
    acceptance: str

    @abstractmethod
    def init_state(self, label: NodeLabel) -> State:
        """초기화 사상"""
        pass

    @abstractmethod
    def transition(self, state: State, view: NeighborhoodView) -> State:
        """첫 번째로 일치하는 규칙의 결과, 없으면 state (silent)"""
        pass

    @abstractmethod
    def is_accepting(self, state: State) -> bool:
        pass

    @abstractmethod
    def is_rejecting(self, state: State) -> bool:
        pass

    @abstractmethod
    def states(self) -> Iterator[State]:
        """유한 상태 목록"""
        pass


class RuleMachine(DistributedMachine):
    """명시적 우선순위 규칙 목록으로 정의된 머신"""

    def __init__(
        self,
        name: str,
        alphabet: Alphabet,
        beta: int,
        detection: str,
        acceptance: str,
        states: Sequence[State],
        init: Mapping[NodeLabel, State],
        rules: Sequence[Rule],
        accepting: Iterable[State],
        rejecting: Iterable[State],
    ):
        if detection not in DETECTION_KINDS:
            raise MachineError(f"detection must be d or D: {detection!r}")
        if acceptance not in ACCEPTANCE_KINDS:
            raise MachineError(f"acceptance must be a or A: {acceptance!r}")
        self.name = name
        self.alphabet = Alphabet(alphabet)
        self.beta = beta
        self.detection = detection
        self.acceptance = acceptance
        self._states = tuple(dict.fromkeys(states))
        self.init = dict(init)
        self.rules = tuple(rules)
        self.accepting = frozenset(accepting)
        self.rejecting = frozenset(rejecting)

        self._concrete: dict[State, list[int]] = {}
        self._wild: list[int] = []
        for index, r in enumerate(self.rules):
            if r.pattern.concrete:
                self._concrete.setdefault(r.pattern.shape, []).append(index)
            else:
                self._wild.append(index)
        self._dispatch: dict[State, tuple[Rule, ...]] = {}

    def init_state(self, label: NodeLabel) -> State:
        try:
            return self.init[label]
        except KeyError:
            raise AlphabetMismatchError(
                f"machine {self.name} has no initial state for label {' '.join(label.tokens())}"
            )

    def rules_for(self, state: State) -> tuple[Rule, ...]:
        """state 에 적용 가능한 규칙 (우선순위 순)"""
        cached = self._dispatch.get(state)
        if cached is None:
            indices = list(self._concrete.get(state, ()))
            indices.extend(i for i in self._wild if self.rules[i].pattern.matches(state))
            cached = tuple(self.rules[i] for i in sorted(indices))
            self._dispatch[state] = cached
        return cached

    def transition(self, state: State, view: NeighborhoodView) -> State:
        for r in self.rules_for(state):
            if r.guard.holds(view):
                return r.result
        return state

    def is_accepting(self, state: State) -> bool:
        return state in self.accepting

    def is_rejecting(self, state: State) -> bool:
        return state in self.rejecting

    def states(self) -> Iterator[State]:
        return iter(self._states)

    def with_init(self, alphabet: Alphabet, init: Mapping[NodeLabel, State], name: Optional[str] = None) -> "RuleMachine":
        """초기화 사상만 바꾼 사본"""
        return RuleMachine(
            name or self.name,
            alphabet,
            self.beta,
            self.detection,
            self.acceptance,
            self._states,
            init,
            self.rules,
            self.accepting,
            self.rejecting,
        )

    def _signature(self):
        return (
            self.name,
            self.alphabet,
            self.beta,
            self.detection,
            self.acceptance,
            self._states,
            tuple(sorted((tuple(l.tokens()), format_state(q)) for l, q in self.init.items())),
            self.rules,
            self.accepting,
            self.rejecting,
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, RuleMachine) and self._signature() == other._signature()

    __hash__ = None  # type: ignore[assignment]

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_dispatch"] = {}
        return state

    def __repr__(self) -> str:
        return f"RuleMachine({self.name!r}, {len(self._states)} states, {len(self.rules)} rules)"


class ProductMachine(DistributedMachine):
    """두 머신의 동기 곱 (성분별 사영 뷰)"""

    def __init__(
        self,
        first: DistributedMachine,
        second: DistributedMachine,
        mode: str,
        name: Optional[str] = None,
    ):
        if mode not in PRODUCT_MODES:
            raise MachineError(
                f"지원하지 않는 곱 모드: {mode}\n"
                f"지원 모드: {', '.join(PRODUCT_MODES)}"
            )
        self.first = first
        self.second = second
        self.mode = mode
        self.name = name or f"{first.name}*{second.name}"
        self.alphabet = first.alphabet
        self.beta = max(first.beta, second.beta)
        self.detection = "D" if self.beta >= 2 else "d"
        self.acceptance = "a" if mode == HALTING else "A"

    def init_state(self, label: NodeLabel) -> State:
        return (self.first.init_state(label), self.second.init_state(label))

    def transition(self, state: State, view: NeighborhoodView) -> State:
        q1, q2 = state  # type: ignore[misc]
        if self.mode == HALTING and self.first.is_rejecting(q1):
            return state
        return (
            self.first.transition(q1, view.project(0, self.first.beta)),
            self.second.transition(q2, view.project(1, self.second.beta)),
        )

    def is_accepting(self, state: State) -> bool:
        q1, q2 = state  # type: ignore[misc]
        return self.first.is_accepting(q1) and self.second.is_accepting(q2)

    def is_rejecting(self, state: State) -> bool:
        q1, q2 = state  # type: ignore[misc]
        return self.first.is_rejecting(q1) or (
            self.first.is_accepting(q1) and self.second.is_rejecting(q2)
        )

    def states(self) -> Iterator[State]:
        return itertools.product(list(self.first.states()), list(self.second.states()))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProductMachine)
            and (self.name, self.mode, self.first, self.second)
            == (other.name, other.mode, other.first, other.second)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ProductMachine({self.name!r}, mode={self.mode})"


# ──────────────────────────────────────────────────
# Validation
# ──────────────────────────────────────────────────

_MAX_VIEW_CLASSES = 200_000


def validate_machine(m: DistributedMachine) -> list[str]:
    """머신 불변식 검사 결과 (빈 목록이면 통과)"""
    diagnostics: list[str] = []
    if m.beta < 1:
        diagnostics.append(f"counting bound must be positive: {m.beta}")
    if m.detection == "d" and m.beta != 1:
        diagnostics.append(f"detection d requires beta = 1, got {m.beta}")
    if m.detection == "D" and m.beta < 2:
        diagnostics.append(f"detection D requires beta >= 2, got {m.beta}")

    if isinstance(m, ProductMachine):
        if m.first.alphabet is not m.second.alphabet:
            diagnostics.append("product components use different alphabets")
        if m.mode == HALTING and "A" in (m.first.acceptance, m.second.acceptance):
            diagnostics.append("halting product requires two halting-acceptance components")
        for tag, component in (("first", m.first), ("second", m.second)):
            diagnostics.extend(f"{tag} component: {d}" for d in validate_machine(component))
        return diagnostics

    if not isinstance(m, RuleMachine):
        return diagnostics

    inventory = set(m.states())
    overlap = m.accepting & m.rejecting
    if overlap:
        diagnostics.append(
            "accepting and rejecting sets overlap: "
            + ", ".join(sorted(format_state(q) for q in overlap))
        )
    for q in sorted(m.accepting | m.rejecting, key=state_key):
        if q not in inventory:
            diagnostics.append(f"accepting/rejecting state {format_state(q)} is not in the inventory")
    for label in labels_of(m.alphabet):
        if label not in m.init:
            diagnostics.append(f"no initial state for label {' '.join(label.tokens())}")
        elif m.init[label] not in inventory:
            diagnostics.append(f"initial state {format_state(m.init[label])} is not in the inventory")
    for index, r in enumerate(m.rules):
        if r.result not in inventory:
            diagnostics.append(f"rule {index} ({r.name}) produces unknown state {format_state(r.result)}")

    if m.acceptance == "a":
        states = list(m.states())
        for q in sorted(m.accepting | m.rejecting, key=state_key):
            found = _non_silent_rule(m, q, states)
            if found is not None:
                index, r = found
                diagnostics.append(
                    f"halting violation: {format_state(q)} rewritten to "
                    f"{format_state(r.result)} by rule {index} ({r.name})"
                )
    return diagnostics


def _non_silent_rule(
    m: RuleMachine, q: State, inventory: list[State]
) -> Optional[tuple[int, Rule]]:
    """q 를 다른 상태로 바꾸는 뷰가 있으면 그 규칙을 반환"""
    rules = m.rules_for(q)
    if all(r.result == q for r in rules):
        return None
    index_of = {id(r): i for i, r in enumerate(m.rules)}

    patterns = list(dict.fromkeys(a.pattern for r in rules for a in r.guard.atoms))
    regions: dict[tuple[bool, ...], int] = {}
    for state in inventory:
        signature = tuple(p.matches(state) for p in patterns)
        if any(signature):
            regions[signature] = regions.get(signature, 0) + 1
    cap = max((a.bound for r in rules for a in r.guard.atoms), default=0) + 1
    signatures = list(regions)
    ranges = [range(min(m.beta * regions[s], cap) + 1) for s in signatures]

    combos = 1
    for values in ranges:
        combos *= len(values)
    if combos > _MAX_VIEW_CLASSES:
        # 조합이 너무 많으면 선행 규칙의 가림을 무시하고 규칙별로 검사
        for r in rules:
            if r.result != q and _satisfiable(r, patterns, signatures, ranges):
                return index_of[id(r)], r
        return None

    for values in itertools.product(*ranges):
        counts = [
            sum(v for s, v in zip(signatures, values) if s[k])
            for k in range(len(patterns))
        ]
        by_pattern = dict(zip(patterns, counts))
        for r in rules:
            if all(a.holds(by_pattern[a.pattern]) for a in r.guard.atoms):
                if r.result != q:
                    return index_of[id(r)], r
                break
    return None


def _satisfiable(r: Rule, patterns, signatures, ranges) -> bool:
    wanted = [patterns.index(a.pattern) for a in r.guard.atoms]
    relevant = [i for i, s in enumerate(signatures) if any(s[k] for k in wanted)]
    for values in itertools.product(*(ranges[i] for i in relevant)):
        assigned = dict(zip(relevant, values))
        if all(
            a.holds(sum(v for i, v in assigned.items() if signatures[i][k]))
            for a, k in zip(r.guard.atoms, wanted)
        ):
            return True
    return False


# ──────────────────────────────────────────────────
# Machine text format
# ──────────────────────────────────────────────────

def format_machine(m: DistributedMachine) -> str:
    """머신을 텍스트 형식으로 직렬화"""
    return "\n".join(_machine_lines(m)) + "\n"


def _machine_lines(m: DistributedMachine) -> list[str]:
    if isinstance(m, ProductMachine):
        return [
            f"product {m.name} mode {m.mode}",
            *_machine_lines(m.first),
            *_machine_lines(m.second),
            "end",
        ]
    if not isinstance(m, RuleMachine):
        raise MachineError(f"cannot serialize {type(m).__name__}")
    lines = [
        f"machine {m.name} detection {m.detection} acceptance {m.acceptance} "
        f"beta {m.beta} alphabet {m.alphabet.value}"
    ]
    lines.extend(f"state {format_state(q)}" for q in m.states())
    lines.extend(f"accept {format_state(q)}" for q in sorted(m.accepting, key=state_key))
    lines.extend(f"reject {format_state(q)}" for q in sorted(m.rejecting, key=state_key))
    for label in labels_of(m.alphabet):
        if label in m.init:
            lines.append(f"init {' '.join(label.tokens())} -> {format_state(m.init[label])}")
    for index, r in enumerate(m.rules):
        lines.append(f"rule {index} {r.pattern} | {r.guard} -> {format_state(r.result)}")
    lines.append("end")
    return lines


def parse_machine(text: str) -> DistributedMachine:
    """머신 텍스트 파싱"""
    lines = [
        (lineno, raw.strip())
        for lineno, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    machine, rest = _parse_block(lines)
    if rest:
        raise MachineFormatError(f"line {rest[0][0]}: trailing content after machine")
    return machine


def _parse_block(lines: list[tuple[int, str]]) -> tuple[DistributedMachine, list[tuple[int, str]]]:
    if not lines:
        raise MachineFormatError("missing machine header")
    lineno, header = lines[0]
    tokens = header.split()
    if tokens[0] == "product":
        if len(tokens) != 4 or tokens[2] != "mode":
            raise MachineFormatError(f"line {lineno}: expected 'product <name> mode <mode>'")
        first, rest = _parse_block(lines[1:])
        second, rest = _parse_block(rest)
        if not rest or rest[0][1] != "end":
            raise MachineFormatError(f"line {lineno}: product block is not closed")
        return ProductMachine(first, second, tokens[3], name=tokens[1]), rest[1:]

    if tokens[0] != "machine" or len(tokens) != 10:
        raise MachineFormatError(
            f"line {lineno}: expected 'machine <name> detection <d|D> acceptance <a|A> "
            "beta <k> alphabet <plain|snowball>'"
        )
    fields = dict(zip(tokens[2::2], tokens[3::2]))
    try:
        name = tokens[1]
        detection = fields["detection"]
        acceptance = fields["acceptance"]
        beta = int(fields["beta"])
        alphabet = Alphabet(fields["alphabet"])
    except (KeyError, ValueError) as e:
        raise MachineFormatError(f"line {lineno}: bad machine header ({e})")

    states: list[State] = []
    accepting: list[State] = []
    rejecting: list[State] = []
    init: dict[NodeLabel, State] = {}
    rules: list[Rule] = []
    last_priority = -1

    for position, (lineno, line) in enumerate(lines[1:], start=1):
        keyword, _, body = line.partition(" ")
        try:
            if keyword == "end":
                machine = RuleMachine(
                    name, alphabet, beta, detection, acceptance,
                    states, init, rules, accepting, rejecting,
                )
                return machine, lines[position + 1:]
            if keyword == "state":
                states.append(parse_state(body))
            elif keyword == "accept":
                accepting.append(parse_state(body))
            elif keyword == "reject":
                rejecting.append(parse_state(body))
            elif keyword == "init":
                label_text, arrow, state_text = body.partition(" -> ")
                if not arrow:
                    raise MachineFormatError("init line needs '->'")
                init[NodeLabel.parse_tokens(label_text.split())] = parse_state(state_text)
            elif keyword == "rule":
                priority, r = _parse_rule(body)
                if priority <= last_priority:
                    raise MachineFormatError("rule priorities must increase")
                last_priority = priority
                rules.append(r)
            else:
                raise MachineFormatError(f"unknown directive {keyword!r}")
        except ValueError as e:
            raise MachineFormatError(f"line {lineno}: {e}")
    raise MachineFormatError(f"machine {name} is missing 'end'")


def _parse_rule(body: str) -> tuple[int, Rule]:
    head, bar, rest = body.partition(" | ")
    guard_text, arrow, result_text = rest.rpartition(" -> ")
    if not bar or not arrow:
        raise MachineFormatError("rule line needs '<pattern> | <predicate> -> <state>'")
    priority_text, _, pattern_text = head.partition(" ")
    priority = int(priority_text)
    atoms: list[CountAtom] = []
    if guard_text != "true":
        for atom_text in guard_text.split(" & "):
            match = _ATOM.match(atom_text)
            if not match:
                raise MachineFormatError(f"bad predicate {atom_text!r}")
            atoms.append(
                CountAtom(
                    Pattern(parse_state(match.group(1), pattern=True)),
                    match.group(2),
                    int(match.group(3)),
                )
            )
    r = Rule(
        Pattern(parse_state(pattern_text, pattern=True)),
        Guard(tuple(atoms)),
        parse_state(result_text),
        name=f"r{priority}",
    )
    return priority, r


def load_machine(path: str | Path) -> DistributedMachine:
    return parse_machine(Path(path).read_text(encoding="utf-8"))


def save_machine(m: DistributedMachine, path: str | Path) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(format_machine(m), encoding="utf-8")
    return target
