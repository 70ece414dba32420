"""
Labelled graphs
라벨 그래프 데이터 모델, 그래프 패밀리 생성기, 멤버십 오라클
"""

import random
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

import networkx as nx


NLG = "NLG"
NCG = "NCG"
NQLG = "NQLG"
SFNLG = "SFNLG"
SFNCG = "SFNCG"
NO_FAMILY = "none"

MUTATION_KINDS = ("relabel-node", "add-edge", "delete-edge", "duplicate-node")


class GraphError(ValueError):
    """그래프 관련 오류 기본 클래스"""
    pass


class GraphFormatError(GraphError):
    """그래프 텍스트 형식 오류"""
    pass


class NoMutationError(GraphError):
    """유효한 변형이 존재하지 않을 때"""
    pass


class Alphabet(str, Enum):
    """라벨 알파벳"""
    PLAIN = "plain"
    SNOWBALL = "snowball"


@dataclass(frozen=True)
class NodeLabel:
    """노드 라벨: 번호 (+ 방향, 눈덩이 비트)"""
    numbering: int
    direction: Optional[int] = None
    snowball: Optional[int] = None

    def __post_init__(self):
        if self.numbering not in (0, 1, 2):
            raise GraphError(f"numbering must be in {{0,1,2}}: {self.numbering!r}")
        if (self.direction is None) != (self.snowball is None):
            raise GraphError("direction and snowball must be given together")
        if self.direction is not None and self.direction not in (-1, 1):
            raise GraphError(f"direction must be -1 or +1: {self.direction!r}")
        if self.snowball is not None and self.snowball not in (0, 1):
            raise GraphError(f"snowball must be 0 or 1: {self.snowball!r}")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet.PLAIN if self.direction is None else Alphabet.SNOWBALL

    def project(self) -> "NodeLabel":
        """첫 번째 성분으로의 사영"""
        return NodeLabel(self.numbering)

    def tokens(self) -> list[str]:
        if self.direction is None:
            return [str(self.numbering)]
        return [str(self.numbering), f"{self.direction:+d}", str(self.snowball)]

    @classmethod
    def parse_tokens(cls, tokens: Sequence[str]) -> "NodeLabel":
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise GraphFormatError(f"label tokens must be integers: {' '.join(tokens)}")
        if len(values) == 1:
            return cls(values[0])
        if len(values) == 3:
            return cls(values[0], values[1], values[2])
        raise GraphFormatError(f"label needs 1 or 3 components: {' '.join(tokens)}")


@dataclass(frozen=True)
class LabelledGraph:
    """연결된 무방향 라벨 그래프 (노드 id는 0..|V|-1)"""
    labels: tuple[NodeLabel, ...]
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.labels:
            raise GraphError("graph must have at least one node")
        n = len(self.labels)
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) references an unknown node")
            if u > v:
                raise GraphError(f"edge ({u},{v}) is not normalized")
        alphabets = {label.alphabet for label in self.labels}
        if len(alphabets) > 1:
            raise GraphError("labels mix the plain and snowball alphabets")
        if not nx.is_connected(self.to_networkx()):
            raise GraphError("graph is not connected")

    @classmethod
    def build(
        cls, labels: Iterable[NodeLabel], edges: Iterable[tuple[int, int]]
    ) -> "LabelledGraph":
        """간선 정규화 및 중복 검사 후 그래프 생성"""
        normalized: set[tuple[int, int]] = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in normalized:
                raise GraphError(f"duplicate edge ({u},{v})")
            normalized.add(key)
        return cls(tuple(labels), frozenset(normalized))

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def alphabet(self) -> Alphabet:
        return self.labels[0].alphabet

    @cached_property
    def _adjacency(self) -> tuple[tuple[int, ...], ...]:
        adjacent: list[list[int]] = [[] for _ in self.labels]
        for u, v in self.edges:
            adjacent[u].append(v)
            adjacent[v].append(u)
        return tuple(tuple(sorted(ns)) for ns in adjacent)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def nodes(self) -> range:
        return range(len(self.labels))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        for v, label in enumerate(self.labels):
            graph.add_node(v, label=label)
        graph.add_edges_from(self.edges)
        return graph

    def projected(self) -> "LabelledGraph":
        """모든 라벨을 번호 성분으로 사영한 그래프"""
        return LabelledGraph(tuple(l.project() for l in self.labels), self.edges)


@dataclass
class Violation:
    """위반된 정의 조항"""
    clause: str
    detail: str

    def __str__(self) -> str:
        return f"{self.clause}: {self.detail}"


@dataclass
class FamilyReport:
    """그래프 패밀리 판정 결과"""
    member: bool
    family: str
    length: Optional[int] = None
    origin_set: Optional[frozenset[int]] = None
    violations: list[Violation] = field(default_factory=list)
    families: frozenset[str] = frozenset()

    def clauses(self) -> set[str]:
        return {v.clause for v in self.violations}

    def summary(self) -> str:
        if self.member:
            return f"{self.family} length {self.length}"
        return f"no family ({len(self.violations)} violations)"

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "family": self.family,
            "families": sorted(self.families),
            "length": self.length,
            "origin_set": sorted(self.origin_set) if self.origin_set is not None else None,
            "violations": [str(v) for v in self.violations],
        }


# ──────────────────────────────────────────────────
# Generators
# ──────────────────────────────────────────────────

def make_nlg(n: int) -> LabelledGraph:
    """번호 매긴 선형 그래프 v0..v(n-1)"""
    if n < 1:
        raise GraphError(f"NLG length must be positive: {n}")
    labels = tuple(NodeLabel(i % 3) for i in range(n))
    return LabelledGraph(labels, frozenset((i, i + 1) for i in range(n - 1)))


def make_ncg(n: int) -> LabelledGraph:
    """번호 매긴 순환 그래프"""
    if n < 3 or n % 3 != 0:
        raise GraphError(f"NCG length must be a positive multiple of 3: {n}")
    labels = tuple(NodeLabel(i % 3) for i in range(n))
    edges = frozenset((min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n))
    return LabelledGraph(labels, edges)


def make_nqlg(
    replica_counts: Sequence[int],
    edge_policy: str = "full-bipartite",
    seed: int = 0,
) -> LabelledGraph:
    """층별 복제 수로 준선형 그래프 생성 (노드 id는 층 우선 순서)"""
    if not replica_counts:
        raise GraphError("replica_counts must not be empty")
    if any(c < 1 for c in replica_counts):
        raise GraphError(f"replica counts must be positive: {list(replica_counts)}")
    if edge_policy not in ("full-bipartite", "random"):
        raise GraphError(
            f"지원하지 않는 간선 정책: {edge_policy}\n"
            "지원 정책: full-bipartite, random"
        )

    layers: list[list[int]] = []
    labels: list[NodeLabel] = []
    for depth, count in enumerate(replica_counts):
        layer = list(range(len(labels), len(labels) + count))
        layers.append(layer)
        labels.extend(NodeLabel(depth % 3) for _ in range(count))

    edges: set[tuple[int, int]] = set()
    pairs = [
        (u, w)
        for below, above in zip(layers, layers[1:])
        for u in below
        for w in above
    ]
    if edge_policy == "full-bipartite":
        edges.update(pairs)
    else:
        rng = random.Random(seed)
        for depth in range(1, len(layers)):
            for w in layers[depth]:
                edges.add((rng.choice(layers[depth - 1]), w))
        for depth in range(len(layers) - 1):
            for u in layers[depth]:
                edges.add((u, rng.choice(layers[depth + 1])))
        for pair in pairs:
            if pair not in edges and rng.random() < 0.5:
                edges.add(pair)
        if len(layers) > 1:
            # 각 성분은 모든 층에 걸치므로 0-1 층 간선으로 이어 붙임
            draft = nx.Graph()
            draft.add_nodes_from(range(len(labels)))
            draft.add_edges_from(edges)
            components = [set(c) for c in nx.connected_components(draft)]
            anchor = min(components[0] & set(layers[0]))
            for component in components[1:]:
                edges.add((anchor, min(component & set(layers[1]))))

    return LabelledGraph(tuple(labels), frozenset(edges))


def harmonious_words(n: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """조화 눈싸움 단어 쌍 (l_n, r_n)"""
    if n < 1:
        raise GraphError(f"harmonious index must be positive: {n}")
    left: list[tuple[int, int]] = [(-1, 1)]
    right: list[tuple[int, int]] = [(1, 1)]
    for _ in range(n - 1):
        left, right = right + [(1, 0)] + left, right + [(-1, 0)] + left
    return left, right


def make_harmonious_sfnlg(n: int) -> LabelledGraph:
    """길이 2^n - 1 의 조화 SFNLG"""
    word, _ = harmonious_words(n)
    return with_snowball_labels(make_nlg(len(word)), word)


def with_snowball_labels(
    graph: LabelledGraph, word: Sequence[tuple[int, int]]
) -> LabelledGraph:
    """평범한 그래프에 (방향, 눈덩이) 성분을 노드 순서대로 부여"""
    if graph.alphabet is not Alphabet.PLAIN:
        raise GraphError("graph already carries snowball labels")
    if len(word) != graph.order:
        raise GraphError(f"word length {len(word)} does not match {graph.order} nodes")
    labels = tuple(
        NodeLabel(label.numbering, d, s) for label, (d, s) in zip(graph.labels, word)
    )
    return LabelledGraph(labels, graph.edges)


def permute(graph: LabelledGraph, perm: Sequence[int]) -> LabelledGraph:
    """노드 v 를 perm[v] 로 옮긴 동형 그래프"""
    if sorted(perm) != list(graph.nodes()):
        raise GraphError("perm must be a permutation of the node ids")
    labels: list[Optional[NodeLabel]] = [None] * graph.order
    for v, label in enumerate(graph.labels):
        labels[perm[v]] = label
    edges = frozenset(
        (min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in graph.edges
    )
    return LabelledGraph(tuple(labels), edges)  # type: ignore[arg-type]


def unroll_cycle(graph: LabelledGraph, copies: int) -> LabelledGraph:
    """순환 그래프를 끊어 copies 개를 이어 붙인 경로"""
    if copies < 1:
        raise GraphError(f"copies must be positive: {copies}")
    if graph.order < 3 or any(graph.degree(v) != 2 for v in graph.nodes()):
        raise GraphError("unroll_cycle needs a cycle graph")
    walk = [0]
    previous = None
    current = 0
    while True:
        options = [w for w in graph.neighbours(current) if w != previous]
        forward = [
            w for w in options
            if graph.labels[w].numbering == (graph.labels[current].numbering + 1) % 3
        ]
        nxt = (forward or options)[0]
        if nxt == 0:
            break
        walk.append(nxt)
        previous, current = current, nxt
    labels = tuple(graph.labels[v] for _ in range(copies) for v in walk)
    size = len(labels)
    return LabelledGraph(labels, frozenset((i, i + 1) for i in range(size - 1)))


# ──────────────────────────────────────────────────
# Oracles
# ──────────────────────────────────────────────────

def dist_from_set(graph: LabelledGraph, sources: Iterable[int]) -> dict[int, int]:
    """다중 출발점 BFS 거리"""
    source_set = set(sources)
    if not source_set:
        raise GraphError("source set must not be empty")
    unknown = source_set - set(graph.nodes())
    if unknown:
        raise GraphError(f"unknown source nodes: {sorted(unknown)}")
    lengths = nx.multi_source_dijkstra_path_length(graph.to_networkx(), source_set)
    return {v: int(lengths[v]) for v in graph.nodes()}


def origin_set(graph: LabelledGraph) -> frozenset[int]:
    """번호 0 이면서 번호 2 이웃이 없는 노드 집합"""
    return frozenset(
        v for v in graph.nodes()
        if graph.labels[v].numbering == 0
        and all(graph.labels[w].numbering != 2 for w in graph.neighbours(v))
    )


def linear_order(graph: LabelledGraph) -> Optional[tuple[int, ...]]:
    """NLG 이면 원점부터의 경로 순서, 아니면 None"""
    order, violations = _check_nlg(graph.projected())
    return order if not violations else None


def _path_walk(graph: LabelledGraph, start: int) -> list[int]:
    walk = [start]
    previous = None
    while True:
        nxt = [w for w in graph.neighbours(walk[-1]) if w != previous]
        if not nxt:
            return walk
        previous = walk[-1]
        walk.append(nxt[0])


def _check_nlg(graph: LabelledGraph) -> tuple[Optional[tuple[int, ...]], list[Violation]]:
    n = graph.order
    violations: list[Violation] = []
    for v in graph.nodes():
        if graph.degree(v) > 2:
            violations.append(Violation("L1", f"not linear: node {v} has degree {graph.degree(v)}"))
    if len(graph.edges) != n - 1:
        violations.append(Violation("L1", f"not linear: {len(graph.edges)} edges on {n} nodes"))
    if violations:
        return None, violations

    ends = [v for v in graph.nodes() if graph.degree(v) <= 1]
    walks = [_path_walk(graph, end) for end in ends]
    for walk in walks:
        if all(graph.labels[v].numbering == i % 3 for i, v in enumerate(walk)):
            return tuple(walk), []

    walk = next(
        (w for w in walks if graph.labels[w[0]].numbering == 0), walks[0]
    )
    for i, v in enumerate(walk):
        if graph.labels[v].numbering != i % 3:
            violations.append(
                Violation(
                    "L2",
                    f"node {v} at position {i} is numbered "
                    f"{graph.labels[v].numbering}, expected {i % 3}",
                )
            )
    return None, violations


def _check_ncg(graph: LabelledGraph) -> list[Violation]:
    n = graph.order
    if n < 3 or len(graph.edges) != n or any(graph.degree(v) != 2 for v in graph.nodes()):
        return [Violation("C1", "not a cycle")]
    if n % 3 != 0:
        return [Violation("C2", f"cycle length {n} is not a multiple of 3")]
    zeros = [v for v in graph.nodes() if graph.labels[v].numbering == 0]
    if not zeros:
        return [Violation("C2", "no node is numbered 0")]
    start = zeros[0]
    forward = [w for w in graph.neighbours(start) if graph.labels[w].numbering == 1]
    walk = [start]
    previous, current = start, (forward or list(graph.neighbours(start)))[0]
    while current != start:
        walk.append(current)
        nxt = [w for w in graph.neighbours(current) if w != previous][0]
        previous, current = current, nxt
    return [
        Violation("C2", f"node {v} at position {i} is numbered {graph.labels[v].numbering}, expected {i % 3}")
        for i, v in enumerate(walk)
        if graph.labels[v].numbering != i % 3
    ]


def _check_nqlg(
    graph: LabelledGraph,
) -> tuple[Optional[int], Optional[frozenset[int]], list[Violation]]:
    origins = origin_set(graph)
    if not origins:
        return None, None, [Violation("QL0", "origin set is empty")]

    dist = dist_from_set(graph, origins)
    length = max(dist.values()) + 1
    violations: list[Violation] = []
    for v in graph.nodes():
        if graph.labels[v].numbering != dist[v] % 3:
            violations.append(
                Violation("QL1", f"node {v} at distance {dist[v]} is numbered {graph.labels[v].numbering}")
            )
    for u, v in sorted(graph.edges):
        if graph.labels[u].numbering == graph.labels[v].numbering:
            violations.append(Violation("QL2", f"edge ({u},{v}) joins equal numberings"))
    for v in graph.nodes():
        has_successor = any(dist[w] == dist[v] + 1 for w in graph.neighbours(v))
        if has_successor != (dist[v] < length - 1):
            violations.append(
                Violation(
                    "QL3",
                    f"node {v} at distance {dist[v]} "
                    f"{'has' if has_successor else 'lacks'} a successor (length {length})",
                )
            )
    return length, origins, violations


def classify(graph: LabelledGraph) -> FamilyReport:
    """그래프 패밀리 정의를 직접 검사 (오토마타와 독립)"""
    snowball = graph.alphabet is Alphabet.SNOWBALL
    plain = graph.projected() if snowball else graph

    order, nlg_violations = _check_nlg(plain)
    ncg_violations = _check_ncg(plain)
    families: set[str] = set()
    violations: list[Violation] = []

    if snowball:
        if order is not None:
            families.add(SFNLG)
        else:
            violations.extend(nlg_violations)
        if not ncg_violations:
            families.add(SFNCG)
        else:
            violations.extend(ncg_violations)
        if order is not None:
            return FamilyReport(True, SFNLG, plain.order, frozenset({order[0]}), violations, frozenset(families))
        if not ncg_violations:
            return FamilyReport(True, SFNCG, plain.order, None, violations, frozenset(families))
        return FamilyReport(False, NO_FAMILY, None, None, violations, frozenset())

    length, origins, nqlg_violations = _check_nqlg(plain)
    if order is not None:
        families.add(NLG)
    else:
        violations.extend(nlg_violations)
    if not ncg_violations:
        families.add(NCG)
    else:
        violations.extend(ncg_violations)
    if not nqlg_violations:
        families.add(NQLG)
    else:
        violations.extend(nqlg_violations)

    frozen = frozenset(families)
    if order is not None:
        return FamilyReport(True, NLG, plain.order, frozenset({order[0]}), violations, frozen)
    if not ncg_violations:
        return FamilyReport(True, NCG, plain.order, None, violations, frozen)
    if not nqlg_violations:
        return FamilyReport(True, NQLG, length, origins, violations, frozen)
    return FamilyReport(False, NO_FAMILY, None, None, violations, frozen)


# ──────────────────────────────────────────────────
# Mutations
# ──────────────────────────────────────────────────

def mutate(graph: LabelledGraph, kind: str, seed: int = 0) -> LabelledGraph:
    """한 번의 변형으로 음성 테스트 입력 생성"""
    if kind not in MUTATION_KINDS:
        raise GraphError(
            f"지원하지 않는 변형: {kind}\n"
            f"지원 변형: {', '.join(MUTATION_KINDS)}"
        )
    rng = random.Random(seed)
    labels = list(graph.labels)

    if kind == "relabel-node":
        candidates = [
            (v, numbering)
            for v in graph.nodes()
            for numbering in range(3)
            if numbering != labels[v].numbering
        ]
        v, numbering = rng.choice(candidates)
        old = labels[v]
        labels[v] = NodeLabel(numbering, old.direction, old.snowball)
        return LabelledGraph(tuple(labels), graph.edges)

    if kind == "add-edge":
        candidates = [
            (u, v)
            for u in graph.nodes()
            for v in graph.nodes()
            if u < v and (u, v) not in graph.edges
        ]
        if not candidates:
            raise NoMutationError("graph is complete; no edge can be added")
        return LabelledGraph(graph.labels, graph.edges | {rng.choice(candidates)})

    if kind == "delete-edge":
        bridges = {(min(u, v), max(u, v)) for u, v in nx.bridges(graph.to_networkx())}
        candidates = sorted(graph.edges - bridges)
        if not candidates:
            raise NoMutationError("every edge is a bridge; deletion disconnects the graph")
        return LabelledGraph(graph.labels, graph.edges - {rng.choice(candidates)})

    candidates = [v for v in graph.nodes() if graph.degree(v) > 0]
    if not candidates:
        raise NoMutationError("an isolated node cannot be duplicated")
    v = rng.choice(candidates)
    twin = graph.order
    labels.append(labels[v])
    edges = set(graph.edges)
    edges.update((w, twin) for w in graph.neighbours(v))
    return LabelledGraph(tuple(labels), frozenset(edges))


# ──────────────────────────────────────────────────
# Text format
# ──────────────────────────────────────────────────

def format_graph(graph: LabelledGraph) -> str:
    """그래프를 텍스트 형식으로 직렬화"""
    lines = [f"graph {graph.alphabet.value}"]
    for v, label in enumerate(graph.labels):
        lines.append(" ".join(["node", str(v), *label.tokens()]))
    for u, v in sorted(graph.edges):
        lines.append(f"edge {u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> LabelledGraph:
    """그래프 텍스트 파싱"""
    alphabet: Optional[Alphabet] = None
    nodes: dict[int, NodeLabel] = {}
    raw_edges: list[tuple[int, int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if alphabet is None:
            if tokens[0] != "graph" or len(tokens) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'graph <alphabet>'")
            try:
                alphabet = Alphabet(tokens[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: unknown alphabet {tokens[1]!r}")
            continue
        if tokens[0] == "node":
            if len(tokens) < 3:
                raise GraphFormatError(f"line {lineno}: node line needs an id and a label")
            node_id = _parse_id(tokens[1], lineno)
            if node_id in nodes:
                raise GraphFormatError(f"line {lineno}: duplicate node id {node_id}")
            label = NodeLabel.parse_tokens(tokens[2:])
            if label.alphabet is not alphabet:
                raise GraphFormatError(
                    f"line {lineno}: {label.alphabet.value} label in a {alphabet.value} graph"
                )
            nodes[node_id] = label
        elif tokens[0] == "edge":
            if len(tokens) != 3:
                raise GraphFormatError(f"line {lineno}: edge line needs two ids")
            raw_edges.append((_parse_id(tokens[1], lineno), _parse_id(tokens[2], lineno), lineno))
        else:
            raise GraphFormatError(f"line {lineno}: unknown directive {tokens[0]!r}")

    if alphabet is None:
        raise GraphFormatError("missing 'graph <alphabet>' header")
    if not nodes:
        raise GraphFormatError("graph has no nodes")

    dense = {node_id: i for i, node_id in enumerate(sorted(nodes))}
    edges: list[tuple[int, int]] = []
    for u, v, lineno in raw_edges:
        if u not in dense or v not in dense:
            raise GraphFormatError(f"line {lineno}: edge references an unknown node")
        edges.append((dense[u], dense[v]))
    labels = [nodes[node_id] for node_id in sorted(nodes)]
    return LabelledGraph.build(labels, edges)


def _parse_id(token: str, lineno: int) -> int:
    try:
        node_id = int(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: node id must be an integer: {token!r}")
    if node_id < 0:
        raise GraphFormatError(f"line {lineno}: node id must be non-negative: {node_id}")
    return node_id


def load_graph(path: str | Path) -> LabelledGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def save_graph(graph: LabelledGraph, path: str | Path) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(format_graph(graph), encoding="utf-8")
    return target
