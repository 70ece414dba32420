"""
Unit tests — dawb/graphs.py
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dawb.graphs import (
    MUTATION_KINDS,
    NCG,
    NLG,
    NO_FAMILY,
    NQLG,
    SFNCG,
    SFNLG,
    Alphabet,
    GraphError,
    GraphFormatError,
    LabelledGraph,
    NoMutationError,
    NodeLabel,
    classify,
    dist_from_set,
    format_graph,
    harmonious_words,
    linear_order,
    load_graph,
    make_harmonious_sfnlg,
    make_ncg,
    make_nlg,
    make_nqlg,
    mutate,
    origin_set,
    parse_graph,
    permute,
    save_graph,
    unroll_cycle,
    with_snowball_labels,
)


@st.composite
def plain_graphs(draw, max_nodes: int = 8):
    """임의의 연결된 평범한 라벨 그래프 (무작위 신장 트리 + 추가 간선)"""
    n = draw(st.integers(min_value=1, max_value=max_nodes))
    labels = [NodeLabel(draw(st.integers(0, 2))) for _ in range(n)]
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and draw(st.integers(0, 4)) == 0:
                edges.add((u, v))
    return LabelledGraph(tuple(labels), frozenset(edges))


@st.composite
def permuted(draw, graphs):
    graph = draw(graphs)
    perm = draw(st.permutations(list(graph.nodes())))
    return graph, perm


def _differing_limits() -> LabelledGraph:
    """두 가지가 서로 다른 거리에서 끝나는 그래프 (QL3 위반)"""
    labels = [NodeLabel(0), NodeLabel(1), NodeLabel(2), NodeLabel(2), NodeLabel(0)]
    return LabelledGraph.build(labels, [(0, 1), (1, 2), (1, 3), (3, 4)])


class TestNodeLabel:
    def test_plain_and_snowball(self):
        assert NodeLabel(2).alphabet          is Alphabet.PLAIN
        assert NodeLabel(2, -1, 1).alphabet   is Alphabet.SNOWBALL
        assert NodeLabel(2, -1, 1).project()  == NodeLabel(2)
        assert NodeLabel(1, 1, 0).tokens()    == ["1", "+1", "0"]

    @pytest.mark.parametrize("args", [(3,), (0, 1, None), (0, 0, 1), (0, 1, 2)])
    def test_rejects_bad_components(self, args):
        with pytest.raises(GraphError):
            NodeLabel(*args)


class TestLabelledGraph:
    def test_rejects_disconnected(self):
        with pytest.raises(GraphError, match="not connected"):
            LabelledGraph((NodeLabel(0), NodeLabel(1)), frozenset())

    def test_rejects_self_loop(self):
        with pytest.raises(GraphError, match="self-loop"):
            LabelledGraph((NodeLabel(0),), frozenset({(0, 0)}))

    def test_rejects_mixed_alphabets(self):
        with pytest.raises(GraphError, match="mix"):
            LabelledGraph((NodeLabel(0), NodeLabel(1, 1, 0)), frozenset({(0, 1)}))

    def test_build_normalizes_and_rejects_duplicates(self):
        graph = LabelledGraph.build([NodeLabel(0), NodeLabel(1)], [(1, 0)])
        assert graph.edges == frozenset({(0, 1)})
        with pytest.raises(GraphError, match="duplicate"):
            LabelledGraph.build([NodeLabel(0), NodeLabel(1)], [(1, 0), (0, 1)])

    def test_neighbours_are_sorted(self):
        graph = make_nqlg([1, 3])
        assert graph.neighbours(0) == (1, 2, 3)
        assert graph.degree(2)     == 1


class TestGenerators:
    def test_nlg_shape(self):
        graph = make_nlg(5)
        assert [l.numbering for l in graph.labels] == [0, 1, 2, 0, 1]
        assert graph.edges == frozenset({(0, 1), (1, 2), (2, 3), (3, 4)})

    def test_ncg_needs_multiple_of_three(self):
        with pytest.raises(GraphError):
            make_ncg(4)
        assert len(make_ncg(6).edges) == 6

    def test_nqlg_layers(self):
        graph = make_nqlg([2, 3, 2, 1, 2])
        assert graph.order == 10
        assert [l.numbering for l in graph.labels] == [0, 0, 1, 1, 1, 2, 2, 0, 1, 1]
        assert origin_set(graph) == frozenset({0, 1})

    def test_nqlg_rejects_bad_policy(self):
        with pytest.raises(GraphError, match="지원 정책"):
            make_nqlg([1, 2], edge_policy="sparse")

    def test_harmonious_words(self):
        left, right = harmonious_words(2)
        assert left  == [(1, 1), (1, 0), (-1, 1)]
        assert right == [(1, 1), (-1, 0), (-1, 1)]

    @pytest.mark.parametrize("k", range(1, 7))
    def test_harmonious_bits_alternate(self, k):
        word, _ = harmonious_words(k)
        assert len(word) == 2 ** k - 1
        assert [s for _, s in word] == [1 - i % 2 for i in range(len(word))]

    def test_with_snowball_labels_length_mismatch(self):
        with pytest.raises(GraphError, match="does not match"):
            with_snowball_labels(make_nlg(3), [(1, 1)])

    def test_unroll_cycle(self):
        report = classify(unroll_cycle(make_ncg(6), 2))
        assert report.family == NLG
        assert report.length == 12


class TestClassify:
    @pytest.mark.parametrize("n", range(1, 65))
    def test_nlg(self, n):
        report = classify(make_nlg(n))
        assert report.member
        assert report.family     == NLG
        assert report.length     == n
        assert report.origin_set == frozenset({0})
        assert {NLG, NQLG} <= report.families   # NLG 는 NQLG 이기도 함

    @pytest.mark.parametrize("k", range(1, 11))
    def test_ncg(self, k):
        report = classify(make_ncg(3 * k))
        assert report.family == NCG
        assert NLG not in report.families

    @pytest.mark.parametrize("k", range(1, 7))
    def test_harmonious_sfnlg(self, k):
        report = classify(make_harmonious_sfnlg(k))
        assert report.family == SFNLG
        assert report.length == 2 ** k - 1

    def test_snowball_cycle(self):
        graph = with_snowball_labels(make_ncg(3), [(1, 1), (1, 0), (-1, 1)])
        assert classify(graph).family == SFNCG

    def test_nqlg_full_bipartite(self):
        report = classify(make_nqlg([2, 3, 2, 1, 2]))
        assert report.family          == NQLG
        assert report.length          == 5
        assert len(report.origin_set) == 2

    @settings(max_examples=60, deadline=None)
    @given(
        counts=st.lists(st.integers(1, 3), min_size=2, max_size=7),
        seed=st.integers(0, 10_000),
    )
    def test_nqlg_random_policy(self, counts, seed):
        graph = make_nqlg(counts, edge_policy="random", seed=seed)
        report = classify(graph)
        assert NQLG in report.families
        assert report.length == len(counts) or report.family == NLG
        origins = origin_set(graph)
        dist = dist_from_set(graph, origins)
        assert all(dist[v] % 3 == graph.labels[v].numbering for v in graph.nodes())

    def test_differing_limits(self):
        report = classify(_differing_limits())
        assert not report.member
        assert report.family == NO_FAMILY
        assert "QL3" in report.clauses()

    def test_relabelled_middle_node(self):
        graph = make_nlg(5)
        labels = list(graph.labels)
        labels[2] = NodeLabel(0)
        report = classify(LabelledGraph(tuple(labels), graph.edges))
        assert NLG not in report.families
        assert "L2" in report.clauses()

    def test_square_is_not_ncg(self):
        labels = [NodeLabel(n) for n in (0, 1, 2, 0)]
        report = classify(LabelledGraph.build(labels, [(0, 1), (1, 2), (2, 3), (0, 3)]))
        assert "C2" in report.clauses()

    def test_reversed_path_is_nlg(self):
        graph = LabelledGraph.build([NodeLabel(1), NodeLabel(0)], [(0, 1)])
        assert classify(graph).family == NLG
        assert linear_order(graph)    == (1, 0)

    def test_summary_and_dict(self):
        assert classify(make_nlg(7)).summary() == "NLG length 7"
        report = classify(_differing_limits())
        assert report.summary() == f"no family ({len(report.violations)} violations)"
        assert report.to_dict()["family"] == "none"

    @settings(max_examples=100, deadline=None)
    @given(permuted(plain_graphs()))
    def test_permutation_invariance(self, graph_and_perm):
        graph, perm = graph_and_perm
        before = classify(graph)
        after = classify(permute(graph, perm))
        assert after.family   == before.family
        assert after.families == before.families
        assert after.length   == before.length
        if before.origin_set is not None and before.family == NQLG:
            assert after.origin_set == frozenset(perm[v] for v in before.origin_set)


class TestMutate:
    def test_relabel_breaks_nlg(self):
        for seed in range(40):
            graph = mutate(make_nlg(7), "relabel-node", seed)
            assert NLG not in classify(graph).families

    def test_relabel_keeps_snowball_components(self):
        graph = mutate(make_harmonious_sfnlg(2), "relabel-node", seed=3)
        assert graph.alphabet is Alphabet.SNOWBALL

    def test_add_edge(self):
        graph = mutate(make_nlg(5), "add-edge", seed=1)
        assert len(graph.edges) == 5

    def test_delete_edge_on_path(self):
        with pytest.raises(NoMutationError):
            mutate(make_nlg(4), "delete-edge")

    def test_delete_edge_keeps_connected(self):
        graph = mutate(make_ncg(6), "delete-edge", seed=2)
        assert len(graph.edges) == 5
        assert classify(graph).family == NLG or "L2" in classify(graph).clauses()

    def test_duplicate_node(self):
        graph = mutate(make_nlg(3), "duplicate-node", seed=0)
        assert graph.order == 4
        twin = graph.labels[3]
        assert twin in graph.labels[:3]

    def test_duplicate_isolated_node(self):
        with pytest.raises(NoMutationError):
            mutate(make_nlg(1), "duplicate-node")

    def test_add_edge_on_complete_graph(self):
        with pytest.raises(NoMutationError):
            mutate(make_ncg(3), "add-edge")

    def test_unknown_kind(self):
        with pytest.raises(GraphError, match="지원 변형"):
            mutate(make_nlg(3), "swap")

    def test_kinds_are_deterministic(self):
        for kind in MUTATION_KINDS:
            graph = make_nqlg([1, 2, 2])
            assert mutate(graph, kind, seed=5) == mutate(graph, kind, seed=5)


class TestTextFormat:
    def test_round_trip(self):
        for graph in (make_nlg(4), make_nqlg([1, 2, 1]), make_harmonious_sfnlg(3)):
            assert parse_graph(format_graph(graph)) == graph

    def test_format_layout(self):
        assert format_graph(make_nlg(2)) == "graph plain\nnode 0 0\nnode 1 1\nedge 0 1\n"

    def test_comments_and_sparse_ids(self):
        text = """\
# sparse ids are remapped in increasing order
graph plain
node 10 0   # origin
node 30 2
node 20 1
edge 10 20
edge 20 30
"""
        graph = parse_graph(text)
        assert graph == make_nlg(3)

    @pytest.mark.parametrize("text,message", [
        ("node 0 0\n", "graph"),
        ("graph round\nnode 0 0\n", "unknown alphabet"),
        ("graph plain\n", "no nodes"),
        ("graph plain\nnode 0 0\nnode 0 1\n", "duplicate node"),
        ("graph plain\nnode 0 0\nnode 1 1\nedge 0 2\n", "unknown node"),
        ("graph plain\nnode 0 0 +1 1\n", "snowball label"),
        ("graph plain\nnode 0 x\n", "integers"),
        ("graph plain\nnode -1 0\n", "non-negative"),
        ("graph plain\nvertex 0 0\n", "unknown directive"),
    ])
    def test_parse_errors(self, text, message):
        with pytest.raises(GraphFormatError, match=message):
            parse_graph(text)

    def test_structural_errors_are_graph_errors(self):
        with pytest.raises(GraphError, match="duplicate edge"):
            parse_graph("graph plain\nnode 0 0\nnode 1 1\nedge 0 1\nedge 1 0\n")
        with pytest.raises(GraphError, match="not connected"):
            parse_graph("graph plain\nnode 0 0\nnode 1 1\n")

    def test_save_and_load(self, tmp_path):
        graph = make_harmonious_sfnlg(2)
        path = save_graph(graph, tmp_path / "graphs" / "sf.graph")
        assert load_graph(path) == graph
