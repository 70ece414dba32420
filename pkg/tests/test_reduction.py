"""
Unit tests — dawb/constructions/reduction.py
"""

import json

import pytest

from dawb.constructions import (
    ConstructionError,
    EmptinessSearch,
    ReductionClass,
    create_machine,
    find_accepted_graph,
    reduction_automaton,
    witness_family,
)
from dawb.corpus import CORPUS, immediate_halter, inc, ping_pong
from dawb.engine import Verdict
from dawb.graphs import SFNLG, classify, load_graph, make_harmonious_sfnlg, make_nlg
from dawb.machine import HALTING, STABLE_CONSENSUS, ProductMachine, validate_machine
from dawb.turing import LEFT, TuringMachine, make_t_infinity, tm_run

HALTING_CORPUS = ["immediate-halter", "inc1", "inc2", "inc3", "inc4", "bb3"]


def _quiet(message: str):
    pass


def _threshold(t) -> int:
    return tm_run(make_t_infinity(t), 50_000).cells_visited


def _least_harmonious_length(n0: int) -> int:
    k = 1
    while 2 ** k - 1 < n0:
        k += 1
    return 2 ** k - 1


def _left_walker() -> TuringMachine:
    return TuringMachine(
        name="left-walker",
        states=("q0", "q1"),
        initial="q0",
        accepting=frozenset({"q1"}),
        tape_alphabet=("_",),
        input_alphabet=(),
        delta={("q0", "_"): ("q1", "_", LEFT)},
    )


class TestReductionClass:
    def test_parse(self):
        assert ReductionClass.parse("dA") is ReductionClass.dA
        assert ReductionClass.parse("Da") is ReductionClass.Da

    def test_parse_is_case_sensitive(self):
        with pytest.raises(ValueError, match="지원 클래스"):
            ReductionClass.parse("da")


class TestReductionAutomaton:
    @pytest.mark.parametrize("cls,mode,first", [
        (ReductionClass.DA, STABLE_CONSENSUS, "nlg"),
        (ReductionClass.dA, STABLE_CONSENSUS, "nqlg"),
        (ReductionClass.Da, HALTING,          "snowball"),
    ])
    def test_structure(self, cls, mode, first):
        m = reduction_automaton(inc(1), cls)
        assert isinstance(m, ProductMachine)
        assert m.name       == f"A-inc1-{cls.value}"
        assert m.mode       == mode
        assert m.first.name == first
        assert validate_machine(m) == []

    def test_class_kinds(self):
        assert reduction_automaton(inc(1), ReductionClass.DA).detection == "D"
        assert reduction_automaton(inc(1), ReductionClass.dA).detection == "d"
        assert reduction_automaton(inc(1), ReductionClass.Da).acceptance == "a"

    def test_boundary_machine_rejected(self):
        with pytest.raises(ConstructionError, match="left of cell 0"):
            reduction_automaton(_left_walker(), ReductionClass.DA)

    def test_factory_accepts_class_text(self):
        m = create_machine("reduce", tm=inc(1), cls="dA")
        assert m.name == "A-inc1-dA"

    def test_factory_unknown_machine(self):
        with pytest.raises(ValueError, match="지원 머신"):
            create_machine("busy")


class TestWitnessFamily:
    def test_linear_family(self):
        family = list(witness_family(ReductionClass.DA, 4))
        assert [n for n, _ in family] == [1, 2, 3, 4]
        assert family[2][1] == make_nlg(3)

    def test_harmonious_family(self):
        family = list(witness_family(ReductionClass.Da, 20))
        assert [n for n, _ in family] == [1, 3, 7, 15]
        assert all(classify(g).family == SFNLG for _, g in family)


class TestSearch:
    @pytest.mark.parametrize("name", HALTING_CORPUS)
    @pytest.mark.parametrize("cls", [ReductionClass.DA, ReductionClass.dA])
    def test_linear_witness_at_threshold(self, name, cls):
        t = CORPUS[name]()
        report = find_accepted_graph(reduction_automaton(t, cls), cls, 64, progress_callback=_quiet)
        assert report.found
        assert report.length == _threshold(t)
        assert report.result.verdict is Verdict.ACCEPTING
        assert report.witness == make_nlg(report.length)

    @pytest.mark.parametrize("name,expected", [
        ("immediate-halter", 1),
        ("inc1", 3),
        ("inc2", 7),
        ("inc3", 7),
        ("inc4", 7),
        ("bb3",  15),
    ])
    def test_harmonious_witness(self, name, expected):
        t = CORPUS[name]()
        report = find_accepted_graph(
            reduction_automaton(t, ReductionClass.Da), ReductionClass.Da, 64, progress_callback=_quiet
        )
        assert report.found
        assert report.warnings == []
        assert report.length   == expected == _least_harmonious_length(_threshold(t))
        assert report.witness  == make_harmonious_sfnlg(expected.bit_length())

    @pytest.mark.parametrize("cls", list(ReductionClass))
    def test_non_halting_machine_has_no_witness(self, cls):
        report = find_accepted_graph(reduction_automaton(ping_pong(), cls), cls, 64, progress_callback=_quiet)
        assert not report.found
        assert report.warnings  == []
        assert report.summary() == "NONE up to 64"
        assert [n for n, _ in report.checked] == [n for n, _ in witness_family(cls, 64)]
        assert {v for _, v in report.checked} == {"REJECTING"}

    def test_workers_agree(self):
        m = reduction_automaton(inc(3), ReductionClass.DA)
        single = find_accepted_graph(m, ReductionClass.DA, 10, progress_callback=_quiet)
        pooled = find_accepted_graph(m, ReductionClass.DA, 10, workers=2, progress_callback=_quiet)
        assert pooled.length  == single.length
        assert pooled.checked == single.checked

    def test_checked_stops_at_witness(self):
        m = reduction_automaton(inc(1), ReductionClass.DA)
        report = find_accepted_graph(m, ReductionClass.DA, 64, progress_callback=_quiet)
        assert report.checked == [(1, "REJECTING"), (2, "REJECTING"), (3, "ACCEPTING")]
        assert report.summary() == "FOUND length=3"

    def test_progress_messages(self):
        messages = []
        m = reduction_automaton(immediate_halter(), ReductionClass.DA)
        find_accepted_graph(m, ReductionClass.DA, 4, progress_callback=messages.append)
        assert messages[0].startswith("🔍 DA")
        assert any("길이 1 에서 수락" in msg for msg in messages)


class TestSearchReport:
    def test_save_found(self, tmp_path):
        m = reduction_automaton(inc(1), ReductionClass.DA)
        search = EmptinessSearch(m, ReductionClass.DA, progress_callback=_quiet)
        report = search.run(8)
        path = search.save(report, tmp_path / "out")

        data = json.loads(path.read_text(encoding="utf-8"))
        assert path.name        == "search_report.json"
        assert data["class"]    == "DA"
        assert data["found"]    is True
        assert data["length"]   == 3
        assert data["result"]["verdict"] == "ACCEPTING"
        assert load_graph(data["witness"]) == make_nlg(3)
        assert report.witness_name() == "witness-DA-3.graph"

    def test_save_not_found(self, tmp_path):
        m = reduction_automaton(ping_pong(), ReductionClass.DA)
        search = EmptinessSearch(m, ReductionClass.DA, progress_callback=_quiet)
        report = search.run(4)
        data = json.loads(search.save(report, tmp_path).read_text(encoding="utf-8"))
        assert data["found"]  is False
        assert data["length"] is None
        assert "witness" not in data
        assert [c["length"] for c in data["checked"]] == [1, 2, 3, 4]
