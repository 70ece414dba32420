"""
Unit tests — dawb/machine.py
"""

import pickle

import pytest

from dawb.constructions import product_machine, tm_head_machine
from dawb.corpus import immediate_halter
from dawb.graphs import Alphabet, NodeLabel
from dawb.machine import (
    ACCEPT,
    ANY,
    BOTTOM,
    HALTING,
    STABLE_CONSENSUS,
    UNINIT,
    CountAtom,
    MachineError,
    MachineFormatError,
    NeighborhoodView,
    Pattern,
    RuleMachine,
    at_least,
    format_machine,
    format_state,
    load_machine,
    parse_machine,
    parse_state,
    rule,
    save_machine,
    validate_machine,
)


def _toggle(acceptance: str = "A") -> RuleMachine:
    """a ↔ b 를 무조건 오가는 2 상태 머신"""
    return RuleMachine(
        name="toggle",
        alphabet=Alphabet.PLAIN,
        beta=1,
        detection="d",
        acceptance=acceptance,
        states=["a", "b"],
        init={NodeLabel(n): "a" for n in range(3)},
        rules=[rule("flip-a", "a", "b"), rule("flip-b", "b", "a")],
        accepting=["a"],
        rejecting=["b"],
    )


class TestStateText:
    @pytest.mark.parametrize("state,text", [
        (3, "3"),
        ("q", "q"),
        ("1", "'1'"),
        ((0, 1), "(0,1)"),
        ((UNINIT, "_", 2), "(∘,_,2)"),
        (("sim.q0", "_|v", 1, "H+1"), "(sim.q0,_|v,1,H+1)"),
        ((), "()"),
        ("", "''"),
        (BOTTOM, "⊥"),
    ])
    def test_format_and_parse(self, state, text):
        assert format_state(state) == text
        assert parse_state(text)   == state

    def test_wildcard_only_in_patterns(self):
        assert parse_state("(0,*)", pattern=True) == (0, ANY)
        with pytest.raises(MachineFormatError, match="wildcard"):
            parse_state("(0,*)")

    @pytest.mark.parametrize("state", [True, 1.5, "a b", "it's"])
    def test_unsupported_states(self, state):
        with pytest.raises(MachineError):
            format_state(state)

    @pytest.mark.parametrize("text", ["(0,1", "(0,1))", "0)", "'open"])
    def test_malformed_text(self, text):
        with pytest.raises(MachineFormatError):
            parse_state(text)

    def test_wildcard_pickles_to_singleton(self):
        assert pickle.loads(pickle.dumps(ANY)) is ANY


class TestPatternsAndViews:
    def test_tuple_patterns_need_equal_length(self):
        pattern = Pattern((0, ANY))
        assert pattern.matches((0, 5))
        assert not pattern.matches((0, 5, 1))
        assert not pattern.matches(0)
        assert not Pattern(1).matches("1")   # 타입이 다르면 불일치

    def test_view_caps_each_state(self):
        view = NeighborhoodView.from_states(["a", "a", "a", "b"], beta=2)
        assert view["a"] == 2
        assert view["b"] == 1
        assert view["c"] == 0
        assert view.total() == 3

    def test_count_sums_capped_values(self):
        view = NeighborhoodView.from_states([(0, 1), (0, 1), (0, 2), (1, 1)], beta=1)
        assert view.count(Pattern((0, ANY))) == 2
        assert view.count(Pattern(ANY))      == 3

    def test_project_recaps(self):
        view = NeighborhoodView.from_states([("x", 1), ("x", 2), ("y", 2)], beta=2)
        assert view.project(0, 1).capped == {"x": 1, "y": 1}
        assert view.project(1, 2).capped == {1: 1, 2: 2}

    def test_count_atom_bounds(self):
        with pytest.raises(MachineError):
            CountAtom(Pattern("a"), "!=", 1)
        with pytest.raises(MachineError):
            CountAtom(Pattern("a"), ">=", -1)


class TestRuleMachine:
    def test_first_matching_rule_wins(self):
        m = RuleMachine(
            name="priority",
            alphabet=Alphabet.PLAIN,
            beta=2,
            detection="D",
            acceptance="A",
            states=["s", "x", "y"],
            init={NodeLabel(n): "s" for n in range(3)},
            rules=[
                rule("two", "s", "x", at_least("s", 2)),
                rule("one", "s", "y", at_least("s")),
            ],
            accepting=["x"],
            rejecting=["s"],
        )
        assert m.transition("s", NeighborhoodView.from_states(["s", "s", "s"], 2)) == "x"
        assert m.transition("s", NeighborhoodView.from_states(["s"], 2))           == "y"
        assert m.transition("s", NeighborhoodView.from_states([], 2))              == "s"

    def test_unknown_label(self):
        with pytest.raises(MachineError, match="no initial state"):
            _toggle().init_state(NodeLabel(0, 1, 1))

    def test_bad_kinds(self):
        with pytest.raises(MachineError):
            RuleMachine("m", Alphabet.PLAIN, 1, "x", "A", [], {}, [], [], [])

    def test_equality_ignores_rule_names(self):
        renamed = _toggle()
        renamed.rules = tuple(rule(f"other-{i}", r.pattern.shape, r.result) for i, r in enumerate(renamed.rules))
        assert renamed == _toggle()


class TestValidateMachine:
    def test_builtin_machines_pass(self, nlg_machine, nqlg_machine, snowball):
        assert validate_machine(nlg_machine)  == []
        assert validate_machine(nqlg_machine) == []
        assert validate_machine(snowball)     == []
        assert validate_machine(tm_head_machine(immediate_halter())) == []

    def test_halting_violation(self):
        diagnostics = validate_machine(_toggle(acceptance="a"))
        assert any("halting violation" in d for d in diagnostics)

    def test_stable_consensus_allows_rewrites(self):
        assert validate_machine(_toggle()) == []

    def test_detection_beta_mismatch(self):
        m = _toggle()
        m.beta = 2
        assert any("detection d" in d for d in validate_machine(m))

    def test_missing_init_and_unknown_result(self):
        m = RuleMachine(
            "broken", Alphabet.PLAIN, 1, "d", "A",
            states=["a"],
            init={NodeLabel(0): "a"},
            rules=[rule("escape", "a", "z")],
            accepting=["a"],
            rejecting=["a"],
        )
        diagnostics = validate_machine(m)
        assert any("overlap" in d for d in diagnostics)
        assert any("no initial state for label 1" in d for d in diagnostics)
        assert any("unknown state z" in d for d in diagnostics)

    def test_product_checks_components(self, nlg_machine, snowball):
        product = product_machine(nlg_machine, _toggle(), STABLE_CONSENSUS)
        assert validate_machine(product) == []
        product.second = snowball
        assert any("different alphabets" in d for d in validate_machine(product))


class TestMachineFormat:
    def test_round_trip_builtin(self, nlg_machine, nqlg_machine, snowball):
        for m in (nlg_machine, nqlg_machine, snowball):
            assert parse_machine(format_machine(m)) == m

    def test_round_trip_product(self, nlg_machine):
        head = tm_head_machine(immediate_halter())
        product = product_machine(nlg_machine, head, STABLE_CONSENSUS, name="p")
        parsed = parse_machine(format_machine(product))
        assert parsed == product
        assert format_machine(parsed) == format_machine(product)

    def test_rule_line_layout(self, nlg_machine):
        lines = format_machine(nlg_machine).splitlines()
        assert lines[0] == "machine nlg detection D acceptance A beta 2 alphabet plain"
        assert "rule 0 (0,*) | count((0,*)) >= 1 -> ⊥" in lines
        assert "init 2 -> (2,0)" in lines
        assert lines[-1] == "end"

    def test_comments_and_true_guard(self):
        text = """\
# 항상 b 로 가는 머신
machine m detection d acceptance A beta 1 alphabet plain
state a
state b
accept b
reject a
init 0 -> a
init 1 -> a
init 2 -> a
rule 5 a | true -> b
end
"""
        m = parse_machine(text)
        assert m.transition("a", NeighborhoodView.from_states([], 1)) == "b"
        assert m.rules[0].name == "r5"

    @pytest.mark.parametrize("text,message", [
        ("", "missing machine header"),
        ("machine m detection d\nend\n", "expected 'machine"),
        ("machine m detection d acceptance A beta 1 alphabet plain\nstate a\n", "missing 'end'"),
        ("machine m detection d acceptance A beta 1 alphabet plain\n"
         "rule 1 a | true -> a\nrule 1 a | true -> a\nend\n", "priorities"),
        ("machine m detection d acceptance A beta 1 alphabet plain\n"
         "rule 0 a | count(b) > 1 -> a\nend\n", "bad predicate"),
        ("machine m detection d acceptance A beta 1 alphabet plain\nfoo a\nend\n", "unknown directive"),
        ("machine m detection d acceptance A beta 1 alphabet plain\nend\nend\n", "trailing"),
    ])
    def test_parse_errors(self, text, message):
        with pytest.raises(MachineFormatError, match=message):
            parse_machine(text)

    def test_save_and_load(self, tmp_path, snowball):
        path = save_machine(snowball, tmp_path / "m" / "snowball.machine")
        assert load_machine(path) == snowball

    def test_halting_product_text(self, snowball):
        from dawb.constructions import adapt_labels

        product = product_machine(snowball, adapt_labels(tm_head_machine(immediate_halter())), HALTING)
        assert parse_machine(format_machine(product)) == product
        assert product.acceptance == "a"
        assert product.init_state(NodeLabel(0, -1, 1)) == ((UNINIT, 0, -1, 1), (UNINIT, "_", 0))
        assert ACCEPT in set(product.second.states())
