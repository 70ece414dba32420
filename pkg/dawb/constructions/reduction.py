"""
Emptiness reduction
TM 으로부터 분산 오토마톤 A^T 조립, 증인 패밀리 탐색
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Iterator, Optional

from ..engine import RunLimits, RunResult, Verdict, run_synchronous
from ..graphs import LabelledGraph, make_harmonious_sfnlg, make_nlg, save_graph
from ..machine import HALTING, STABLE_CONSENSUS, DistributedMachine
from ..turing import RunKind, TuringMachine, make_t_infinity, tm_run
from .base import ConstructionError
from .product import adapt_labels, product_machine
from .recognizers import nlg_decider, nqlg_decider, snowball_machine
from .tm_head import tm_head_machine


class ReductionClass(str, Enum):
    """환원 대상 클래스 (검출, 수락)"""
    DA = "DA"
    dA = "dA"
    Da = "Da"

    @classmethod
    def parse(cls, text: str) -> "ReductionClass":
        for member in cls:
            if member.value == text:
                return member
        raise ValueError(
            f"지원하지 않는 클래스: {text}\n"
            f"지원 클래스: {', '.join(m.value for m in cls)}"
        )


def reduction_automaton(
    t: TuringMachine,
    cls: ReductionClass,
    probe_steps: int = 10_000,
) -> DistributedMachine:
    """L(A^T) ≠ ∅ ⟺ T 가 빈 테이프에서 정지"""
    outcome = tm_run(t, probe_steps)
    if outcome.kind is RunKind.BOUNDARY:
        raise ConstructionError(
            f"TM {t.name} moves left of cell 0 after {outcome.steps} steps"
        )
    head = tm_head_machine(make_t_infinity(t))
    name = f"A-{t.name}-{cls.value}"
    if cls is ReductionClass.DA:
        return product_machine(nlg_decider(), head, STABLE_CONSENSUS, name=name)
    if cls is ReductionClass.dA:
        return product_machine(nqlg_decider(), head, STABLE_CONSENSUS, name=name)
    return product_machine(snowball_machine(), adapt_labels(head), HALTING, name=name)


def witness_family(cls: ReductionClass, max_length: int) -> Iterator[tuple[int, LabelledGraph]]:
    """(길이, 그래프): DA/dA 는 NLG, Da 는 조화 SFNLG"""
    if cls is ReductionClass.Da:
        k = 1
        while 2 ** k - 1 <= max_length:
            yield 2 ** k - 1, make_harmonious_sfnlg(k)
            k += 1
        return
    for n in range(1, max_length + 1):
        yield n, make_nlg(n)


def _run_instance(args: tuple) -> tuple[int, RunResult]:
    m, length, graph, limits = args
    return length, run_synchronous(m, graph, limits)


@dataclass
class SearchReport:
    """증인 탐색 결과"""
    cls: ReductionClass
    max_length: int
    found: bool = False
    length: Optional[int] = None
    witness: Optional[LabelledGraph] = None
    result: Optional[RunResult] = None
    warnings: list[str] = field(default_factory=list)
    checked: list[tuple[int, str]] = field(default_factory=list)

    def summary(self) -> str:
        if self.found:
            return f"FOUND length={self.length}"
        return f"NONE up to {self.max_length}"

    def witness_name(self) -> str:
        return f"witness-{self.cls.value}-{self.length}.graph"

    def to_dict(self) -> dict:
        return {
            "class": self.cls.value,
            "max_length": self.max_length,
            "found": self.found,
            "length": self.length,
            "result": self.result.to_dict() if self.result else None,
            "warnings": self.warnings,
            "checked": [{"length": n, "verdict": v} for n, v in self.checked],
        }


class EmptinessSearch:
    """증인 패밀리를 길이 순으로 훑어 첫 수락 그래프 탐색"""

    def __init__(
        self,
        machine: DistributedMachine,
        cls: ReductionClass,
        limits: Optional[RunLimits] = None,
        workers: int = 1,
        progress_callback: Optional[Callable[[str], None]] = None,
    ):
        self.machine = machine
        self.cls = cls
        self.limits = limits or RunLimits()
        self.workers = max(1, workers)
        self.progress_callback = progress_callback or print

    def _log(self, message: str):
        """진행 상황 출력"""
        self.progress_callback(message)

    def _results(self, max_length: int) -> Iterator[tuple[int, LabelledGraph, RunResult]]:
        instances = list(witness_family(self.cls, max_length))
        graphs = dict(instances)
        if self.workers == 1:
            for length, graph in instances:
                yield length, graph, run_synchronous(self.machine, graph, self.limits)
            return
        args = [(self.machine, length, graph, self.limits) for length, graph in instances]
        with Pool(processes=self.workers) as pool:
            # imap 은 길이 순서를 유지
            for length, result in pool.imap(_run_instance, args):
                yield length, graphs[length], result

    def run(self, max_length: int) -> SearchReport:
        """탐색 실행"""
        self._log(f"🔍 {self.cls.value} 증인 탐색: {self.machine.name} (최대 길이 {max_length})")
        report = SearchReport(self.cls, max_length)

        for length, graph, result in self._results(max_length):
            report.checked.append((length, result.verdict.value))
            if result.verdict is Verdict.ACCEPTING:
                report.found = True
                report.length = length
                report.witness = graph
                report.result = result
                self._log(f"✅ 길이 {length} 에서 수락 (step {result.step})")
                break
            if result.verdict in (Verdict.UNDECIDED, Verdict.INCONSISTENT):
                warning = f"length {length}: {result.verdict.value} ({result.details})"
                report.warnings.append(warning)
                self._log(f"⚠️ {warning}")

        if not report.found:
            self._log(f"❌ 길이 {max_length} 까지 수락 그래프 없음")
        return report

    def save(self, report: SearchReport, out_dir: str | Path) -> Path:
        """증인 그래프와 search_report.json 저장"""
        target = Path(out_dir)
        target.mkdir(parents=True, exist_ok=True)
        data = report.to_dict()
        if report.found and report.witness is not None:
            witness_path = target / report.witness_name()
            save_graph(report.witness, witness_path)
            data["witness"] = str(witness_path)
        report_path = target / "search_report.json"
        report_path.write_text(
            json.dumps(data, ensure_ascii=False, indent=2),
            encoding="utf-8",
        )
        self._log(f"💾 탐색 결과 저장: {report_path}")
        return report_path


def find_accepted_graph(
    m: DistributedMachine,
    cls: ReductionClass,
    max_length: int,
    limits: Optional[RunLimits] = None,
    workers: int = 1,
    progress_callback: Optional[Callable[[str], None]] = None,
) -> SearchReport:
    """증인 패밀리에서 처음 수락되는 그래프 (없으면 found=False)"""
    search = EmptinessSearch(m, cls, limits, workers, progress_callback)
    return search.run(max_length)
