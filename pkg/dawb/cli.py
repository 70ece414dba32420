"""
Workbench command line
생성기, 오라클, 머신, 실행, 환원 탐색을 잇는 서브커맨드와 종료 코드 규약
"""

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .build_cache import MachineCache
from .config import ConfigError, WorkbenchConfig, default_config, load_config
from .constructions import (
    EmptinessSearch,
    ReductionClass,
    create_machine,
)
from .corpus import corpus_machine
from .engine import RunLimits, RunResult, Verdict, format_trace, replay_trace, run_scheduled, run_synchronous
from .graphs import (
    classify,
    format_graph,
    load_graph,
    make_harmonious_sfnlg,
    make_ncg,
    make_nlg,
    make_nqlg,
)
from .machine import DistributedMachine, format_machine, load_machine
from .schedulers import EXCLUSIVE_ORDERS, make_schedule
from .turing import RunKind, TuringMachine, format_tm, load_tm, make_t_infinity, tm_run

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_INVALID = 2
EXIT_UNDECIDED = 3
EXIT_INCONSISTENT = 4
EXIT_BOUNDARY = 5
EXIT_INTERRUPTED = 130

VERDICT_EXIT = {
    Verdict.ACCEPTING: EXIT_ACCEPT,
    Verdict.REJECTING: EXIT_REJECT,
    Verdict.UNDECIDED: EXIT_UNDECIDED,
    Verdict.INCONSISTENT: EXIT_INCONSISTENT,
}

FAMILIES = ("nlg", "ncg", "nqlg", "sfnlg-harmonious")
DEFAULT_CONFIG_PATH = Path("config/workbench.yaml")


def _stderr(message: str):
    print(message, file=sys.stderr)


def _emit(text: str, out: Optional[str]):
    """--out 이 있으면 파일로, 없으면 stdout 으로"""
    if out:
        target = Path(out)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text, encoding="utf-8")
        _stderr(f"💾 저장: {target}")
    else:
        sys.stdout.write(text)


def resolve_config(path: Optional[str]) -> WorkbenchConfig:
    """--config, DAWB_CONFIG, config/workbench.yaml, 기본값 순서"""
    if path:
        return load_config(path)
    env_path = os.environ.get("DAWB_CONFIG")
    if env_path:
        return load_config(env_path)
    if DEFAULT_CONFIG_PATH.exists():
        return load_config(DEFAULT_CONFIG_PATH)
    return default_config()


def resolve_tm(ref: str) -> tuple[TuringMachine, str]:
    """TM 파일 경로 또는 코퍼스 이름 (inc<k> 포함), 캐시 키용 텍스트와 함께"""
    path = Path(ref)
    if path.exists():
        return load_tm(path), path.read_text(encoding="utf-8")
    tm = corpus_machine(ref)
    return tm, format_tm(tm)


def resolve_machine(ref: str, config: WorkbenchConfig) -> DistributedMachine:
    """
    머신 참조 해석

    nlg | nqlg | snowball | tm-head:<tm> | reduce:<class>:<tm> | 머신 파일 경로
    """
    if ref in ("nlg", "nqlg", "snowball"):
        return create_machine(ref)

    kind, sep, rest = ref.partition(":")
    if sep and kind in ("tm-head", "reduce"):
        cache = MachineCache(config.build_dir, progress_callback=_stderr)
        if kind == "tm-head":
            tm, tm_text = resolve_tm(rest)
            return cache.get_or_build(
                ("tm-head", tm_text),
                lambda: create_machine("tm-head", tm=tm),
            )
        cls_text, sep, tm_path = rest.partition(":")
        if not sep:
            raise ValueError(f"machine reference must be reduce:<class>:<tm>: {ref}")
        cls = ReductionClass.parse(cls_text)
        tm, tm_text = resolve_tm(tm_path)
        probe = config.search.tm_probe_steps
        return cache.get_or_build(
            ("reduce", cls.value, str(probe), tm_text),
            lambda: create_machine("reduce", tm=tm, cls=cls, probe_steps=probe),
        )

    path = Path(ref)
    if not path.exists():
        raise ValueError(
            f"지원하지 않는 머신 참조: {ref}\n"
            "지원 참조: nlg, nqlg, snowball, tm-head:<tm>, reduce:<class>:<tm>, <machine file>"
        )
    return load_machine(path)


def _limits(args, config: WorkbenchConfig) -> RunLimits:
    return RunLimits(
        max_steps=args.max_steps if args.max_steps is not None else config.run.max_steps,
        max_stored_configs=(
            args.max_stored if args.max_stored is not None else config.run.max_stored_configs
        ),
    )


# ──────────────────────────────────────────────────
# Commands
# ──────────────────────────────────────────────────

def cmd_generate(args, config: WorkbenchConfig) -> int:
    """그래프 생성 후 요약 출력"""
    if args.family == "nqlg":
        if not args.counts:
            raise ValueError("nqlg needs --counts, e.g. --counts 1,2,2")
        counts = [int(c) for c in args.counts.split(",")]
        graph = make_nqlg(counts, edge_policy=args.policy, seed=args.seed)
    else:
        if args.n is None:
            raise ValueError(f"{args.family} needs --n")
        builders = {"nlg": make_nlg, "ncg": make_ncg, "sfnlg-harmonious": make_harmonious_sfnlg}
        graph = builders[args.family](args.n)

    _emit(format_graph(graph), args.out)
    report = classify(graph)
    print(report.summary(), file=sys.stdout if args.out else sys.stderr)
    return EXIT_ACCEPT


def cmd_check(args, config: WorkbenchConfig) -> int:
    """패밀리 오라클 결과 출력"""
    report = classify(load_graph(args.graph))
    print(report.summary())
    for violation in report.violations:
        print(f"violation {violation}")
    return EXIT_ACCEPT if report.member else EXIT_REJECT


def cmd_run(args, config: WorkbenchConfig) -> int:
    """머신 실행 후 판정 줄 출력"""
    machine = resolve_machine(args.machine, config)
    graph = load_graph(args.graph)
    limits = _limits(args, config)
    kind = args.scheduler or config.scheduler.kind
    window = args.window if args.window is not None else config.scheduler.window
    seed = args.seed if args.seed is not None else config.scheduler.seed
    record = args.trace is not None

    _stderr(f"🚀 {machine.name} 실행 ({kind}, |V|={graph.order})")
    if kind == "synchronous":
        result = run_synchronous(machine, graph, limits, record_trace=record)
    else:
        schedule = make_schedule(kind, graph, seed=seed, window=window, order=args.order)
        result = run_scheduled(machine, graph, schedule, limits, record_trace=record)

    if record and args.trace == "-":
        # verdict 줄은 _report 가 출력
        sys.stdout.writelines(format_trace(result).splitlines(keepends=True)[:-1])
    elif record:
        Path(args.trace).parent.mkdir(parents=True, exist_ok=True)
        Path(args.trace).write_text(format_trace(result), encoding="utf-8")
        _stderr(f"💾 trace 저장: {args.trace}")
    return _report(result)


def cmd_replay(args, config: WorkbenchConfig) -> int:
    """저장된 trace 재분류"""
    machine = resolve_machine(args.machine, config)
    result = replay_trace(machine, Path(args.trace).read_text(encoding="utf-8"))
    return _report(result)


def _report(result: RunResult) -> int:
    print(result.verdict_line())
    if result.details:
        _stderr(f"🔍 {result.details}")
    return VERDICT_EXIT[result.verdict]


def cmd_compile_machine(args, config: WorkbenchConfig) -> int:
    machine = resolve_machine(args.machine, config)
    _emit(format_machine(machine), args.out)
    return EXIT_ACCEPT


def cmd_tm_run(args, config: WorkbenchConfig) -> int:
    """TM 직접 실행"""
    tm, _ = resolve_tm(args.tm)
    outcome = tm_run(tm, args.max_steps)
    print(outcome.summary())
    if outcome.kind is RunKind.HALTS:
        return EXIT_ACCEPT
    if outcome.kind is RunKind.BOUNDARY:
        return EXIT_BOUNDARY
    return EXIT_REJECT


def cmd_tinf(args, config: WorkbenchConfig) -> int:
    tm, _ = resolve_tm(args.tm)
    _emit(format_tm(make_t_infinity(tm)), args.out)
    return EXIT_ACCEPT


def cmd_reduce(args, config: WorkbenchConfig) -> int:
    machine = resolve_machine(f"reduce:{args.cls}:{args.tm}", config)
    _emit(format_machine(machine), args.out)
    return EXIT_ACCEPT


def cmd_search(args, config: WorkbenchConfig) -> int:
    """환원 오토마톤의 증인 그래프 탐색"""
    cls = ReductionClass.parse(args.cls)
    machine = resolve_machine(f"reduce:{cls.value}:{args.tm}", config)
    max_length = args.max_length or config.search.max_length
    workers = args.workers or config.search.workers
    out_dir = Path(args.out_dir or config.output_dir)

    search = EmptinessSearch(
        machine,
        cls,
        limits=_limits(args, config),
        workers=workers,
        progress_callback=_stderr,
    )
    report = search.run(max_length)
    search.save(report, out_dir)

    for warning in report.warnings:
        print(f"warning: {warning}")
    if report.found:
        witness = out_dir / report.witness_name()
        print(f"{report.summary()} graph={witness}")
    else:
        print(report.summary())
    if report.warnings:
        return EXIT_UNDECIDED
    return EXIT_ACCEPT if report.found else EXIT_REJECT


# ──────────────────────────────────────────────────
# Parser
# ──────────────────────────────────────────────────

def _add_limit_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--max-steps", type=int, default=None, help="실행 step 한도 (기본: 10·|V|²+1000)")
    parser.add_argument("--max-stored", type=int, default=None, help="지문 색인 최대 설정 수")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="workbench",
        description="Distributed Automata WorkBench - 분산 오토마타 실행과 공허성 환원",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
예시:
    python workbench.py generate nlg --n 7 --out graphs/nlg7.graph
    python workbench.py run nlg graphs/nlg7.graph
    python workbench.py tm-run corpus/inc3.tm
    python workbench.py search corpus/inc3.tm --class DA --max-length 16

종료 코드:
    0 수락 / 1 거부 / 2 잘못된 입력 / 3 미결정 / 4 비일관 / 5 왼쪽 경계 위반
    search 는 미결정 경고가 하나라도 있으면 FOUND 여도 3

환경 변수:
    DAWB_CONFIG   설정 파일 경로 (기본: config/workbench.yaml)
        """,
    )
    parser.add_argument("--config", "-c", default=None, help="설정 YAML 파일 경로")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="그래프 패밀리 인스턴스 생성")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, default=None, help="길이 (sfnlg-harmonious 는 단계 k)")
    p.add_argument("--counts", default=None, help="nqlg 층별 복제 수 (예: 1,2,2)")
    p.add_argument("--policy", default="full-bipartite", choices=("full-bipartite", "random"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="출력 그래프 파일 (기본: stdout)")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("check", help="그래프 패밀리 오라클")
    p.add_argument("graph")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("run", help="머신 실행")
    p.add_argument("machine", help="nlg | nqlg | snowball | tm-head:<tm> | reduce:<class>:<tm> | 머신 파일 (<tm>: 파일 또는 코퍼스 이름)")
    p.add_argument("graph")
    p.add_argument("--scheduler", choices=("synchronous", "liberal", "exclusive"), default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--window", type=int, default=None, help="공정성 창 W (기본: 4·|V|)")
    p.add_argument("--order", choices=EXCLUSIVE_ORDERS, default="round-robin", help="exclusive 선택 순서")
    p.add_argument("--trace", nargs="?", const="-", default=None, help="trace 출력 파일 (- 또는 값 생략: stdout)")
    _add_limit_flags(p)
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("replay", help="저장된 trace 재분류")
    p.add_argument("machine")
    p.add_argument("trace")
    p.set_defaults(handler=cmd_replay)

    p = sub.add_parser("compile-machine", help="머신 참조를 텍스트 형식으로 출력")
    p.add_argument("machine")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_compile_machine)

    p = sub.add_parser("tm-run", help="TM 직접 실행")
    p.add_argument("tm")
    p.add_argument("--max-steps", type=int, default=10_000)
    p.set_defaults(handler=cmd_tm_run)

    p = sub.add_parser("tinf", help="T∞ 변환")
    p.add_argument("tm")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_tinf)

    p = sub.add_parser("reduce", help="환원 오토마톤 A^T 출력")
    p.add_argument("tm")
    p.add_argument("--class", dest="cls", required=True, choices=[c.value for c in ReductionClass])
    p.add_argument("--out", default=None)
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("search", help="증인 그래프 탐색")
    p.add_argument("tm")
    p.add_argument("--class", dest="cls", required=True, choices=[c.value for c in ReductionClass])
    p.add_argument("--max-length", type=int, default=None)
    p.add_argument("--out-dir", default=None)
    p.add_argument("--workers", type=int, default=None)
    _add_limit_flags(p)
    p.set_defaults(handler=cmd_search)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args.config)
        return args.handler(args, config)
    except (ConfigError, ValueError, OSError) as e:
        _stderr(f"❌ {e}")
        return EXIT_INVALID
    except KeyboardInterrupt:
        _stderr("\n⚠️ 사용자에 의해 중단됨")
        return EXIT_INTERRUPTED
