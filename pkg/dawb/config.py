"""
설정 관리 모듈
YAML 설정 파일 파싱 및 WorkbenchConfig 데이터 클래스
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional
import yaml


SCHEDULER_KINDS = ("synchronous", "liberal", "exclusive")


class ConfigError(Exception):
    """설정 관련 오류 기본 클래스"""
    pass


class ConfigNotFoundError(ConfigError):
    """설정 파일을 찾을 수 없을 때"""
    pass


class ConfigValidationError(ConfigError):
    """설정 검증 실패"""
    pass


@dataclass
class RunSettings:
    """실행 한도"""
    max_steps: Optional[int] = None  # None → 10·|V|² + 1000
    max_stored_configs: int = 100_000


@dataclass
class SchedulerSettings:
    """스케줄러 설정"""
    kind: str = "synchronous"  # synchronous | liberal | exclusive
    seed: int = 0
    window: Optional[int] = None  # None → 4·|V|


@dataclass
class SearchSettings:
    """빈 언어 탐색 설정"""
    max_length: int = 64
    workers: int = 1
    tm_probe_steps: int = 10_000


@dataclass
class WorkbenchConfig:
    """워크벤치 설정 데이터 클래스"""
    run: RunSettings = field(default_factory=RunSettings)
    scheduler: SchedulerSettings = field(default_factory=SchedulerSettings)
    search: SearchSettings = field(default_factory=SearchSettings)
    build_dir: str = "build"
    output_dir: str = "output"

    @classmethod
    def from_dict(cls, data: dict) -> "WorkbenchConfig":
        """딕셔너리에서 WorkbenchConfig 생성"""
        wb_data = data.get("workbench", data) or {}
        if not isinstance(wb_data, dict):
            raise ConfigValidationError("workbench 섹션은 매핑이어야 합니다")

        run_data = wb_data.get("run", {}) or {}
        run = RunSettings(
            max_steps=_optional_positive(run_data.get("max_steps"), "run.max_steps"),
            max_stored_configs=_positive(
                run_data.get("max_stored_configs", 100_000), "run.max_stored_configs"
            ),
        )

        sched_data = wb_data.get("scheduler", {}) or {}
        kind = str(sched_data.get("kind", "synchronous")).lower()
        if kind not in SCHEDULER_KINDS:
            raise ConfigValidationError(
                f"지원하지 않는 스케줄러: {kind}\n"
                f"지원 스케줄러: {', '.join(SCHEDULER_KINDS)}"
            )
        scheduler = SchedulerSettings(
            kind=kind,
            seed=int(sched_data.get("seed", 0)),
            window=_optional_positive(sched_data.get("window"), "scheduler.window"),
        )

        search_data = wb_data.get("search", {}) or {}
        search = SearchSettings(
            max_length=_positive(search_data.get("max_length", 64), "search.max_length"),
            workers=_positive(search_data.get("workers", 1), "search.workers"),
            tm_probe_steps=_positive(
                search_data.get("tm_probe_steps", 10_000), "search.tm_probe_steps"
            ),
        )

        return cls(
            run=run,
            scheduler=scheduler,
            search=search,
            build_dir=str(wb_data.get("build_dir", "build")),
            output_dir=str(wb_data.get("output_dir", "output")),
        )

    def to_dict(self) -> dict:
        return {
            "workbench": {
                "run": {
                    "max_steps": self.run.max_steps,
                    "max_stored_configs": self.run.max_stored_configs,
                },
                "scheduler": {
                    "kind": self.scheduler.kind,
                    "seed": self.scheduler.seed,
                    "window": self.scheduler.window,
                },
                "search": {
                    "max_length": self.search.max_length,
                    "workers": self.search.workers,
                    "tm_probe_steps": self.search.tm_probe_steps,
                },
                "build_dir": self.build_dir,
                "output_dir": self.output_dir,
            }
        }


def _positive(value, name: str) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigValidationError(f"{name} 값이 정수가 아닙니다: {value!r}")
    if number < 1:
        raise ConfigValidationError(f"{name} 값은 1 이상이어야 합니다: {number}")
    return number


def _optional_positive(value, name: str) -> Optional[int]:
    if value is None:
        return None
    return _positive(value, name)


def default_config() -> WorkbenchConfig:
    """기본 설정 반환 (디스크 접근 없음)"""
    return WorkbenchConfig()


def load_config(config_path: str | Path) -> WorkbenchConfig:
    """YAML 설정 파일 로드"""
    path = Path(config_path)

    if not path.exists():
        raise ConfigNotFoundError(
            f"설정 파일을 찾을 수 없습니다: {path.absolute()}"
        )

    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigValidationError(f"YAML 파싱 오류: {e}")

    if not data:
        raise ConfigValidationError("설정 파일이 비어있습니다")
    if not isinstance(data, dict):
        raise ConfigValidationError("설정 파일 최상위는 매핑이어야 합니다")

    return WorkbenchConfig.from_dict(data)
