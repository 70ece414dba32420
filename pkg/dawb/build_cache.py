"""
Compiled machine cache
내용 다이제스트를 키로 컴파일된 머신 파일을 build 디렉토리에 저장
"""

import hashlib
from pathlib import Path
from typing import Callable, Optional

from .machine import DistributedMachine, load_machine, save_machine


class MachineCache:
    """tm-head / reduce 머신 참조의 컴파일 결과 캐시"""

    def __init__(
        self,
        build_dir: str | Path = "build",
        progress_callback: Optional[Callable[[str], None]] = None,
    ):
        self.build_dir = Path(build_dir)
        self.progress_callback = progress_callback or print

    def _log(self, message: str):
        """진행 상황 출력"""
        self.progress_callback(message)

    @staticmethod
    def digest(*parts: str) -> str:
        """구성 요소 텍스트의 sha256"""
        h = hashlib.sha256()
        for part in parts:
            h.update(part.encode("utf-8"))
            h.update(b"\0")
        return h.hexdigest()

    def path_for(self, digest: str) -> Path:
        return self.build_dir / f"{digest}.machine"

    def get_or_build(
        self,
        parts: tuple[str, ...],
        builder: Callable[[], DistributedMachine],
    ) -> DistributedMachine:
        """캐시에 있으면 로드, 없으면 컴파일 후 저장"""
        path = self.path_for(self.digest(*parts))
        if path.exists():
            self._log(f"📂 캐시된 머신 로드: {path}")
            return load_machine(path)
        self._log(f"🔍 머신 컴파일: {parts[0]}")
        machine = builder()
        save_machine(machine, path)
        self._log(f"💾 머신 캐시 저장: {path}")
        return machine
