#!/usr/bin/env python3
"""
Distributed Automata WorkBench CLI
분산 오토마타 실행, 그래프 패밀리 검사, 공허성 환원 탐색

사용법:
    python workbench.py generate nlg --n 7 --out graphs/nlg7.graph
    python workbench.py run nlg graphs/nlg7.graph --trace traces/nlg7.trace
    python workbench.py search corpus/inc3.tm --class DA
"""

import sys

# .env 파일 로드
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

from dawb.cli import main


if __name__ == "__main__":
    sys.exit(main())
