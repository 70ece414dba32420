"""
Distributed Automata WorkBench
라벨 그래프 위의 약한 비동기 분산 오토마타 시뮬레이션 및 검증 도구
"""

__version__ = "1.0.0"
