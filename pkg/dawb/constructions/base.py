"""
Constructions 공통 정의
"""


class ConstructionError(ValueError):
    """구성 전제 조건 위반"""
    pass


Z3 = (0, 1, 2)
DIRECTIONS = (-1, 1)
