"""
공통 fixture: 저장소 루트를 import 경로에 추가하고 내장 머신을 제공
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from dawb.constructions import nlg_decider, nqlg_decider, snowball_machine  # noqa: E402

REPO_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))


@pytest.fixture(scope="session")
def nlg_machine():
    return nlg_decider()


@pytest.fixture(scope="session")
def nqlg_machine():
    return nqlg_decider()


@pytest.fixture(scope="session")
def snowball():
    return snowball_machine()


@pytest.fixture()
def repo_root():
    return REPO_ROOT
