from __future__ import annotations

from pathlib import Path

import pytest

from pcpgames import pcp
from pcpgames.domains import build_pipeline

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "golden"


def load_instance(name: str) -> pcp.PcpInstance:
    return pcp.parse_instance((FIXTURES / f"{name}.pcp").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def i1():
    return load_instance("i1")


@pytest.fixture(scope="session")
def eq():
    return load_instance("eq")


@pytest.fixture(scope="session")
def mm():
    return load_instance("mm")


@pytest.fixture(scope="session")
def fin():
    return load_instance("fin")


@pytest.fixture(scope="session")
def fixture_instances(i1, eq, mm, fin):
    return {"i1": i1, "eq": eq, "mm": mm, "fin": fin}


@pytest.fixture(scope="session")
def pipelines(i1, eq, mm):
    return {name: build_pipeline(inst) for name, inst in (("i1", i1), ("eq", eq), ("mm", mm))}
