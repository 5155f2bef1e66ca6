import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hodgefil.formsio import echelonize, load_fixture  # noqa: E402
from hodgefil.pipeline import RunConfig, load_inputs, run_basis, run_hodge  # noqa: E402

DATA = Path(__file__).resolve().parents[1] / "src" / "hodgefil" / "data"

ACCEPTANCE_LINES: list[str] = []


def override_path(level: int) -> str:
    return str(DATA / f"reference{level}.json")


@functools.lru_cache(maxsize=None)
def echelon(level: int, weight: int, sign: str):
    return echelonize(load_fixture(level, weight, sign))


@functools.lru_cache(maxsize=None)
def inputs(level: int, override: bool):
    return load_inputs(RunConfig(level, basis_override=override_path(level) if override else None))


@functools.lru_cache(maxsize=None)
def derham(level: int, override: bool):
    return run_basis(RunConfig(level), inputs(level, override))[1]


@functools.lru_cache(maxsize=None)
def hodge(level: int, override: bool):
    return run_hodge(RunConfig(level), inputs(level, override))[1]


@pytest.fixture
def record():
    def _record(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
