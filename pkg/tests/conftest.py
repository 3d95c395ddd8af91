import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from khom.corpus import bundled, corpus  # noqa: E402
from khom.kgraph import KGraph  # noqa: E402

_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def graphs() -> dict[str, KGraph]:
  return {name: KGraph(sk) for name, sk in corpus().items()}


@pytest.fixture(scope="session")
def sphere() -> KGraph:
  return KGraph(bundled("sphere"))


@pytest.fixture(scope="session")
def klein() -> KGraph:
  return KGraph(bundled("klein"))


@pytest.fixture(scope="session")
def projective() -> KGraph:
  return KGraph(bundled("projective"))


@pytest.fixture(scope="session")
def heegaard() -> KGraph:
  return KGraph(bundled("heegaard"))


def pytest_runtest_logreport(report):
  marker = "test_acceptance.py::test_criterion_"
  if marker not in report.nodeid:
    return
  tail = report.nodeid.split(marker, 1)[1]
  number = int(tail.split("_", 1)[0])
  title = tail.split("_", 1)[1].replace("_", " ")
  if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
    _CRITERIA[number] = (title, "PASS" if report.outcome == "passed" else "FAIL")


def pytest_terminal_summary(terminalreporter):
  if not _CRITERIA:
    return
  terminalreporter.section("acceptance criteria")
  for n in sorted(_CRITERIA):
    title, verdict = _CRITERIA[n]
    terminalreporter.write_line(f"criterion {n:2d} {verdict}: {title}")
