from pathlib import Path

import pytest

import possgen
from possgen.ir import read_corpus

DATA = Path(__file__).parent / "data"

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_RESULTS: list[str] = []


@pytest.fixture(scope="session")
def lexicon():
    return possgen.default_lexicon()


@pytest.fixture(scope="session")
def patterns():
    return possgen.default_patterns()


@pytest.fixture(scope="session")
def core_corpus():
    return read_corpus((DATA / "core_examples.jsonl").read_text())


@pytest.fixture(scope="session")
def kin_corpus():
    return read_corpus((DATA / "kin_rules.jsonl").read_text())


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
