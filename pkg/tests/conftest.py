from pathlib import Path

import pytest

from collabprop.corpus import parse_corpus
from collabprop.roster import attribute_explicit, load_roster

FIXTURES = Path(__file__).parent / "fixtures"
SMALL = FIXTURES / "small"


@pytest.fixture(scope="session")
def small_paths():
    return {name: SMALL / f"{name}.jsonl" for name in ("corpus", "roster", "attributions")}


@pytest.fixture(scope="session")
def small(small_paths):
    with open(small_paths["corpus"], "rb") as fh:
        corpus = parse_corpus(fh)
    with open(small_paths["roster"], "rb") as fh:
        roster = load_roster(fh)
    with open(small_paths["attributions"], "rb") as fh:
        links = attribute_explicit(corpus, roster, fh)
    return corpus, roster, links


# filled by test_acceptance.py, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
