from __future__ import annotations

from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def pytest_addoption(parser):
    parser.addoption(
        "--regen-goldens",
        action="store_true",
        default=False,
        help="rewrite golden fixture files from current outputs instead of comparing",
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call":
                continue
            if "test_acceptance.py" not in report.nodeid:
                continue
            name = report.nodeid.split("::")[-1]
            doc = _ACCEPTANCE_DOCS.get(name, name)
            lines.append((doc, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for doc, status in sorted(lines):
            terminalreporter.write_line(f"{status}  {doc}")


_ACCEPTANCE_DOCS: dict = {}


def pytest_collection_modifyitems(items):
    for item in items:
        if "test_acceptance.py" in item.nodeid and item.function.__doc__:
            _ACCEPTANCE_DOCS[item.nodeid.split("::")[-1]] = (
                item.function.__doc__.strip().splitlines()[0]
            )


@pytest.fixture()
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture()
def golden(request):
    """Compare bytes against a golden file, or rewrite it under --regen-goldens."""

    def check(relpath: str, produced: bytes):
        path = FIXTURES / relpath
        if request.config.getoption("--regen-goldens"):
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(produced)
            pytest.skip(f"regenerated {relpath}")
        assert path.is_file(), f"missing golden {relpath}; run pytest --regen-goldens"
        assert produced == path.read_bytes(), f"{relpath} drifted from generated output"

    return check
