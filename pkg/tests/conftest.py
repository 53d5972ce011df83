from __future__ import annotations

from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

_ACCEPTANCE_FILES = ("test_acceptance.py", "test_corpus_suite.py")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion."""
    lines: list[tuple[str, str]] = []
    for status, word in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if any(f in nodeid for f in _ACCEPTANCE_FILES):
                lines.append((word, nodeid.split("::")[-1]))
    for report in terminalreporter.stats.get("skipped", []):
        nodeid = getattr(report, "nodeid", "")
        if any(f in nodeid for f in _ACCEPTANCE_FILES):
            reason = ""
            if isinstance(report.longrepr, tuple):
                reason = f"  ({report.longrepr[2]})"
            lines.append(("SKIP", nodeid.split("::")[-1] + reason))
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for word, name in sorted(set(lines), key=lambda x: x[1]):
        terminalreporter.write_line(f"[{word}] {name}")
