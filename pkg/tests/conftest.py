"""Collects one PASS/FAIL line per acceptance criterion and prints them at the end."""
import pytest

_RESULTS: dict = {}


class AcceptanceRecorder:
    def record(self, criterion: int, title: str, ok: bool, detail: str) -> None:
        entry = _RESULTS.setdefault(criterion, {"title": title, "ok": True, "details": []})
        entry["ok"] &= bool(ok)
        entry["details"].append(detail)


@pytest.fixture(scope="session")
def acceptance():
    return AcceptanceRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        entry = _RESULTS[k]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {k}: {entry['title']} | " + "; ".join(entry["details"]))
