import contextlib

import pytest

_VERDICTS: dict[int, list[str]] = {}
_NOTES: dict[int, list[str]] = {}


class Criterion:
    def __init__(self, number: int):
        self.number = number
        self.verdict = None

    def note(self, text: str) -> None:
        _NOTES.setdefault(self.number, []).append(text)

    def report(self, verdict: str) -> None:
        self.verdict = verdict


@pytest.fixture
def criterion():
    @contextlib.contextmanager
    def run(number: int):
        c = Criterion(number)
        try:
            yield c
        except BaseException:
            _VERDICTS.setdefault(number, []).append("FAIL")
            raise
        _VERDICTS.setdefault(number, []).append(c.verdict or "PASS")
    return run


def _merge(verdicts: list[str]) -> str:
    if "FAIL" in verdicts:
        return f"FAIL ({verdicts.count('FAIL')}/{len(verdicts)} runs)"
    return verdicts[0] if len(set(verdicts)) == 1 else ", ".join(sorted(set(verdicts)))


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_VERDICTS):
        notes = "; ".join(_NOTES.get(n, []))
        line = f"criterion {n:2d}: {_merge(_VERDICTS[n])}"
        terminalreporter.write_line(line + (f"  ({notes})" if notes else ""))
