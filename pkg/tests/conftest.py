import time

import pytest

_RESULTS = pytest.StashKey[list]()


class Criterion:
    def __init__(self, lines, label, limit):
        self.lines = lines
        self.label = label
        self.limit = limit
        self.ok = False
        self.elapsed = 0.0

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.elapsed = time.perf_counter() - self.start
        passed = exc_type is None and self.ok and (self.limit is None or self.elapsed <= self.limit)
        budget = "" if self.limit is None else f" / {self.limit:g}s"
        line = f"{'PASS' if passed else 'FAIL'}  {self.label}  ({self.elapsed:.2f}s{budget})"
        self.lines.append(line)
        print(line)
        return False

    @property
    def within_budget(self):
        return self.limit is None or self.elapsed <= self.limit


@pytest.fixture
def criterion(request):
    lines = request.config.stash.setdefault(_RESULTS, [])

    def make(label, limit=None):
        return Criterion(lines, label, limit)

    return make


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_RESULTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
