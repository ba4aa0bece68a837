import pytest

from ramsey_forge.hadamard import SignMatrix

# reference matrices: Sylvester order 8, and the order-6 matrix left after deleting rows and columns 6, 8
H1_ROWS = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, -1, 1, -1, 1, -1, 1, -1],
    [1, 1, -1, -1, 1, 1, -1, -1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, -1, 1, -1, -1, 1, -1, 1],
    [1, 1, -1, -1, -1, -1, 1, 1],
    [1, -1, -1, 1, -1, 1, 1, -1],
]
H2_ROWS = [
    [1, 1, 1, 1, 1, 1],
    [1, -1, 1, -1, 1, 1],
    [1, 1, -1, -1, 1, -1],
    [1, -1, -1, 1, 1, -1],
    [1, 1, 1, 1, -1, -1],
    [1, 1, -1, -1, -1, 1],
]


@pytest.fixture
def H1():
    return SignMatrix(H1_ROWS)


@pytest.fixture
def H2():
    return SignMatrix(H2_ROWS)


@pytest.fixture
def criterion(request):
    """Record one acceptance line; all lines are repeated in the terminal summary."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])
    capman = request.config.pluginmanager.getplugin("capturemanager")

    def record(number: int, ok: bool, detail: str) -> bool:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        with capman.global_and_fixture_disabled():
            print(f"\n{line}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
