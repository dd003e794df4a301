import pytest

from pratio.action_graph import ActionGraph


@pytest.fixture
def rose():
    return ActionGraph([0], [0])


@pytest.fixture
def z4():
    """Cayley graph of Z/4 with x the +1 rotation and y trivial."""
    return ActionGraph([1, 2, 3, 0], [0, 1, 2, 3])


@pytest.fixture
def klein():
    """Cayley graph of (Z/2)^2 on vertices 2*a + b, x flipping a and y flipping b."""
    return ActionGraph([2, 3, 0, 1], [1, 0, 3, 2], base_vertex=0)


_ACCEPTANCE: dict[int, str] = {}


class _Criterion:
    def __init__(self, k: int):
        self.k = k
        self.detail = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        ok = exc_type is None
        detail = self.detail if ok else f"{exc_type.__name__}: {exc}".splitlines()[0]
        line = f"criterion {self.k}: {'PASS' if ok else 'FAIL'} - {detail}"
        _ACCEPTANCE[self.k] = line
        print(line)
        return False


@pytest.fixture
def criterion():
    """``with criterion(k) as c: ...`` records one pass/fail line for acceptance criterion k."""
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[k])
