import pytest

from hallq.quiver import IQuiver


def linear(n: int) -> IQuiver:
    return IQuiver.from_one_based(n, [(i, i + 1) for i in range(1, n)], [], f"A{n}")


def quasi_split(n: int) -> IQuiver:
    """Type A_{2n+1} oriented 1 -> ... -> n+1 <- ... <- 2n+1 with i <-> 2n+2-i."""
    big = 2 * n + 1
    arrows = [(i, i + 1) for i in range(1, n + 1)] + [(i + 1, i) for i in range(n + 1, big)]
    return IQuiver.from_one_based(big, arrows, [(i, big + 1 - i) for i in range(1, n + 1)], f"A{big}q")


A1 = linear(1)
A2 = linear(2)
A3 = linear(3)
A3Q = quasi_split(1)


@pytest.fixture(params=[A1, A2, A3Q], ids=lambda q: q.label)
def small_quiver(request):
    return request.param


@pytest.fixture(autouse=True)
def _cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("HALLQ_CACHE_DIR", str(tmp_path / "cache"))


# criterion number -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
