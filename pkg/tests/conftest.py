import pytest

from tilekit.aztec import KTiling, Tiling

# One line per acceptance criterion, filled in by test_acceptance.py.
ACCEPTANCE: dict = {}

# A rank-3 tiling and a 3-tiling built on it, read off the checkerboard
# pictures; cell coordinates are the lower-left cell of each domino.
FIG_TILING = [(-3, -1, "v"), (-2, -2, "v"), (-2, 0, "v"), (-1, -3, "h"), (-1, -2, "h"),
              (-1, -1, "h"), (-1, 0, "v"), (-1, 2, "h"), (0, 0, "v"), (1, -2, "v"), (1, 0, "v"),
              (2, -1, "v")]
FIG_SECOND = [(-3, -1, "v"), (-2, -2, "v"), (-2, 0, "h"), (-2, 1, "h"), (-1, -3, "v"),
              (-1, -1, "h"), (-1, 2, "h"), (0, -3, "v"), (0, 0, "h"), (0, 1, "h"), (1, -2, "v"),
              (2, -1, "v")]
FIG_THIRD = [(-3, -1, "h"), (-3, 0, "h"), (-2, -2, "h"), (-2, 1, "h"), (-1, -3, "h"),
             (-1, -1, "v"), (-1, 2, "h"), (0, -2, "h"), (0, -1, "v"), (0, 1, "h"), (1, -1, "v"),
             (2, -1, "v")]


@pytest.fixture
def fig_tiling() -> Tiling:
    return Tiling.make(3, FIG_TILING)


@pytest.fixture
def fig_ktiling() -> KTiling:
    return KTiling.make([Tiling.make(3, d) for d in (FIG_TILING, FIG_SECOND, FIG_THIRD)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"AC{n:<3d}{'PASS' if ok else 'FAIL'}  {detail}")
