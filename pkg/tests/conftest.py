import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from complexmerge.io import load_complex  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
CUBE_PATH = FIXTURES / "cube_appendix.json"

# printed output of the reference cube run (1-based)
CUBE_V = [
    [0.531049, 1.01467, 0.347772, 0.831391, 0.606105, 1.08972, 0.422827, 0.906446],
    [0.865999, 0.682721, 0.526892, 0.343614, 1.21888, 1.03561, 0.879776, 0.696499],
    [0.141913, 0.216968, 0.494797, 0.569852, 0.520001, 0.595057, 0.872886, 0.947941],
]
CUBE_EV = [[1, 2], [1, 3], [1, 5], [2, 4], [2, 6], [3, 4], [3, 7], [4, 8], [5, 6], [5, 7], [6, 8], [7, 8]]
CUBE_FE = [[1, 2, 3, 4], [1, 5, 9, 10], [2, 6, 11, 12], [3, 7, 9, 11], [4, 8, 10, 12], [5, 6, 7, 8]]


@pytest.fixture(scope="session")
def cube():
    return load_complex(CUBE_PATH)


def one_based(cells):
    return [[i + 1 for i in c] for c in cells]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
