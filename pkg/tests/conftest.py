import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from szf.graphs import complete_graph, hypercube, line_graph
from szf.patterns import hadamard_pattern, z_pattern_of_graph


@pytest.fixture(scope="session")
def hadamard():
    return hadamard_pattern(2)


@pytest.fixture(scope="session")
def q3():
    return hypercube(3)


@pytest.fixture(scope="session")
def q3_pattern(q3):
    return z_pattern_of_graph(q3)


@pytest.fixture(scope="session")
def lk4():
    return line_graph(complete_graph(4))[0]
