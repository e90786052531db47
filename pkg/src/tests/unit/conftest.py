"""
Shared fixtures for mgcolor unit tests
"""

import pytest

from mgcolor.config import reset_settings
from mgcolor.formats import parse_graph_file
from mgcolor.models.graph import Multigraph

FAT_TRIANGLE = """\
mgraph 3
e 0 1 2
e 1 2 2
e 0 2 2
"""

TWIN_TRIANGLES = """\
mgraph 6
e 0 1 2
e 1 2 2
e 0 2 2
e 3 4 2
e 4 5 2
e 3 5 2
e 2 3
"""


@pytest.fixture(autouse=True)
def fresh_settings():
    """Drop settings cached by an earlier test"""
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def fat_triangle() -> Multigraph:
    """Triangle with every edge doubled: Δ=4, μ=2, χ'=6 (ids 0,1 | 2,3 | 4,5)"""
    return parse_graph_file(FAT_TRIANGLE)


@pytest.fixture
def twin_triangles() -> Multigraph:
    """Two fat triangles joined by the single edge 2-3 (id 12)"""
    return parse_graph_file(TWIN_TRIANGLES)


@pytest.fixture
def fat_triangle_with_spare() -> Multigraph:
    """Fat triangle plus a disjoint edge 3-4 (id 6)"""
    return parse_graph_file(FAT_TRIANGLE.replace("mgraph 3", "mgraph 5") + "e 3 4\n")


@pytest.fixture
def path_graph() -> Multigraph:
    """Simple path 0-1-2-3-4-5; edge i joins i and i+1"""
    g = Multigraph(range(6))
    for v in range(5):
        g.add_edge(v, v + 1)
    return g
