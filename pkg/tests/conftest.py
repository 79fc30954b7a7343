import pytest

from quivinv import parse_presentation

A1_TEXT = """
[vertices] 0 1
[arrows]
c: 0 -> 1
d: 0 -> 1
e: 1 -> 0
f: 1 -> 0
[dims]
0 = 2
1 = 2
[K] 1
[relations]
g1 = f*c - e*d
g2 = d*e - c*f
"""


@pytest.fixture(scope="session")
def a1():
    """The doubled two-vertex quiver with preprojective relations, v = (2,2), K = {1}."""
    return parse_presentation(A1_TEXT)


@pytest.fixture()
def a1_file(tmp_path):
    path = tmp_path / "a1.quiver"
    path.write_text(A1_TEXT, encoding="utf-8")
    return path
