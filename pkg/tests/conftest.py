import pytest

import softgraph


@pytest.fixture
def sample():
    return softgraph.sample_graph()


@pytest.fixture
def sample_path(tmp_path):
    path = tmp_path / "sample.sg"
    path.write_text(softgraph.sample_text(), encoding="utf-8")
    return path
