"""Pytest configuration and shared fixtures."""

import os

import pytest

from graphs.core import Graph
from scripts.oracles import standard_graph


@pytest.fixture(autouse=True)
def reset_env():
    """Reset environment variables before each test."""
    # Store original env
    original_env = os.environ.copy()
    yield
    # Restore original env
    os.environ.clear()
    os.environ.update(original_env)


@pytest.fixture
def k2() -> Graph:
    """A single edge a-b."""
    return standard_graph("K2")


@pytest.fixture
def c4() -> Graph:
    """The square a-b-c-d-a."""
    return standard_graph("C4")


@pytest.fixture
def c5() -> Graph:
    """The pentagon v1-v2-v3-v4-v5-v1."""
    return standard_graph("C5")


@pytest.fixture
def p5() -> Graph:
    """The path a-b-c-d-e."""
    return standard_graph("P5")


@pytest.fixture
def graph_file(tmp_path):
    """Write graph text to a temporary file and return its path."""
    def write(text: str, name: str = "test.graph") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write
