"""Shared fixtures for the mqvkit tests."""

import logfire
import numpy as np
import pytest
import sympy

from mqvkit.blocklinalg import ClassSpec
from mqvkit.dsolver import DSInstance
from mqvkit.graph import build_complete_kpartite

logfire.configure(console=False, send_to_logfire=False)

TRIANGLE_SPEC = """# triangle

## Colours
0: 1 | 2 | 3

## Dimensions
1: 1
2: 1
3: 1

## Parameters
1: 2
2: 3
3: 1/6
"""

STAR_SPEC = """# star
% one core node with a leg of length one

## Nodes
0

## Legs
0: dims=2 1; params=2 3
"""

IRREGULAR_SPEC = """# fission

## Irregular Type
A=0: a T=0 dim=1; b T=1 dim=2
A=1: c T=0 dim=1
"""


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator."""
    return np.random.default_rng(1234)


@pytest.fixture
def triangle():
    """The triangle on nodes 1, 2, 3."""
    return build_complete_kpartite([["1"], ["2"], ["3"]], name="triangle")


@pytest.fixture
def interval():
    """The single edge 1 - 2."""
    return build_complete_kpartite([["1"], ["2"]], name="interval")


@pytest.fixture
def triangle_instance(triangle) -> DSInstance:
    """Scalar classes 2, 3, 1/6 on the triangle; q^d = 1."""
    classes = {
        "1": ClassSpec.scalar(sympy.Integer(2), 1),
        "2": ClassSpec.scalar(sympy.Integer(3), 1),
        "3": ClassSpec.scalar(sympy.Rational(1, 6), 1),
    }
    return DSInstance("triangle", triangle, classes)


@pytest.fixture
def spec_file(tmp_path):
    """Write a document to a temporary file and return its path."""

    def write(text: str, name: str = "graph.md"):
        path = tmp_path / name
        path.write_text(text)
        return path

    return write
