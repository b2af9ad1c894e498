import sys
from pathlib import Path

import pytest

from gxrepair import ConstraintSet, DataGraph, SymbolOrder, WeightSpec

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def film():
    return DataGraph.load(DATA / "film" / "graph.json"), ConstraintSet.load(DATA / "film" / "constraints.gx")


@pytest.fixture(scope="session")
def network():
    d = DATA / "network"
    return {
        "a": DataGraph.load(d / "fig3a.json"),
        "b": DataGraph.load(d / "fig3b.json"),
        "c": DataGraph.load(d / "fig3c.json"),
        "r": ConstraintSet.load(d / "constraints.gx"),
        "w": WeightSpec.load(d / "weights.json"),
        "order": SymbolOrder.load(d / "order.json"),
    }
