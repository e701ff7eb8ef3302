import sys
from pathlib import Path

import pytest

from fo2minsky.ca import parse_machine

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
sys.path.insert(0, str(Path(__file__).parent))

# machines with an accepting run, and the step bound that finds it
NONEMPTY = {"m1": 5, "both": 8, "k3": 8, "transfer": 12, "pump": 8, "zero": 4}
EMPTY = ("m2", "stuck", "decz")


def load(name):
    return parse_machine((DATA / f"{name}.ca").read_text())


@pytest.fixture
def m1():
    return load("m1")


@pytest.fixture
def m2():
    return load("m2")


@pytest.fixture(params=sorted(NONEMPTY))
def nonempty(request):
    return request.param, load(request.param), NONEMPTY[request.param]
