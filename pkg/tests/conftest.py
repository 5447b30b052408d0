import sys
from pathlib import Path

import pytest

from nfk.numberfield import create_field

sys.path.insert(0, str(Path(__file__).parent / "oracles"))

FIELDS = {
    "Q": [0, 1],
    "Qi": [1, 0, 1],
    "Qsqrt-3": [1, 1, 1],
    "Qsqrt-5": [5, 0, 1],
    "Qsqrt-23": [6, -1, 1],
    "Qsqrt2": [-2, 0, 1],
    "Qzeta5": [1, 1, 1, 1, 1],
}

_made = {}


def field(name):
    if name not in _made:
        _made[name] = create_field(FIELDS[name])
    return _made[name]


@pytest.fixture
def get_field():
    return field
