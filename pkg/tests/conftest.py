import json
from pathlib import Path

import pytest

FIXTURE = Path(__file__).parent / "fixtures" / "derived_values.json"


@pytest.fixture(scope="session")
def derived():
    """Oracle values frozen by ``chainmap oracle``."""
    return json.loads(FIXTURE.read_text())
