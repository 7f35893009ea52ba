import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from densewire.materials import default_catalog


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()
