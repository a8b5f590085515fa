from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fix():
    def path(name):
        return FIXTURES / name

    return path
