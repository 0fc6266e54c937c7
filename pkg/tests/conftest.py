from __future__ import annotations

from pathlib import Path

import pytest

from funspace import load_model, th_model

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def toy_bn():
    return load_model(FIXTURES / "toy.bnet")


@pytest.fixture(scope="session")
def th_bn():
    return th_model()
