from __future__ import annotations

import pytest

from extra_models import nc_dg, s4dg


@pytest.fixture
def S4dg():
    return s4dg()


@pytest.fixture
def NCdg():
    return nc_dg()
