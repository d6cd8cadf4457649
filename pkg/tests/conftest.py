"""Shared fixtures: fresh configuration, container and services per test."""

import json
from math import pi

import pytest

from tubespec.core.bootstrap import setup_application
from tubespec.core.config.app_config import AppConfig, set_config
from tubespec.core.container import get_container
from tubespec.core.logging import structured_logger
from tubespec.domain.lattice import solve_tube_radius
from tubespec.domain.value_objects import LatticeBasis
from tubespec.services.interfaces import (
    IDeformationScanService,
    IGridOracle,
    ISturmSolver,
    ITubeSpectrumService,
)

TWO_PI = 2.0 * pi


@pytest.fixture(autouse=True)
def _fresh_state(monkeypatch):
    for name in ("TUBESPEC_LOG", "TUBESPEC_JOBS", "TUBESPEC_BOUNDARY_AREA"):
        monkeypatch.delenv(name, raising=False)
    set_config(None)
    get_container().clear()
    yield
    set_config(None)
    get_container().clear()
    structured_logger._loggers.clear()


@pytest.fixture
def app_config() -> AppConfig:
    config = AppConfig(_env_file=None)
    set_config(config)
    return config


@pytest.fixture
def container(app_config):
    return setup_application(app_config)


@pytest.fixture
def solver(container) -> ISturmSolver:
    return container.get(ISturmSolver)


@pytest.fixture
def spectrum_service(container) -> ITubeSpectrumService:
    return container.get(ITubeSpectrumService)


@pytest.fixture
def oracle(container) -> IGridOracle:
    return container.get(IGridOracle)


@pytest.fixture
def scan_service(container) -> IDeformationScanService:
    return container.get(IDeformationScanService)


@pytest.fixture
def smooth_basis() -> LatticeBasis:
    """Smooth filling with a short core geodesic."""
    return LatticeBasis.from_cone(TWO_PI, 0.0, 0.05)


@pytest.fixture
def smooth_geometry(smooth_basis):
    return solve_tube_radius(smooth_basis, 1.0)


@pytest.fixture
def irrational_basis() -> LatticeBasis:
    return LatticeBasis((1.0, 1.0), (0.0, 2.0**0.5))


@pytest.fixture
def family_file(tmp_path):
    path = tmp_path / "family.json"
    path.write_text(
        json.dumps(
            {
                "family": {"kind": "smooth_filling", "lengths": [0.08, 0.04, 0.02, 0.01]},
                "boundary_area": 1.0,
            }
        )
    )
    return path
