"""Service accessors for the command modules.

Commands never build services themselves; they resolve them from the
dependency injection container set up by ``configure``.
"""

from typing import Any

from ..core.bootstrap import setup_application
from ..core.config.app_config import AppConfig, set_config
from ..core.container import get_container
from ..core.logging import get_logger, setup_logging
from ..services.interfaces.deformation_scan import IDeformationScanService
from ..services.interfaces.grid_oracle import IGridOracle
from ..services.interfaces.sturm_solver import ISturmSolver
from ..services.interfaces.tube_spectrum_service import ITubeSpectrumService

logger = get_logger(__name__)


def configure(**overrides: Any) -> AppConfig:
    """Build the run configuration from the environment plus CLI overrides.

    ``None`` overrides are dropped so that environment values stay in force.
    """
    config = AppConfig(**{key: value for key, value in overrides.items() if value is not None})
    set_config(config)
    setup_logging(config.logging)
    setup_application(config)
    logger.debug("Run configured", {"jobs": config.jobs, "boundary_area": config.boundary_area})
    return config


def get_sturm_solver() -> ISturmSolver:
    """Get the half-line solver from the DI container."""
    return get_container().get(ISturmSolver)


def get_tube_spectrum_service() -> ITubeSpectrumService:
    """Get the tube spectrum service from the DI container."""
    return get_container().get(ITubeSpectrumService)


def get_grid_oracle() -> IGridOracle:
    """Get the grid oracle from the DI container."""
    return get_container().get(IGridOracle)


def get_deformation_scan_service() -> IDeformationScanService:
    """Get the deformation scan service from the DI container."""
    return get_container().get(IDeformationScanService)
