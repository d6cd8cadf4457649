"""Application Bootstrap

Handles dependency registration and application initialization.
Sets up the dependency injection container with the configuration and the
four computation services.
"""

from typing import Optional

from ..services.deformation_scan import DeformationScanService
from ..services.grid_oracle import GridOracle
from ..services.interfaces.deformation_scan import IDeformationScanService
from ..services.interfaces.grid_oracle import IGridOracle
from ..services.interfaces.sturm_solver import ISturmSolver
from ..services.interfaces.tube_spectrum_service import ITubeSpectrumService
from ..services.sturm_solver import SturmSolver
from ..services.tube_spectrum import TubeSpectrumService
from .config.app_config import AppConfig, SolverConfig, get_config
from .container import Container, get_container
from .logging import get_logger

logger = get_logger(__name__)

REQUIRED_SERVICES = [ISturmSolver, ITubeSpectrumService, IGridOracle, IDeformationScanService]


def register_dependencies(container: Container, config: Optional[AppConfig] = None) -> None:
    """Register all application dependencies in the DI container.

    Args:
        container: The dependency injection container
        config: Configuration to register; defaults to the global instance
    """
    config = config or get_config()
    logger.debug("Starting dependency registration")

    container.register_instance(AppConfig, config)
    container.register_instance(SolverConfig, config.solver)

    container.register_singleton(ISturmSolver, SturmSolver)
    container.register_singleton(ITubeSpectrumService, TubeSpectrumService)
    container.register_singleton(IGridOracle, GridOracle)
    container.register_singleton(IDeformationScanService, DeformationScanService)

    logger.debug("Dependency registration completed", {"services": len(REQUIRED_SERVICES)})


def validate_dependencies(container: Container) -> None:
    """Validate that all required services resolve.

    Raises:
        ValueError: If a required service is missing or fails to build
    """
    for service_interface in REQUIRED_SERVICES:
        if not container.is_registered(service_interface):
            raise ValueError(f"Required service {service_interface.__name__} is not registered")
        try:
            container.get(service_interface)
        except Exception as e:
            raise ValueError(f"Failed to resolve {service_interface.__name__}: {str(e)}") from e


def setup_application(config: Optional[AppConfig] = None) -> Container:
    """Bootstrap and validate the container.

    Returns:
        Container: The configured dependency injection container
    """
    container = get_container()
    container.clear()
    register_dependencies(container, config)
    validate_dependencies(container)
    return container
