"""Computation layer - Services

This module contains the service implementations that turn lattice data
into spectra, oracle comparisons and family scans.
"""

from .deformation_scan import DeformationScanService
from .grid_oracle import GridOracle

# Service interfaces
from .interfaces import IDeformationScanService, IGridOracle, ISturmSolver, ITubeSpectrumService
from .sturm_solver import SturmSolver
from .tube_spectrum import TubeSpectrumService

__all__ = [
    # Concrete implementations
    "SturmSolver",
    "TubeSpectrumService",
    "GridOracle",
    "DeformationScanService",
    # Interfaces
    "ISturmSolver",
    "ITubeSpectrumService",
    "IGridOracle",
    "IDeformationScanService",
]
