"""Service interfaces for the application.

This module contains the contracts for the radial solver, the tube spectrum
assembly, the grid oracle and the deformation scans.
"""

from .deformation_scan import IDeformationScanService
from .grid_oracle import IGridOracle
from .sturm_solver import ISturmSolver
from .tube_spectrum_service import ITubeSpectrumService

__all__ = ["ISturmSolver", "ITubeSpectrumService", "IGridOracle", "IDeformationScanService"]
