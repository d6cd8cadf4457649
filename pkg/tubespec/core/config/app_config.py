"""Application Configuration Management

Centralized configuration with environment variable loading and validation.
Every setting can be overridden through a ``TUBESPEC_`` environment variable
or a ``.env`` file; numerical defaults live in the nested models below.
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class LatticeConfig(BaseModel):
    """Lattice classification and mode enumeration settings"""

    coefficient_bound: int = Field(
        default=10_000, description="Largest integer coefficient tried by classify"
    )
    z_tolerance: float = Field(
        default=1e-12, description="Relative tolerance for a zero z-component"
    )
    mode_cap: int = Field(default=1_000_000, description="Maximum enumerated modes")
    radius_slack: float = Field(
        default=2.0, description="Allowed |R - 1/2 log(1/l)| for smooth fillings"
    )

    @field_validator("coefficient_bound", "mode_cap")
    @classmethod
    def validate_positive_int(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Value must be at least 1")
        return v

    @field_validator("z_tolerance")
    @classmethod
    def validate_tolerance(cls, v: float) -> float:
        if v < 0:
            raise ValueError("Tolerance must be non-negative")
        return v


class SolverConfig(BaseModel):
    """Radial Sturm-Liouville solver settings"""

    n: int = Field(default=256, description="Base mesh intervals (coarse level)")
    grading: float = Field(default=2.0, description="Mesh grading exponent gamma")
    eps0: Optional[float] = Field(
        default=None, description="First truncation radius; min(0.1, R/8) if unset"
    )
    tol_eig: float = Field(default=1e-8, description="Eigenvalue convergence tolerance")
    max_refinements: int = Field(default=40, description="Maximum epsilon halvings")
    quadrature_order: int = Field(default=4, description="Gauss points per cell")

    @field_validator("n")
    @classmethod
    def validate_n(cls, v: int) -> int:
        if v < 16:
            raise ValueError("Mesh size n must be at least 16")
        return v

    @field_validator("grading")
    @classmethod
    def validate_grading(cls, v: float) -> float:
        if v < 1:
            raise ValueError("Grading exponent must be at least 1")
        return v

    @field_validator("eps0")
    @classmethod
    def validate_eps0(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and v <= 0:
            raise ValueError("eps0 must be positive")
        return v

    @field_validator("tol_eig")
    @classmethod
    def validate_tol(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("tol_eig must be positive")
        return v

    @field_validator("max_refinements")
    @classmethod
    def validate_refinements(cls, v: int) -> int:
        if v < 1:
            raise ValueError("max_refinements must be at least 1")
        return v

    def first_epsilon(self, radius: float) -> float:
        """Resolve the first truncation radius for a tube of the given radius"""
        return self.eps0 if self.eps0 is not None else min(0.1, radius / 8.0)

    def edge_slack(self, value: float) -> float:
        """Roundoff margin applied at a window edge"""
        return self.tol_eig * max(1.0, abs(value))


class OracleConfig(BaseModel):
    """3D grid oracle settings"""

    r_nodes: int = Field(default=64, description="Graded radial intervals")
    grading: float = Field(default=2.0, description="Radial grading exponent")
    points_per_period: int = Field(
        default=8, description="Cross-section nodes per shortest resolved period"
    )
    epsilon_fraction: float = Field(
        default=1.0 / 64.0, description="Inner truncation radius as a fraction of R"
    )
    mass_scheme: Literal["lumped", "consistent", "blended"] = Field(
        default="blended", description="Mass matrix scheme"
    )
    inner_bc: Literal["natural", "dirichlet"] = Field(
        default="natural", description="Condition at the inner radius"
    )
    eigen_tol: float = Field(default=0.0, description="ARPACK tolerance; 0 means machine precision")
    residual_tol: float = Field(default=1e-8, description="Accepted residual norm")
    dense_limit: int = Field(
        default=1500, description="Use a dense eigensolver up to this dimension"
    )

    @field_validator("r_nodes", "points_per_period")
    @classmethod
    def validate_counts(cls, v: int) -> int:
        if v < 2:
            raise ValueError("Node counts must be at least 2")
        return v

    @field_validator("epsilon_fraction")
    @classmethod
    def validate_fraction(cls, v: float) -> float:
        if not 0 < v < 0.25:
            raise ValueError("epsilon_fraction must lie in (0, 1/4)")
        return v


class LoggingConfig(BaseModel):
    """Logging configuration settings"""

    level: str = Field(default="ERROR", description="Logging level")
    file_path: Optional[str] = Field(
        default=None, description="Log file path (optional)"
    )
    max_file_size: int = Field(
        default=10485760, description="Max log file size in bytes (10MB)"
    )
    backup_count: int = Field(
        default=5, description="Number of backup log files to keep"
    )

    @field_validator("level")
    @classmethod
    def validate_level(cls, v: str) -> str:
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of: {valid_levels}")
        return v.upper()


class AppConfig(BaseSettings):
    """Main application configuration

    Loads configuration from environment variables with proper validation
    and default values.
    """

    model_config = SettingsConfigDict(
        env_prefix="TUBESPEC_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    app_name: str = Field(default="tubespec", description="Application name")
    app_version: str = Field(default="1.0.0", description="Application version")

    # Logging settings
    log: str = Field(default="error", description="Log verbosity: error, info, debug")
    log_file: Optional[str] = Field(default=None, description="Log file path")

    # Execution
    jobs: int = Field(default=1, description="Worker cap for independent solves")
    seed: int = Field(default=0, description="Seed for iterative eigensolvers")

    # Tube conventions
    boundary_area: float = Field(default=1.0, description="Boundary torus area")
    coefficient_bound: int = Field(default=10_000)
    z_tolerance: float = Field(default=1e-12)
    mode_cap: int = Field(default=1_000_000)
    radius_slack: float = Field(default=2.0)

    # Solver defaults
    solver_n: int = Field(default=256)
    solver_grading: float = Field(default=2.0)
    solver_tol_eig: float = Field(default=1e-8)
    solver_max_refinements: int = Field(default=40)
    solver_eps0: Optional[float] = Field(default=None)
    solver_quadrature_order: int = Field(default=4)

    # Oracle defaults
    oracle_r_nodes: int = Field(default=64)
    oracle_grading: float = Field(default=2.0)
    oracle_points_per_period: int = Field(default=8)
    oracle_epsilon_fraction: float = Field(default=1.0 / 64.0)
    oracle_mass_scheme: Literal["lumped", "consistent", "blended"] = Field(default="blended")
    oracle_inner_bc: Literal["natural", "dirichlet"] = Field(default="natural")
    oracle_eigen_tol: float = Field(default=0.0)
    oracle_residual_tol: float = Field(default=1e-8)
    oracle_dense_limit: int = Field(default=1500)

    @field_validator("log")
    @classmethod
    def validate_log(cls, v: str) -> str:
        valid = ["error", "info", "debug"]
        if v.lower() not in valid:
            raise ValueError(f"TUBESPEC_LOG must be one of: {valid}")
        return v.lower()

    @field_validator("jobs")
    @classmethod
    def validate_jobs(cls, v: int) -> int:
        if v < 1:
            raise ValueError("jobs must be at least 1")
        return v

    @field_validator("boundary_area")
    @classmethod
    def validate_area(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("boundary_area must be positive")
        return v

    @property
    def lattice(self) -> LatticeConfig:
        """Get lattice configuration"""
        return LatticeConfig(
            coefficient_bound=self.coefficient_bound,
            z_tolerance=self.z_tolerance,
            mode_cap=self.mode_cap,
            radius_slack=self.radius_slack,
        )

    @property
    def solver(self) -> SolverConfig:
        """Get solver configuration"""
        return SolverConfig(
            n=self.solver_n,
            grading=self.solver_grading,
            tol_eig=self.solver_tol_eig,
            max_refinements=self.solver_max_refinements,
            eps0=self.solver_eps0,
            quadrature_order=self.solver_quadrature_order,
        )

    @property
    def oracle(self) -> OracleConfig:
        """Get oracle configuration"""
        return OracleConfig(
            r_nodes=self.oracle_r_nodes,
            grading=self.oracle_grading,
            points_per_period=self.oracle_points_per_period,
            epsilon_fraction=self.oracle_epsilon_fraction,
            mass_scheme=self.oracle_mass_scheme,
            inner_bc=self.oracle_inner_bc,
            eigen_tol=self.oracle_eigen_tol,
            residual_tol=self.oracle_residual_tol,
            dense_limit=self.oracle_dense_limit,
        )

    @property
    def logging(self) -> LoggingConfig:
        """Get logging configuration"""
        return LoggingConfig(level=self.log, file_path=self.log_file)


# Global configuration instance
_config: Optional[AppConfig] = None


def get_config() -> AppConfig:
    """Get the global configuration instance

    Returns:
        AppConfig: The application configuration
    """
    global _config
    if _config is None:
        _config = AppConfig()
    return _config


def set_config(config: Optional[AppConfig]) -> None:
    """Set the global configuration instance (useful for testing)

    Args:
        config: The configuration instance to set, or None to reload lazily
    """
    global _config
    _config = config
