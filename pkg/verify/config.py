"""
Validated configuration of a verification run.
"""
from dataclasses import dataclass, field
from typing import Optional

from omegaconf import DictConfig, OmegaConf

SUITES = (
    "orthonormality",
    "commutators",
    "casimir",
    "adjoint",
    "weights",
    "differential",
    "seminorms",
    "bounds",
    "constants",
    "transforms",
    "ft",
    "crossfamily",
)


@dataclass
class Tolerances:
    # exact-algebra identities
    exact: float = 1e-12
    # quadrature identities
    quadrature: float = 1e-10
    # finite differences and the Fourier eigenrelation
    numeric: float = 1e-8
    # ODE residuals by 5-point differences
    ode: float = 1e-6


@dataclass
class SuiteConfig:
    suite: str = "all"
    family: Optional[str] = None
    algebra: Optional[str] = None
    alpha: Optional[float] = None
    window: Optional[str] = None
    quad_order: Optional[int] = None
    # overrides every tier when set
    tol: Optional[float] = None
    tolerances: Tolerances = field(default_factory=Tolerances)
    seed: int = 42
    jobs: int = 1
    out: Optional[str] = None
    format: str = "table"
    trials: int = 100
    samples: int = 10000
    timings: bool = False
    p_max: int = 4
    rho_min: float = 0.1
    rho_max: float = 0.7

    def __post_init__(self):
        if self.suite != "all" and self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite}, expected one of {SUITES + ('all',)}")
        if self.format not in ("json", "csv", "table"):
            raise ValueError(f"unknown format {self.format}, expected json, csv or table")
        if self.jobs < 1:
            raise ValueError(f"jobs must be positive, got {self.jobs}")
        if self.tol is not None and not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.quad_order is not None and self.quad_order < 1:
            raise ValueError(f"quad_order must be positive, got {self.quad_order}")
        if not 0 < self.rho_min <= self.rho_max < 1:
            raise ValueError(
                f"decay profile needs 0 < rho_min <= rho_max < 1, "
                f"got [{self.rho_min}, {self.rho_max}]"
            )

    @property
    def suites(self):
        return SUITES if self.suite == "all" else (self.suite,)

    @property
    def rho_range(self):
        return (self.rho_min, self.rho_max)

    def tolerance(self, tier: str) -> float:
        if self.tol is not None:
            return self.tol
        return getattr(self.tolerances, tier)

    def to_container(self) -> dict:
        return OmegaConf.to_container(OmegaConf.structured(self), resolve=True)


def load_suite_config(config=None, **overrides) -> SuiteConfig:
    """
    Merges a (partial) config onto the schema; unknown keys and mistyped
    values are rejected by OmegaConf before the range checks run.
    """
    schema = OmegaConf.structured(SuiteConfig)
    if config is None:
        config = {}
    if isinstance(config, DictConfig):
        config = OmegaConf.to_container(config, resolve=True)
    merged = OmegaConf.merge(schema, config, overrides)
    return OmegaConf.to_object(merged)
