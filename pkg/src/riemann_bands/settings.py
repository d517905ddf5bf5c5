"""Package-wide tolerances and defaults.

Values can be overridden through ``RIEMANN_BANDS_<FIELD>`` environment
variables, optionally loaded from a ``.env`` file.
"""

from __future__ import annotations

import logging
import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from riemann_bands.errors import ModelInvalid

logger = logging.getLogger(__name__)

ENV_PREFIX = "RIEMANN_BANDS_"


class Settings(BaseModel):
    """Numerical tolerances and analysis defaults.

    Parameters
    ----------
    root_tol : float
        Backward-residual tolerance for polynomial roots.
    cluster_tol : float
        Relative distance under which roots are merged into one cluster.
    zero_coeff_tol : float
        Relative magnitude under which coefficients are treated as zero.
    theta_grid : int
        Number of θ nodes in the GBZ sweep.
    mu : int
        Default boundary-condition index for OBC spectra.
    gbz_tol : float
        Tolerance on the modulus ratio ``|z_(μ)| / |z_(μ+1)|``.
    restarts : int
        Multistart count for inverse design.
    seed : int
        RNG seed for inverse design.
    chain_length : int
        Cell count for finite-chain validation.
    log_level : str
        Logging level used by the CLI.
    """

    root_tol: float = Field(default=1e-8, gt=0)
    cluster_tol: float = Field(default=1e-7, gt=0)
    zero_coeff_tol: float = Field(default=1e-12, gt=0)
    theta_grid: int = Field(default=256, ge=64)
    mu: int = Field(default=1, ge=1)
    gbz_tol: float = Field(default=1e-6, gt=0)
    restarts: int = Field(default=200, ge=1)
    seed: int = 7
    chain_length: int = Field(default=60, ge=2, le=200)
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, dotenv: bool = True) -> Settings:
        """Build settings from defaults plus environment overrides.

        Parameters
        ----------
        dotenv : bool
            Load a ``.env`` file from the working directory first.

        Returns
        -------
        Settings
            Validated settings.

        Raises
        ------
        ModelInvalid
            If an override does not validate.
        """
        if dotenv:
            load_dotenv()
        overrides: dict[str, str] = {}
        for name in cls.model_fields:
            value = os.environ.get(f"{ENV_PREFIX}{name.upper()}")
            if value is not None:
                overrides[name] = value
        if overrides:
            logger.debug("Settings overrides from environment: %s", sorted(overrides))
        try:
            return cls.model_validate(overrides)
        except ValidationError as exc:
            raise ModelInvalid(f"Invalid settings override: {exc}") from exc
