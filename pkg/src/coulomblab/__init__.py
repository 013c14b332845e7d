"""coulomblab: closed-form electrostatics, log-gas potential theory, and
Monte Carlo verification tools."""

from . import (  # noqa: F401
    balayage,
    conformal,
    domains,
    fluctuations,
    gas,
    riesz,
    specfun,
    surfaces,
)

__version__ = "0.1.0"
