import os

from . import ConfigError

DEFAULT_TOLERANCE = 1e-10
DEFAULT_MAX_DIM = 64
DEFAULT_TAIL_THRESHOLD = 1e-8
DEFAULT_MAX_STEP = 0.1


class SolverConfig:
    """Numerical settings shared by the condition checker, the tensor embedding and the shapers.

    Values given explicitly win over the environment, which wins over the defaults:

        PHOTON_SLH_TOL       tolerance of the eigen-relation and proportionality tests
        PHOTON_SLH_MAX_DIM   cap on the total dimension produced by embed_site
    """

    def __init__(self, tolerance=None, max_dim=None, stability_margin=0.0,
                 tail_threshold=DEFAULT_TAIL_THRESHOLD, max_step=DEFAULT_MAX_STEP):
        self.tolerance = tolerance if tolerance is not None else \
            self._from_env('PHOTON_SLH_TOL', float, DEFAULT_TOLERANCE)
        self.max_dim = max_dim if max_dim is not None else \
            self._from_env('PHOTON_SLH_MAX_DIM', int, DEFAULT_MAX_DIM)
        self.stability_margin = float(stability_margin)
        self.tail_threshold = float(tail_threshold)
        self.max_step = float(max_step)

        if not self.tolerance > 0:
            raise ConfigError(f"Tolerance must be positive, got {self.tolerance}")
        if self.max_dim < 1:
            raise ConfigError(f"Dimension cap must be at least 1, got {self.max_dim}")
        if self.stability_margin < 0:
            raise ConfigError(f"Stability margin must be nonnegative, got {self.stability_margin}")

    @staticmethod
    def _from_env(name, cast, default):
        raw = os.environ.get(name)
        if raw is None or raw.strip() == "":
            return default
        try:
            return cast(raw)
        except ValueError:
            raise ConfigError(f"Cannot parse environment variable {name}={raw!r}")

    def __repr__(self):
        return f"SolverConfig(tolerance={self.tolerance}, max_dim={self.max_dim}, " \
               f"stability_margin={self.stability_margin}, tail_threshold={self.tail_threshold}, " \
               f"max_step={self.max_step})"
