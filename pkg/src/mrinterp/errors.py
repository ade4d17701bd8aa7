"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Array shapes are inconsistent with each other or with a declared dimension."""


class AllZeroError(ValueError):
    """A coefficient vector is identically zero where a nonzero one is required."""


class ZeroSnapshotError(ValueError):
    """The only available snapshot has (numerically) zero norm."""


class SingularSystemError(ValueError):
    """The parameter sits on (or within tolerance of) a resonance of the system matrix."""


class AtPoleError(ValueError):
    """Evaluation was requested at (or within tolerance of) a pole."""


class NodePointError(ValueError):
    """A calibration or evaluation point coincides with an interpolation node."""


class RankDeficientError(ValueError):
    """A requested subspace dimension exceeds the numerical rank of the data."""


class EmptyApproxError(ValueError):
    """An approximate pole set is empty where at least one pole is required."""


class ConfigError(ValueError):
    """An experiment configuration is malformed or inconsistent."""
