"""Exception hierarchy shared by all frontspec modules."""


class FrontspecError(Exception):
    """Base class for every error raised by the package."""


class DomainError(FrontspecError, ValueError):
    """Input outside the admissible parameter domain."""


class BranchTrackingError(FrontspecError):
    """Newton polishing of a root branch failed to converge."""


class DegeneracyError(FrontspecError):
    """Two equilibria collided, or the discriminant has the wrong sign."""


class PoleError(FrontspecError, ValueError):
    """Evaluation too close to a pole of the Huxley profile."""


class SectorError(FrontspecError):
    """eps * A_ren left the sector where the holomorphic extension is valid."""


class NumericError(FrontspecError):
    """An iterative numerical method stagnated."""


class WindowError(FrontspecError, ValueError):
    """Fit window for a decay measurement is unusable."""


class TrackingError(FrontspecError):
    """A snapshot does not cross the tracking level exactly once."""


class InstabilityError(FrontspecError):
    """Time integration blew up."""

    def __init__(self, message, step):
        super().__init__(message)
        self.step = step


class ConfigError(FrontspecError, ValueError):
    """Run configuration failed validation."""
