"""Exception types raised by :mod:`rrdirac`."""


class RRDiracError(ValueError):
    """Base class for domain errors."""


class FluxPointError(RRDiracError):
    """A quantity was requested at (or too close to) a flux position."""


class ContourError(RRDiracError):
    """A loop passes through a flux or cannot be resolved around one."""


class PhaseTransformError(RRDiracError):
    """The pointwise identity chi*u == z^k f_D(z) failed."""
