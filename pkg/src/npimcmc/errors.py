"""Typed errors shared across the package."""


class NpimcmcError(Exception):
    """Base class for all package errors."""


class PreconditionViolation(NpimcmcError):
    """An operation was called outside its documented precondition."""


class InvalidValue(NpimcmcError):
    """NaN/Inf real admitted where a finite value is required."""


class NoSupportedInstance(NpimcmcError):
    """The state has no instance in the support of the target density."""


class GradientUnsupported(NpimcmcError):
    """The model does not support gradient evaluation."""


class StepCrossesSupportBoundary(NpimcmcError):
    """A finite-difference probe left the support of the target density."""


class RejectionBudgetExceeded(NpimcmcError):
    """Rejection sampling exceeded its attempt budget (degenerate eta?)."""


class DimensionCapExceeded(NpimcmcError):
    """The extension loop passed the configured dimension cap."""


class InitialTraceOutOfSupport(NpimcmcError):
    """A sampler step was started from a trace outside the support."""


class SliceInvalid(NpimcmcError):
    """Slice called on a state whose instance is not strictly below the top dimension."""


class InverseUnavailable(NpimcmcError):
    """Direction wrapping requires an implemented inverse."""


class SpecValidationError(NpimcmcError):
    """An experiment spec file failed validation."""
