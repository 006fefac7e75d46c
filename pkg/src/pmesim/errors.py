"""Exception hierarchy shared by all pmesim modules."""


class PmesimError(Exception):
    """Base class for all pmesim errors."""


class DimensionMismatch(PmesimError):
    """Matrix or vector shapes are inconsistent with the declared dimension."""


class NonPositiveKossakowski(PmesimError):
    """Kossakowski matrix has a negative eigenvalue beyond tolerance."""


class InvalidDensityMatrix(PmesimError):
    """Density matrix violates trace, Hermiticity, or positivity."""


class DegenerateSteadyState(PmesimError):
    """Liouvillian has more than one eigenvalue within the null tolerance."""


class SingularGenerator(PmesimError):
    """Affine generator has no unique fixed point."""


class BlochNormExceeded(PmesimError):
    """Bloch vector lies outside the unit ball beyond tolerance."""


class DegenerateReference(PmesimError):
    """Monitor derivative requested at the reference state itself."""


class NoConvergence(PmesimError):
    """Monitor never reached the epsilon cutoff within the time horizon."""


class StepSizeUnderflow(PmesimError):
    """Adaptive integrator failed to make progress."""


class PlaneViolation(PmesimError):
    """Environment does not confine the dynamics to the r1-r2 plane."""


class ConfigError(PmesimError):
    """Scenario configuration file is malformed or inconsistent."""
