"""Exception hierarchy shared by all ``ejspec`` modules."""


class EjspecError(Exception):
    """Base class for every error raised by this package."""


class DomainError(EjspecError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class RegimeError(DomainError):
    """The operator parameter is in the wrong spectral regime (e.g. ``|alpha| = 1``)."""


class DimensionError(EjspecError, ValueError):
    """Vector or matrix sizes do not match."""


class PoleError(EjspecError, ArithmeticError):
    """Evaluation point coincides (within tolerance) with a pole."""


class SpectrumError(PoleError):
    """Evaluation point is too close to the spectrum of the operator."""


class StripError(DomainError):
    """Fourier series evaluated outside its strip of convergence."""


class SingularError(EjspecError, ArithmeticError):
    """A pivot or leading coefficient vanished."""


class ConvergenceError(EjspecError, RuntimeError):
    """An iterative or adaptive procedure hit its cap without converging."""


class NoConvergence(ConvergenceError):
    """Newton iteration did not converge."""
