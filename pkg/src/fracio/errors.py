"""Exception types shared across the package."""


class FracioError(Exception):
    """Base class for all package-specific errors."""


class PoleError(FracioError, ValueError):
    """Gamma function evaluated at a nonpositive integer."""


class NonConvergenceError(FracioError, ArithmeticError):
    """No evaluation regime reached the requested tolerance."""


class RegimeError(FracioError, ValueError):
    """Asymptotic expansion requested where it is not valid."""


class SingularMatrixError(FracioError, ValueError):
    """Matrix is singular (or numerically indistinguishable from singular)."""

    def __init__(self, message, det=None):
        super().__init__(message)
        self.det = det


class DegenerateSpectrumError(FracioError, ValueError):
    """Two eigenvalues closer than the separation tolerance; the modal
    expansion needs a full eigenbasis of simple eigenvalues."""


class NotNonnegativeError(FracioError, ValueError):
    """Perron analysis requested for a matrix with negative entries."""


class NonDominantError(FracioError, ValueError):
    """The modulus-maximal eigenvalue is not real positive, so no
    Perron eigenpair exists."""


class IllConditionedBasisError(FracioError, ValueError):
    """Eigenvector basis too ill-conditioned to solve for coefficients."""


class DimensionError(FracioError, ValueError):
    """Operands have incompatible dimensions."""


class MissingInitialSpeedError(FracioError, ValueError):
    """An order above one requires the initial speed vector."""


class UnsupportedModelError(FracioError, ValueError):
    """Operation does not apply to this kind of model (e.g. an open-model
    solution fed to a closed-model-only routine)."""


class InstabilityError(FracioError, ArithmeticError):
    """Numerical integration blew up."""
