"""Exception hierarchy shared by all modules."""


class DNError(Exception):
    """Base class for every error raised by dnfuchs."""


class NotDivisible(DNError, ArithmeticError):
    """Right division by X failed: some monomial has no X factor."""


class MalformedOperator(DNError, ValueError):
    """Operator does not have the canonical DN shape."""


class DegreeOverflow(MalformedOperator):
    """A canonical coefficient polynomial exceeds its degree bound."""


class SizeExceeded(DNError, ValueError):
    """Matrix too large for the factorial-cost permutation expansion."""


class SingularSolve(DNError, ArithmeticError):
    """An exact linear system that should be invertible was singular."""


class InexactInput(DNError, TypeError):
    """An exact algorithm received floating point data."""


class RepeatedSingularity(DNError, ValueError):
    """The leading coefficient has a multiple root."""


class DegenerateSpectrum(DNError, ArithmeticError):
    """Two eigenvalues coincide within tolerance."""


class NullVector(DNError, ArithmeticError):
    """An eigenvector is isotropic for the anti-diagonal form."""


class NearSingularity(DNError, ValueError):
    """Evaluation point too close to a pole of the connection."""


class TruncationTooSmall(DNError, ValueError):
    """Series truncation order below what the computation needs."""


class StepUnderflow(DNError, ArithmeticError):
    """Adaptive integrator step size collapsed."""


class QuotientIllConditioned(DNError, ArithmeticError):
    """The constants line is not numerically separated from the rest."""


class ParseError(DNError, ValueError):
    """Input file could not be parsed."""


class MalformedMatrix(DNError, ValueError):
    """Matrix violates the DN shape constraints."""
