"""DN differential operators from almost triangular matrices: exact
construction and reconstruction, spectral data of the associated
connection, and numerical monodromy with its polarization."""

__version__ = "0.1.0"

from .dn import DNMatrix, build_L_infinity, reconstruct  # noqa: E402
from .errors import DNError  # noqa: E402
from .monodromy import monodromy_report, solve_polarization  # noqa: E402
from .spectral import analyze_spectrum, eigendecompose  # noqa: E402
from .weyl import WeylElement, to_canonical  # noqa: E402

__all__ = [
    "__version__",
    "DNMatrix",
    "DNError",
    "WeylElement",
    "build_L_infinity",
    "reconstruct",
    "to_canonical",
    "eigendecompose",
    "analyze_spectrum",
    "monodromy_report",
    "solve_polarization",
]
