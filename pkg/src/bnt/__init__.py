"""Boolean network tomography: identifiability, localization and bounds."""

__version__ = "0.1.0"

from .errors import BNTError
from .pathmatrix import PathMatrix, indicator, paths_of, read_matrix, validate, write_matrix

__all__ = [
    "BNTError",
    "PathMatrix",
    "indicator",
    "paths_of",
    "read_matrix",
    "validate",
    "write_matrix",
    "__version__",
]
