"""Dynamic input-output economies with power-law memory.

Analytic Mittag-Leffler modal solutions of closed and open intersectoral
models, spectral dominance and admissibility analysis, and an independent
numerical fractional-calculus oracle that cross-checks every analytic
result.
"""

__version__ = "0.1.0"

from . import errors, matrixcore, specfun  # noqa: F401
