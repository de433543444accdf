"""Exact inequality systems for the univariant quantum marginal problem.

The pipeline: enumerate walls and extremal edges of the composed-spectrum
subdivision (chambers), specialize Schubert calculus along an edge to get
candidate inequalities (schubert, engine), cut the list down to an
irredundant system with exact rational LPs (lp, polytope), and cross-check
against an independent symmetric-group oracle (symgroup) and a numerical
density-matrix sampler (sampler).
"""

__version__ = "0.1.0"

from .spectra import Spectrum, SystemFormat  # noqa: F401
from .engine import (GenerationOptions, InequalitySystem,  # noqa: F401
                     MarginalInequality, generate_system)
from .polytope import check_membership, reduce_system  # noqa: F401
