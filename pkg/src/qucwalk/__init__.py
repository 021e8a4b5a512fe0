"""Grover walks on quadratic unitary Cayley graphs.

Exact spectra over cyclotomic fields, periodicity and period, and perfect
state transfer, each cross-checked against direct simulation.
"""

from .classify import (
    ClassificationReport,
    classify_report,
    compute_period,
    is_periodic,
    paper_period,
    paper_periodic,
    paper_pst,
    pst_decide,
)
from .cyclotomic import AngleRational, CycNumber, RationalPoly, chebyshev_T, cyclotomic_poly, recognize_cos_angle
from .errors import ConsistencyError, DomainError, NumericError
from .grover import build_operators, evolve, vertex_state
from .spectra import discriminant_spectrum, graph_spec, lambda_charsum, lambda_closed, spectrum_of

__version__ = "0.1.0"
