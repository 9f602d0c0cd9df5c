"""Parameter derivatives of the associated Legendre functions.

Closed-form finite sums for ``dP_nu^m/dnu`` and ``dP_n^mu/dmu`` at integer
degree and order, the associated Legendre function of the second kind
``Q_n^m`` built from them, on-cut (Ferrers-type) values, and independent
reference evaluations to check all of it.
"""
from .deriv_mu import bridge_residual, dmu_p, psi_identity_residual
from .deriv_nu import dnu_p, dnu_p_cut, dnu_p_m0, dnu_p_negorder
from .kernel import (
    BIG50,
    DOUBLE,
    Big,
    Double,
    DomainError,
    EvalReport,
    IndexPair,
    LegendreError,
    OffCut,
    OnCut,
    OnCutError,
    OracleDomainError,
    RepId,
    UnsupportedRepresentation,
    off_cut,
    on_cut,
    parse_precision,
)
from .legendre_p import jacobi, legendre_p, legendre_p_exact, legendre_p_jacobi, legendre_p_negorder, parity_check
from .legendre_q import q, q_assembled, q_cut, q_negorder

__all__ = [
    "BIG50",
    "DOUBLE",
    "Big",
    "Double",
    "DomainError",
    "EvalReport",
    "IndexPair",
    "LegendreError",
    "OffCut",
    "OnCut",
    "OnCutError",
    "OracleDomainError",
    "RepId",
    "UnsupportedRepresentation",
    "off_cut",
    "on_cut",
    "parse_precision",
    "jacobi",
    "legendre_p",
    "legendre_p_exact",
    "legendre_p_jacobi",
    "legendre_p_negorder",
    "parity_check",
    "dnu_p",
    "dnu_p_cut",
    "dnu_p_m0",
    "dnu_p_negorder",
    "dmu_p",
    "bridge_residual",
    "psi_identity_residual",
    "q",
    "q_assembled",
    "q_cut",
    "q_negorder",
]
__version__ = "0.1.0"
