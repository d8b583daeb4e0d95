"""Exact q-series engine and 5-adic congruence verifier.

The package expands the eta quotients and Eisenstein combinations of a
congruence family over Gamma_0(10) as exact integer q-series, realises
the twisted U_5 operators on the ring of fractions p(y)/(1+5y)^n, and
mechanically verifies the identities, valuation patterns, and congruence
tables the family rests on.
"""

from .etaq import Cusp, EtaQuotient, enumerate_cusps, ligozat_order, \
    newman_check, order_table
from .localring import LocalizedElement, membership_v, membership_w, \
    phi, pi0, pi1, recover, theta
from .series import QSeries, e2_series, eta_product, qpochhammer
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "Cusp", "EtaQuotient", "LocalizedElement", "QSeries", "e2_series",
    "enumerate_cusps", "eta_product", "ligozat_order", "membership_v",
    "membership_w", "newman_check", "order_table", "phi", "pi0", "pi1",
    "qpochhammer", "recover", "run_suite", "theta", "__version__",
]
