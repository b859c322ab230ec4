"""Exact and certified computations for broken k-diamond partition numbers."""

from .errors import DomainError, InapplicableQuotient, PrecisionExhausted
from .intervals import BigInterval, pi_interval
from .qseries import (EtaQuotient, ExactSeries, PARTITIONS, delta_coeffs, delta_quotient,
                      eta_quotient_coeffs, euler_factor_series, partition_coeffs)
from .rademacher import (MainTerm, SussmanConstants, XShift, applicable, choose_truncation,
                         constants, error_bound, main_term, rademacher_eval, round_exact, x_shift)
from .special import a_hat, bessel_I, dedekind_sum
from .turan import (JensenPoly, TuranScanResult, is_hyperbolic, jensen, log_concave_at,
                    multiplicative_check, scan_minimal_shift, turan3_at)

__version__ = "0.1.0"
