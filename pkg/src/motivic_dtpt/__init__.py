"""Motivic DT/PT partition functions of framed toric quivers.

Exact Laurent-polynomial coefficients in L^(1/2), truncated quantum-torus
series, the quivers attached to partitions of the strip polygon, their
affine root systems and chambers, and the generating functions built from
them.
"""

from .errors import DTPTError
from .motive import L, L_HALF, ONE, ZERO, MotiveLaurent, gl_motive, gl_motive_vir
from .torus import (PairingMatrix, STSeries, TruncationPolicy, TwistedSeries,
                    binomial_factor, scale_variable, series_div, to_sT_coordinates,
                    twisted_mul)
from .quiver import (CurveProfile, Partition, Quiver, all_partitions, build_quiver,
                     curve_profile, cyclic_derivative, enumerate_partitions,
                     euler_ringel_form, parse_partition)
from .roots import (EpsRational, Root, StabilityParam, chamber_split, enumerate_roots,
                    parse_zeta, standard_zetas)
from .series import (ChamberSeriesRequest, VerificationReport, a_alpha_factor,
                     chamber_factor_series, closed_rank1_forms, framed_partition_function,
                     points_series, pt_dt, universal_series, verify_theorem, z_alpha_r)
from .plethystic import EulerProduct, euler_product_decompose, motive_power, plethystic_exp

__version__ = "0.1.0"
