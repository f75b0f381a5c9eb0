"""Exact digit-sum correlation densities and Cusick-type inequalities."""

from .bitword import count_blocks, lambda_of, pattern_positions, reflect
from .bounds import params_for, theorem_lower_bound, verify_main_theorem
from .delta import c, delta_dist, delta_from_phi, pair_sum, sufficient_condition
from .dyadic import Dyadic
from .fourier import RationalAngle, omega_direct, omega_matrix, psi_direct, psi_fourier
from .spectrum import Spectrum, argmax_set, phi, phi_naive

__version__ = "0.1.0"
