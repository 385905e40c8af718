"""Exact weight-two Eisenstein series, cusps of X_0(N) and cuspidal group orders."""
from .bernoulli import bernoulli2, gauss_sum, gen_bernoulli1
from .characters import (DirichletCharacter, ModQCharacter, UnitGroup, conductor, enumerate_eta,
                         primitive_characters, primitive_part, teichmuller_lift, unit_group)
from .cuspidal import (constant_term, cuspidal_order, delta_divisor, lambda_pm, n_chi,
                       period_order)
from .cusps import Cusp, enumerate_cusps, orbit_oracle, width
from .cyclotomic import CycNum
from .eisenstein import (build_E_chi, build_E_MLchi, dirichlet_factorization_check,
                         eigen_table_check, oldform_quadratic_check, sigma_chi)
from .lattice import Lattice, lattice_index
from .phi import PhiTerm, PhiVector, distribution_check, phi_expansion
from .qexp import QExpansion, degeneracy, gamma_p, hecke, op_minus, op_plus

__version__ = "0.1.0"
