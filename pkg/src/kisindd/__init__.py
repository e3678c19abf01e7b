"""Exact computations for Kisin modules with tame descent data.

Submodules: ``fields`` and ``series`` (coefficients), ``matrix`` and
``decompose`` (series matrices, Smith form, Iwahori/parahoric reduction),
``weyl`` (extended affine Weyl group of GL_n), ``tame`` (types and
orientations), ``kisin`` (modules, shapes), ``hodge`` (positions at u = p),
``strata`` (Kottwitz-Rapoport poset) and ``cli``.
"""
from .decompose import (cartan_position, invert_series, iwahori_decompose, iwahori_reduce,
                        parahoric_reduce, smith_normal_form)
from .errors import *  # noqa: F401,F403
from .fields import QQ, FieldElement, FieldSpec
from .hodge import HodgeInput, hodge_position
from .kisin import (KisinModuleDD, build_diagram, change_eigenbasis, compute_type, isotypic_matrix,
                    lambda_from_mu, shape, stratum_membership, validate_descent)
from .matrix import SeriesMatrix
from .series import TruncSeries
from .strata import StrataPoset, export_poset, irreducible_components, strata_poset
from .tame import Orientation, TameType, orientations, parabolic_blocks, twisted_exponents
from .weyl import (AffinePermutation, BlockPartition, admissible_set, bruhat_leq, covers_below,
                   length, max_double_coset_rep, min_double_coset_rep, multiply,
                   parahoric_admissible_set)

__version__ = "0.1.0"
