"""Exact computations around Dynkin quivers, KLR algebras and type-A R-matrices."""

from .combinat import enumerate_kostant, enumerate_sequences, sequence_permute
from .klr import act, act_completed, act_word, generator_degree, verify_grading, verify_relations
from .qloop_a import build_fundamental, check_yang_baxter, pole_order, solve_normalized_R
from .quiver_ar import DynkinQuiver, HeightFunction, ar_quiver_dot, build_phi, default_height
from .root_system import apply_weyl_word, build_root_system, reflect
from .schur_weyl import (
    Bimodule,
    act_klr_twisted,
    act_uq,
    check_simple_pole,
    sigma_twist,
    verify_bimodule,
    verify_highest_weight,
)

__version__ = "0.1.0"
