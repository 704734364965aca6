"""Representation varieties, decompositions and moduli for gentle algebras."""

from .catalog import corpus, cyclic, double_loop, kronecker, linear, one_loop, star3
from .circular import (
    CycleShape,
    build_M0,
    circular_blocks,
    closure_leq,
    count_points,
    degeneration_path,
    dim_comp,
    is_rank_sequence,
    leq,
    maximal_rank_sequences,
)
from .errors import BiserialError
from .formats import load_quiver, parse_quiver, print_quiver, rep_from_json, rep_to_json
from .krull_schmidt import Summand, decompose, end_ring, is_indecomposable, is_isomorphic
from .linalg import GF, QQ, Matrix
from .quiver import (
    Arrow,
    BoundQuiver,
    DimVector,
    Path,
    Quiver,
    Relation,
    Weight,
    check_complete_gentle,
    check_gentle,
    check_special_biserial,
    complete_gentle_closure,
    completion,
    effective_cycles,
)
from .representation import Representation, direct_sum, hom_dim, hom_space
from .repvar import ComponentDescriptor, components, dim_component, presentation, sample_generic
from .stability import check_stability, moduli_structure, theta_stable_decomposition
from .strings_bands import BandWord, StringWord, band_module, enumerate_bands, enumerate_strings, identify, string_module

__version__ = "0.1.0"
