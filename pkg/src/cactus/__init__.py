"""Cactus groups: presentations, homomorphisms, finite quotients and their
lower central series."""

__version__ = "0.1.0"

from .words import Word, free_reduce, left_normed_commutator, cyclic_canonical, hall_basic_commutators, parse_word, format_word
from .presentations import (
    Presentation,
    abelianization,
    class_truncate,
    counts_closed_form,
    minimal_cactus,
    pq_to_min,
    smith_normal_form,
    standard_cactus,
    thmD_quotient,
)
from .groups import DihedralElem, FiniteGroupTable, FreeProdZ2Elem, Perm, dihedral_mul, freeprod_reduce, sym_generator, wreath_group
from .cosets import CosetCapExceeded, CosetTable, EnumConfig, group_order, todd_coxeter
from .permstruct import BSGS, LcsReport, isomorphic, layer_rank, lower_central_series, normal_closure, schreier_sims
from .homs import CheckReport, GroupHom, hom_check, hom_count, qn_consequence_check, surjectivity_check
