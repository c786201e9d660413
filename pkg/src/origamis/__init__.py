"""Exact-arithmetic toolkit for square-tiled surfaces.

Origamis are pairs of permutations; the package computes their strata, Veech
groups, the action of affine diffeomorphisms on relative homology with integer
coefficients, invariant decompositions with D4 root systems, congruence-kernel
certificates, cylinder multitwists, spin parity, and invariant-supplement
feasibility.
"""

from .catalog import catalog, catalog_origami
from .errors import OrigamiError
from .homology import (EdgeChain, Subspace, boundary, canonical_form,
                       chain_space, holonomy, intersection_form,
                       marked_subspace, relation_lattice, standard_splitting)
from .origami import (Origami, Stratum, VertexClass, automorphisms,
                      isomorphisms, make_origami, sl2z_act, stratum_and_genus,
                      veech_group, vertex_classes)
from .affine import (AffineLift, automorphism_lift, elementary_substitution,
                     lift, lift_all, matrix_on, power_order)
from .invariants import (cylinders, index_parity, invariant_supplement,
                         multitwist, spin_parity, symplectic_basis,
                         transversal_pairing)
from .permutations import Perm
from .polygons import polygon_to_origami
from .rootsys import detect_d4, finite_closure, symplectic_subgroup
from .sl2z import Sl2zWord, congruence_generators, sl2z_word
from .structure import (breve_blocks, cocycle_growth, decompose_ew,
                        decompose_orn, isotypic_multiplicities_quaternion,
                        kernel_is_congruence, tau_character)

__all__ = [name for name in dir() if not name.startswith("_")]
