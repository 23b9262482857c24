"""Centrally symmetric triangulated surfaces, 3-manifolds and polyhedral maps."""

from .complex import (Complex, PolyhedralMap, euler_characteristic, face_vector,
                      is_closed_pseudomanifold, is_combinatorial_3manifold,
                      is_combinatorial_surface, is_connected, is_polyhedral_map,
                      link, orientation_assignment)
from .symmetry import (Involution, admissible_face_orbits, apply,
                       is_centrally_symmetric, orbit_closure)
from .homology import (HomologyGroups, boundary_matrix, homology, is_orientable,
                       smith_normal_form)
from .canon import CanonicalForm, are_isomorphic, canonical_form
from .enumerate import EnumerationResult, enumerate_cs, search_statistics
from .construct import (CsMap, GluingError, GluingSpec, cs_connected_sum, dual_map,
                        hexagon_genus_surface, pentagon_genus_surface,
                        quad_genus_surface, tightness_check)

__version__ = "0.1.0"
