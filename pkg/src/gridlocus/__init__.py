"""Locally n x n grid graphs built from symplectic cosets over GF(n^2), with structural audits."""

from .appendix import (CompatibilitySystem, MuCandidate, compatible, enumerate_candidates, extend_search,
                       lemma_no_6clique_certificate)
from .bounds import BoundsReport, Regime, f_integrality_scan, theorem_bounds
from .drg import (IntersectionArray, SrgParams, antipodal_partition, distance_diagram, intersection_numbers,
                  quotient_graph, srg_check, srg_feasibility, srg_multiplicities)
from .errors import (CapacityError, CertificateError, DomainError, GridlocusError, HypothesisUnmetError,
                     InvalidParameterError, NotDistanceRegularError, NotLocallyGridError, ParseError)
from .field import FieldContext, context_for_n, make_field_context
from .graph import Graph, bfs_profile, is_rook_grid, maximal_cliques
from .graphio import from_graph6, read_graph, to_graph6, write_graph
from .isomorphism import are_isomorphic, find_isomorphism
from .locgrid import (clique_distance_audit, detect_locally_grid, five_by_five_audit, mu_clique_matching_audit,
                      parameter_bounds_audit, parity_audit, structural_census)
from .mu import divisor_profile_check, k2_identities_audit, mu_census, mu_graph
from .reference import corpus, halved_antipodal_johnson, johnson, rook_complement, rook_grid
from .symplectic import (SymVector, build_gamma, local_mu_crosscheck, mu_cycle_oracle, realize_divisor,
                         vertex_count)

__version__ = "0.1.0"
