"""equistark: exact verification of Stickelberger / Sinnott-Kurihara /
Fitting-ideal identities for abelian CM extensions of Q."""

from .abelian import (Character, FiniteAbelianGroup, Subgroup,
                      dual_characters, make_group, unit_group)
from .cyclo import CycloNumber, GaloisRingEmbedding, galois_ring, padic_valuations
from .extension import ExtensionDatum, extension_from_conductor
from .fitting import (ModulePresentation, cardinality, direct_sum_check,
                      dual_fitting_check, fitting_ideal,
                      index_equals_card_check, surjection_check)
from .fixtures import Fixture, FixtureError, load, serialize, validate
from .groupring import (FullRingAmbient, GroupRingElt, MinusContext, ZLattice,
                        assemble_from_char_values, char_eval, norm_element)
from .lvalues import (DirichletChar, DirichletEngine, PartialZetaProvider,
                      analytic_minus_h, b1, l0, l0_ST)
from .stickelberger import (PlaceSet, check_integrality, choose_t0,
                            containment_check, etnc_sets, factor_at_v_check,
                            odd_characters, sku_ideal, s_infty, s_ram,
                            theorem_b_hypothesis, theta,
                            theta_classical_oracle, theta_factorization_check,
                            torsionfree)
from .strongstark import (chi_fitting_valuation, chi_fitting_valuations, d_s,
                          lvalue_valuations, residue_module, strong_stark_check)
from .verify import (cn_trick_check, dk_verify, ray_sequence_check,
                     strong_stark_characters)

__version__ = "0.1.0"
