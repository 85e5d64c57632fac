"""Finite Gamma-rings: structure checks, map enumeration and exhaustive theorem verification."""

__version__ = "0.1.0"

from .abelian import (AdditiveMap, FinAbGroup, add, enumerate_additive_maps, enumerate_elements,
                      identity_map, make_additive_map, make_group, scale, zero_map)
from .errors import (CapExceeded, GammaError, ModulusOutOfRange, NotLeftDerivation, NotValidated,
                     NotWellDefined, ParseError, ShapeMismatch, TensorShapeMismatch)
from .gammaring import (GammaRing, build_gamma_ring, commutator, commutator_expansion_residual,
                        gamma_bracket, product, validate_associativity)
from .instances import (builtin_instances, direct_product, paper_example_analog, random_instance,
                        rect_matrix_instance, ring_as_gamma_ring)
from .maps import MapRole, classify_map, defect_map, enumerate_maps, image_in_center, is_scp
from .report import VerdictReport
from .structure import (center, is_central, is_commutative, is_ideal, is_prime, is_semiprime,
                        subgroup_generated)
from .theorems import (SearchConfig, TheoremId, VerifyOptions, search_counterexample, verify,
                       verify_all)
