"""Direct-sum decompositions of finite join-semilattices.

A finite semilattice is given by its join table.  The package decides when
two subsemilattices form a direct sum around a base element, converts
between such sums and pairs of complementary factor congruences, factors
structures into indecomposables and enumerates small semilattices.
"""

from .core import (ElementMap, Product, Semilattice, canonical_form, chain, direct_product,
                   is_isomorphic, isomorphism_check, partial_meet, product_of, subsemilattice,
                   validate_semilattice)
from .congruence import (Congruence, CongruencePair, all_congruences,
                         complementary_factor_pairs, is_congruence, quotient)
from .directsum import (AXIOMS, AxiomReport, SummandPair, build_isomorphism, check_axioms,
                        direct_sums, eval_phi, is_direct_sum, map_I, map_K, projections)
from .bounded import check_one_case, check_zero_case
from .factorize import (Factorization, factor_congruence_boolean_check, factorize,
                        refine_join)
from .enumeration import Witness, enumerate_semilattices, independence_search
from .io import emit_dot, emit_slat, parse_slat
from .errors import SemilatticeError

__version__ = "0.1.0"
