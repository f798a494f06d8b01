"""relmon: exact relation algebra mirrored in permutation and group subsets.

Binary relations on a finite index set, the group of eventually-translation
permutations of blocks x Z that realizes them as subsets, finite Cayley-table
groups with the inverse embedding, free-group double cosets, and scenario
reports reproducing the headline product-length computations.
"""

from .relations import (Relation, GraphOpSpec, alternating_chain, boolean_op,
                        constant, crown, fence, graph_op_eval, min_length_to_total,
                        named_graph, named_relation, residuals)
from .etperm import (EventualPermutation, distinguishing_witness, factorize,
                     identity, min_product_length, mover, sample, swap,
                     transfer, translation)
from .fingroup import (FiniteGroup, GroupSubset, Subgroup, cayley_embed,
                       coset_embed, graph_op_group, group_make, is_bi_invariant,
                       submonoid_closure, subgroups, subset_op)
from .words import (CosetUnion, Word, double_coset_normal, verify_counterexample,
                    word_multiply)
from .scenarios import (Claim, ScenarioReport, abc_report, asymmetry_report,
                        fence_report, layer_report, theorem_suite)

__version__ = "0.1.0"
