from .equivalence_schema import (ClassReport, CountMethod, LegacyCount, EquivalenceClass, PairWitness,
                                 PowerConjugacyCase)
from .search_kernel import SearchOutcome, ActionTable, prefix_search, pair_search, require_budget
from .strict_oracle import StrictEquivalenceOracle, strict_equiv_search
from .weak_oracle import WeakEquivalenceOracle, weak_equiv_search
from .union_find import UnionFind
from .classification import (bound_B, bound_parameters, legacy_counts, partition_reduced_forms,
                             apartition_reduced_forms, classify_by_reduction, count_classes, count_weak_classes,
                             count_strict_classes_exhaustive, count_order_p_classes, power_conjugacy_predicate,
                             power_conjugacy_oracle, power_conjugacy_sweep)
