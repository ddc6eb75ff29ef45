import asyncio

import pytest

from nottingham_torsion.characters import char_act, char_eval, random_character, scalar_mul
from nottingham_torsion.equivalence import (ActionTable, CountMethod, LegacyCount, StrictEquivalenceOracle,
                                            UnionFind, WeakEquivalenceOracle, apartition_reduced_forms, bound_B,
                                            bound_parameters, classify_by_reduction, count_classes,
                                            count_order_p_classes, count_strict_classes_exhaustive,
                                            count_weak_classes, legacy_counts, partition_reduced_forms,
                                            power_conjugacy_oracle, power_conjugacy_predicate,
                                            power_conjugacy_sweep, strict_equiv_search, weak_equiv_search)
from nottingham_torsion.reduction import verify_witness
from nottingham_torsion.series import NottinghamElt, Prime, nott_compose
from nottingham_torsion.utils.errors import BudgetExceededError, DomainError, UsageError
from tests.conftest import char


@pytest.mark.parametrize("p, l, m, expected", [(2, 5, 15, 4), (3, 1, 4, 4), (2, 3, 6, 4), (3, 2, 7, 12),
                                               (2, 1, 2, 2)])
def test_bound_B(p, l, m, expected):
    assert bound_B(p, l, m) == expected


def test_bound_parameters():
    assert bound_parameters(2, 5, 15) == (2, 2)
    assert bound_parameters(2, 3, 6) == (2, 1)
    with pytest.raises(DomainError):
        bound_B(2, 2, 4)


def test_legacy_counts():
    assert legacy_counts(3, 4, LegacyCount.D_1M) == 4
    assert legacy_counts(3, 7, "d_2m_weak") == 4
    assert legacy_counts(3, 6, "d-2m-weak") == 6
    assert legacy_counts(3, 8, LegacyCount.D_2M_WEAK) == 12
    assert legacy_counts(5, 7, "d_m") == 4
    with pytest.raises(ValueError):
        legacy_counts(3, 4, "d_3m")


def test_union_find():
    union = UnionFind(range(5))
    assert union.union(0, 3)
    assert not union.union(3, 0)
    union.union(4, 1)
    assert union.same(0, 3) and not union.same(0, 1)
    assert union.groups() == [[0, 3], [1, 4], [2]]
    assert len(union) == 3


def test_strict_search_finds_identity_first():
    chi = char(3, {1: 1, 4: 3})
    witness = strict_equiv_search(chi, chi)
    assert witness.u.is_identity()


def test_strict_search_respects_the_digit_at_l():
    assert strict_equiv_search(char(3, {1: 1, 4: 3}), char(3, {1: 2, 4: 3})) is None


def test_search_returns_none_for_different_types():
    assert strict_equiv_search(char(3, {1: 1, 4: 3}), char(3, {1: 1, 5: 3})) is None
    with pytest.raises(UsageError):
        strict_equiv_search(char(3, {1: 1, 4: 3}), char(2, {1: 1}))


def test_budget_is_refused_not_truncated():
    chi = char(2, {5: 1, 15: 2})
    with pytest.raises(BudgetExceededError) as error:
        strict_equiv_search(chi, chi, budget=2 ** 14)
    assert error.value.cost == 2 ** 15


def _random_element(p, m, rng):
    return NottinghamElt.from_coefficients(p, [rng.randrange(p) for _ in range(m)])


def test_search_finds_a_witness_to_an_acted_character(rng):
    for p, l, m in ((2, 3, 7), (3, 1, 5), (3, 2, 6)):
        chi = random_character(p, l, m, rng)
        u = _random_element(p, m, rng)
        while char_eval(chi, u.unit) % p:
            u = _random_element(p, m, rng)
        target = char_act(u, chi)
        witness = strict_equiv_search(chi, target)
        assert witness is not None
        assert verify_witness(chi, target, witness.u)
        assert weak_equiv_search(chi, char_act(_random_element(p, m, rng), chi)) is not None


def test_weak_search_is_weaker_than_strict():
    chi = char(3, {1: 1, 4: 3})
    psi = char(3, {1: 1, 2: 3, 4: 3})
    assert weak_equiv_search(chi, psi) is not None
    assert strict_equiv_search(chi, psi) is not None
    assert weak_equiv_search(chi, scalar_mul(2, chi)) is None


def test_oracles_are_symmetric(rng):
    forms = [f.to_character() for f in partition_reduced_forms(2, 3, 7).classes[0].members]
    chi = random_character(2, 3, 7, rng)
    for psi in forms:
        assert (strict_equiv_search(chi, psi) is None) == (strict_equiv_search(psi, chi) is None)


def test_witnesses_compose():
    chi = char(3, {1: 1, 2: 3, 4: 3})
    middle = char(3, {1: 1, 4: 3})
    first = strict_equiv_search(chi, middle)
    target = char(3, {1: 1, 2: 6, 4: 3})
    second = strict_equiv_search(middle, target)
    assert first is not None and second is not None
    assert verify_witness(chi, target, nott_compose(second.u, first.u))


def test_async_search_matches_sync():
    chi, psi = char(3, {1: 1, 2: 3, 4: 3}), char(3, {1: 1, 4: 3})
    oracle = StrictEquivalenceOracle()
    assert asyncio.run(oracle.asearch(chi, psi)) == oracle.search(chi, psi)
    weak = WeakEquivalenceOracle()
    assert asyncio.run(weak.asearch(chi, psi)) == weak.search(chi, psi)


def test_explore_reports_pruning():
    chi = char(3, {1: 1, 4: 3})
    outcome = StrictEquivalenceOracle().explore(chi, char(3, {1: 2, 4: 3}))
    assert outcome.element is None
    assert outcome.search_space == 3 ** 4
    assert outcome.visited < outcome.search_space


@pytest.mark.parametrize("p, l, m, expected", [(2, 1, 2, 2), (2, 1, 3, 1), (3, 1, 3, 6), (3, 1, 4, 4),
                                               (3, 1, 5, 12)])
def test_partition_matches_the_bound_for_small_l(p, l, m, expected):
    report = partition_reduced_forms(p, l, m)
    assert report.class_count == expected == report.bound
    assert report.method is CountMethod.ORACLE_PARTITION
    assert all(len(c.members) == 1 for c in report.classes)


@pytest.mark.parametrize("p, l, m", [(2, 1, 2), (2, 1, 5), (3, 1, 4), (3, 1, 5)])
def test_canonical_reduction_agrees_with_the_oracle(p, l, m):
    assert count_classes(p, l, m, CountMethod.CANONICAL_REDUCE) == count_classes(p, l, m, "oracle-partition")


def test_canonical_reduction_needs_small_l():
    with pytest.raises(DomainError):
        classify_by_reduction(2, 3, 6)


def test_partition_witnesses_are_valid():
    report = partition_reduced_forms(2, 3, 6)
    assert report.class_count <= 4
    for cls in report.classes:
        assert cls.representative == min((f.to_character() for f in cls.members), key=lambda c: c.sort_key())
        for pair in cls.witnesses:
            assert verify_witness(pair.source, pair.target, pair.witness.u)


def test_partition_refuses_over_budget():
    with pytest.raises(BudgetExceededError):
        partition_reduced_forms(3, 2, 7, budget=1000)


def test_async_partition_is_independent_of_jobs():
    sync = partition_reduced_forms(3, 1, 4)
    one = asyncio.run(apartition_reduced_forms(3, 1, 4, jobs=1))
    two = asyncio.run(apartition_reduced_forms(3, 1, 4, jobs=2))
    assert one.classes == two.classes == sync.classes
    assert one.visited == two.visited == sync.visited


def test_action_table_orbit_contains_the_character():
    table = ActionTable(Prime(3), 4, 2 ** 10)
    chi = char(3, {1: 1, 4: 3}, 4)
    orbit, swept = table.orbit(chi)
    assert chi in orbit
    assert swept == 27
    assert table.element(0).is_identity()


def test_order_p_class_counts():
    assert count_order_p_classes(3, 4) == legacy_counts(3, 4, LegacyCount.D_M) == 2
    assert count_order_p_classes(5, 3) == 4
    with pytest.raises(DomainError):
        count_order_p_classes(3, 6)


def test_weak_and_strict_counts_for_type_two_seven():
    assert count_weak_classes(3, 2, 7) == legacy_counts(3, 7, LegacyCount.D_2M_WEAK) == 4
    assert count_strict_classes_exhaustive(3, 2, 7) == 3 * 4


def test_strict_sweep_matches_partition_for_l_one():
    assert count_strict_classes_exhaustive(3, 1, 4) == partition_reduced_forms(3, 1, 4).class_count


@pytest.mark.slow
@pytest.mark.parametrize("m, weak, strict", [(6, 6, 18), (8, 12, 12)])
def test_weak_and_strict_counts_for_type_two(m, weak, strict):
    assert count_weak_classes(3, 2, m) == legacy_counts(3, m, LegacyCount.D_2M_WEAK) == weak
    assert count_strict_classes_exhaustive(3, 2, m) == bound_B(3, 2, m) == strict


@pytest.mark.slow
def test_counterexample_pair_is_strictly_equivalent(counterexample_pair):
    chi, psi = counterexample_pair
    witness = strict_equiv_search(chi, psi)
    assert witness is not None
    assert verify_witness(chi, psi, witness.u)


@pytest.mark.slow
def test_counterexample_type_has_fewer_classes_than_the_bound():
    report = partition_reduced_forms(2, 5, 15)
    assert report.class_count < report.bound == 4


@pytest.mark.slow
def test_count_classes_three_two_seven():
    assert count_classes(3, 2, 7, CountMethod.CANONICAL_REDUCE) == 12
    assert count_classes(3, 2, 7, CountMethod.ORACLE_PARTITION) == 12


@pytest.mark.parametrize("p, l, m, n, expected", [(3, 1, 4, 4, True), (3, 1, 4, 2, False), (2, 3, 6, 3, False),
                                                  (2, 3, 7, 3, True)])
def test_power_conjugacy_predicate(p, l, m, n, expected):
    assert power_conjugacy_predicate(p, l, m, n) is expected


def test_power_conjugacy_oracle():
    chi = char(3, {1: 1, 4: 3})
    conjugate, witness = power_conjugacy_oracle(chi, 4)
    assert conjugate and verify_witness(chi, scalar_mul(4, chi), witness.u)
    assert power_conjugacy_oracle(chi, 2) == (False, None)
    assert power_conjugacy_oracle(char(2, {3: 1}), 3)[0] is False
    with pytest.raises(DomainError):
        power_conjugacy_oracle(chi, 3)


def test_power_conjugacy_sweep_agrees_with_predicate():
    for p, l, m in ((2, 1, 3), (2, 3, 6), (3, 1, 4)):
        cases = power_conjugacy_sweep(p, l, m, samples=8, seed=7)
        assert cases
        assert all(case.agrees for case in cases)
