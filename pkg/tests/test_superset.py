import pytest

from gxrepair.consistency import is_consistent
from gxrepair.datagraph import (
    DataGraph, MultisetPreference, SymbolOrder, WeightPreference, WeightSpec, is_subgraph, weight_of,
)
from gxrepair.gxpath import ConstraintSet, parse_node, parse_path
from gxrepair.repair import (
    SearchBudget, SupersetSpace, brute_preferred, brute_superset_repairs, decide_pi_mset, decide_pi_w,
    find_preferred_superset_repair, is_superset_repair, superset_repairs,
)

from instances import superset_instance


@pytest.fixture(scope="module")
def bounded(network):
    return SearchBudget(max_repair_size=len(network["a"]) + 3)


def test_weight_optimum_of_network(network):
    a, r, w = network["a"], network["r"], network["w"]
    res = find_preferred_superset_repair(a, r, WeightPreference(w))
    assert res.status == "repaired"
    assert res.extra_weight == 3
    assert is_superset_repair(a, res.repair, r)
    assert all(e[1] == "low" for e in res.repair.edges - a.edges)


def test_figure_repairs_are_repairs(network, bounded):
    a, r = network["a"], network["r"]
    reps = superset_repairs(a, r, bounded)
    assert network["b"] in reps and network["c"] in reps
    assert all(is_subgraph(a, h) and is_consistent(h, r) for h in reps)
    assert is_superset_repair(a, network["b"], r)
    assert is_superset_repair(a, network["c"], r)
    assert weight_of(network["b"], network["w"]) - weight_of(a, network["w"]) == 7


def test_non_minimal_superset_is_rejected(network):
    a, r, b = network["a"], network["r"], network["b"]
    bigger = b.add(edges=[("e", "low", "e")])
    assert is_consistent(bigger, r)
    assert not is_superset_repair(a, bigger, r)
    assert not is_superset_repair(a, a, r)


def test_decisions_on_network(network):
    a, r, w = network["a"], network["r"], network["w"]
    base = weight_of(a, w)
    assert decide_pi_w(a, r, w, base + 3) is True
    assert decide_pi_w(a, r, w, base + 2) is False
    order = network["order"]
    assert decide_pi_mset(a, r, order, "high", 10) is True


def test_consistent_input_returned_unchanged(network):
    res = find_preferred_superset_repair(network["b"], network["r"], WeightPreference(network["w"]))
    assert res.repair == network["b"] and res.extra_weight == 0


def test_data_only_violation_has_no_repair():
    g = DataGraph({"u": "p"})
    r = ConstraintSet((parse_node('="q"'),))
    res = find_preferred_superset_repair(g, r)
    assert res.repair is None and res.status == "none"
    assert decide_pi_w(g, r, WeightSpec(), 100) is False
    assert superset_repairs(g, r) == []


def _needs_fresh_node():
    g = DataGraph({"u": "p"})
    return g, ConstraintSet((parse_node('<a.[="q"]>'),))


def test_empty_budget_is_unknown():
    g, r = _needs_fresh_node()
    res = find_preferred_superset_repair(g, r)
    assert res.status == "unknown_beyond_budget" and res.repair is None
    assert decide_pi_w(g, r, WeightSpec(), 100) is None


def test_fresh_node_repair_matches_brute():
    g, r = _needs_fresh_node()
    budget = SearchBudget(max_new_nodes=1)
    res = find_preferred_superset_repair(g, r, None, budget, all_optima=True)
    assert res.status == "repaired"
    assert res.repair.data == {"u": "p", "new1": "q"}
    assert set(res.optima) == set(brute_superset_repairs(g, r, budget))
    for h in res.optima:
        assert is_superset_repair(g, h, r)


def test_fresh_names_avoid_existing_ids():
    g = DataGraph({"new1": "p"})
    space = SupersetSpace(g, ConstraintSet(()), SearchBudget(max_new_nodes=2))
    assert space.slots == ["_new1", "new2"]


def test_candidate_labels_include_constraint_labels():
    g = DataGraph({"u": "p"})
    r = ConstraintSet((parse_path("a + b"),))
    space = SupersetSpace(g, r)
    assert space.labels == ["a", "b"]
    res = find_preferred_superset_repair(g, r)
    assert len(res.repair.edges) == 1


@pytest.mark.parametrize("seed", range(60))
def test_search_matches_powerset(seed):
    g, r, w, order = superset_instance(seed)
    assert superset_repairs(g, r) == brute_superset_repairs(g, r)
    for crit in (None, WeightPreference(w), MultisetPreference(order)):
        mine = find_preferred_superset_repair(g, r, crit, all_optima=True)
        ref = brute_preferred(g, r, crit, "superset", all_optima=True)
        assert mine.repair == ref.repair, (seed, crit)
        assert set(mine.optima) == set(ref.optima), (seed, crit)


def test_mset_preference_with_total_order():
    g = DataGraph({"u": "p", "v": "q"})
    r = ConstraintSet((parse_node('="q" + <a> + <b>'),))
    cheap_a = SymbolOrder.chain("a", "b")
    res = find_preferred_superset_repair(g, r, MultisetPreference(cheap_a))
    assert {e[1] for e in res.repair.edges} == {"a"}
    res = find_preferred_superset_repair(g, r, MultisetPreference(SymbolOrder.chain("b", "a")))
    assert {e[1] for e in res.repair.edges} == {"b"}
