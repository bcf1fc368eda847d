import random

import pytest
from hypothesis import given, settings

import oracles
from helpers import instances, random_instance

from bmst.core import BmstInstance, BudgetExceeded, InstanceError, Owner, SolveReport, SUM_SUM
from bmst.reductions import (
    REDUCTIONS,
    chain,
    identity,
    in_efall,
    in_efconn,
    in_efforest,
    in_efmatching,
    in_elconn,
    in_elforest,
    pull_back,
    to_efall,
    to_efconn,
    to_efforest,
    to_efmatching,
    to_elconn,
    to_elconn_efmatching,
    to_eftree,
    to_uniform,
)
from bmst.solvers import solve_bruteforce

CLASSES = {
    "efconn": in_efconn,
    "elconn": in_elconn,
    "efforest": in_efforest,
    "elforest": in_elforest,
    "efmatching": in_efmatching,
    "efall": in_efall,
}

# class memberships each reduction keeps (a source in the class gives a target in it)
PRESERVES = {
    "efconn": {"efconn", "elconn", "efforest", "elforest", "efall"},
    "elconn": {"efconn", "elconn", "efforest", "elforest", "efmatching"},
    "efforest": {"efconn", "elconn", "efforest", "elforest", "efmatching"},
    "efmatching": {"elconn", "efforest", "elforest", "efmatching"},
    "efall": {"efconn", "elconn", "elforest", "efall"},
    "uniform": {"efconn", "elconn", "elforest"},
}

# what each reduction establishes
ESTABLISHES = {
    "efconn": in_efconn,
    "elconn": in_elconn,
    "efforest": in_efforest,
    "efmatching": in_efmatching,
    "efall": in_efall,
    "uniform": lambda t: all(t.c[e] == 1 for e in t.leader_edges),
}


def fresh(mapping):
    return [e for e, src in enumerate(mapping.provenance) if src is None]


def test_efconn_joins_three_follower_components():
    inst = BmstInstance.build(4, [(0, 1, "F", 1, 1), (1, 2, "L", 2, 0), (2, 3, "L", 1, 1), (0, 3, "L", 3, 1)])
    target, mapping = to_efconn(inst)
    added = fresh(mapping)
    assert len(added) == 2
    M = sum(max(c, d) for c, d in zip(inst.c, inst.d)) + 1
    assert all(target.c[e] == target.d[e] == M for e in added)
    assert mapping.threshold == M and mapping.relation == f"equal-below {M}"
    assert in_efconn(target)


def test_elconn_attaches_an_isolated_vertex():
    inst = BmstInstance.build(3, [(0, 1, "L", 1, 0), (1, 2, "F", 0, 0)])
    target, mapping = to_elconn(inst)
    (e,) = fresh(mapping)
    assert target.owner[e] is Owner.LEADER and set(target.graph.ends[e]) == {0, 2}


def test_class_members_map_to_themselves(fig1):
    for reduce in (to_efconn, to_efforest):
        target, mapping = reduce(fig1)
        assert target == fig1 and mapping.name == "identity"


def test_efforest_keeps_only_the_greedy_forest():
    inst = BmstInstance.build(3, [(0, 1, "F", 0, 0), (1, 2, "F", 0, 0), (0, 2, "F", 0, 1), (0, 2, "L", 1, 0)])
    target, mapping = to_efforest(inst)
    assert len(target.follower_edges) == 2 and in_efforest(target)
    assert [mapping.provenance[e] for e in target.follower_edges] == [0, 1]


def test_efmatching_on_fig1(fig1):
    target, mapping = to_efmatching(fig1)
    assert target.n == fig1.n + 5 and mapping.added_vertices == 5
    new_leader = [e for e in fresh(mapping) if target.owner[e] is Owner.LEADER]
    assert len(new_leader) == 5 and all(target.c[e] == 0 for e in new_leader)
    assert in_efmatching(target)


def test_efmatching_rejects_follower_cycles():
    inst = BmstInstance.build(2, [(0, 1, "F", 0, 0), (0, 1, "F", 0, 0)])
    with pytest.raises(InstanceError):
        to_efmatching(inst)


def test_matching_is_left_alone():
    inst = BmstInstance.build(3, [(0, 1, "F", 0, 0), (1, 2, "L", 1, 0)])
    assert to_efmatching(inst)[0] == inst


def test_efall_on_fig1(fig1):
    target, mapping = to_efall(fig1)
    added = fresh(mapping)
    M = sum(fig1.d) + 1
    assert len(added) == 4 and all(target.d[e] == M for e in added)
    assert [target.c[e] for e in added] == [fig1.c[e] for e in fig1.leader_edges]


def test_efall_skips_shadowed_leader_edges():
    inst = BmstInstance.build(2, [(0, 1, "L", 3, 0), (1, 0, "F", 3, 1)])
    assert to_efall(inst)[0] == inst
    with pytest.raises(InstanceError):
        to_efall(BmstInstance.build(2, [(0, 1, "L", 3, 0)]))


def test_uniform_replaces_a_leader_edge_by_a_unit_path():
    inst = BmstInstance.build(2, [(0, 1, "L", 3, 0), (0, 1, "F", 5, 0)])
    target, mapping = to_uniform(inst)
    assert target.n == 4
    assert [target.c[e] for e in target.leader_edges] == [1, 1, 1]
    # path edges trace back to the source edge; only the two hangers are fresh
    assert all(mapping.provenance[e] == 0 for e in target.leader_edges)
    assert [target.owner[e] for e in fresh(mapping)] == [Owner.FOLLOWER] * 2
    assert solve_bruteforce(target).leader_value == solve_bruteforce(inst).leader_value == 3


def test_uniform_contracts_free_leader_edges_and_respects_the_budget():
    inst = BmstInstance.build(3, [(0, 1, "L", 0, 0), (1, 2, "L", 1, 0), (0, 2, "F", 4, 0), (1, 2, "F", 4, 0)])
    target, _ = to_uniform(inst)
    assert target.n == 2
    with pytest.raises(BudgetExceeded):
        to_uniform(BmstInstance.build(2, [(0, 1, "L", 50, 0), (0, 1, "F", 0, 0)]), budget=10)


def test_identity_pull_back_is_a_no_op(fig1):
    report = solve_bruteforce(fig1)
    back = pull_back(identity(fig1), report)
    assert (back.choice, back.response, back.leader_value) == (report.choice, report.response, 9)


def admissible(rng, name):
    while True:
        cmax = 2 if name == "uniform" else 4
        inst = random_instance(rng, n=rng.randint(2, 6), mL=rng.randint(0, 5), mF=rng.randint(0, 5), cmax=cmax)
        if name == "efmatching" and not in_efforest(inst):
            continue
        if name in ("efall", "uniform") and not in_efconn(inst):
            continue
        return inst


@pytest.mark.parametrize("name", sorted(REDUCTIONS))
def test_structure_value_and_preservation(name):
    rng = random.Random(name)
    for _ in range(60):
        inst = admissible(rng, name)
        target, mapping = REDUCTIONS[name](inst)
        assert ESTABLISHES[name](target)
        for cls in PRESERVES[name]:
            if CLASSES[cls](inst):
                assert CLASSES[cls](target), cls
        opt = oracles.bilevel_opt(inst, SUM_SUM)
        best = solve_bruteforce(target)
        assert best.leader_value == opt
        assert pull_back(mapping, best).leader_value == opt


@settings(max_examples=60, deadline=None)
@given(instances())
def test_chains(inst):
    opt = solve_bruteforce(inst).leader_value
    for build, check in ((to_eftree, lambda t: in_efforest(t) and in_efconn(t) and in_elconn(t)),
                         (to_elconn_efmatching, lambda t: in_efmatching(t) and in_elconn(t))):
        target, maps = build(inst)
        assert check(target)
        best = solve_bruteforce(target)
        assert best.leader_value == opt
        back = pull_back(maps, best)
        assert isinstance(back, SolveReport) and back.leader_value == opt


def test_chain_by_name(fig1):
    target, maps = chain(fig1, ["efall", "efforest"])
    assert len(maps) == 2 and in_efforest(target)
