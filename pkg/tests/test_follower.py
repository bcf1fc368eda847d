import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from helpers import instances

from bmst.core import BmstInstance, Form, ObjectiveSpec, Scope, Tie, evaluate
from bmst.follower import bottleneck_response, feasible, greedy_forest, greedy_response, preference, respond

L1, L2, L3, L4 = 0, 1, 2, 3
F1, F2, F3, F4, F5 = 4, 5, 6, 7, 8


def test_fig1_response(fig1):
    assert greedy_response(fig1, {L1, L2, L4}) == {F5, F2}


def test_fig1_response_to_the_whole_leader_tree(fig1):
    assert greedy_response(fig1, {L1, L2, L3, L4}) == {F2}


def test_fig1_empty_choice(fig1):
    # the follower's own edges already form a spanning tree, so all five are kept
    assert greedy_response(fig1, set()) == {F1, F2, F3, F4, F5}


def test_greedy_forest_is_returned_even_when_it_does_not_span():
    inst = BmstInstance.build(3, [(0, 1, "L", 1, 0), (1, 2, "L", 1, 0), (0, 1, "F", 0, 0)])
    assert greedy_forest(inst, set()) == ({2}, False)
    assert greedy_response(inst, set()) is None
    assert greedy_response(inst, {1}) == {2}


def test_feasibility(fig1):
    assert feasible(fig1, set())
    assert all(feasible(fig1, X) for X in oracles.leader_choices(fig1))
    inst = BmstInstance.build(3, [(0, 1, "F", 0, 0), (1, 2, "L", 1, 0), (0, 2, "L", 1, 0)])
    assert not feasible(inst, set())  # vertex 2 has no follower edge
    assert feasible(inst, {1})


def test_fig1_bottleneck_follower(fig1):
    X = {L1, L2, L4}
    pess = bottleneck_response(fig1, X, Scope.OWN, Tie.PESSIMISTIC, Form.SUM)
    opt = bottleneck_response(fig1, X, Scope.OWN, Tie.OPTIMISTIC, Form.SUM)
    assert pess == {F4, F2} and evaluate(fig1, X, pess)[0] == 13
    assert opt == {F5, F2} and evaluate(fig1, X, opt)[0] == 9


def test_spanning_choice_gets_empty_response(fig1):
    inst = BmstInstance.build(3, [(0, 1, "L", 1, 5), (1, 2, "L", 1, 5), (0, 2, "F", 0, 0)])
    for scope, tie, form in itertools.product(Scope, (Tie.OPTIMISTIC, Tie.PESSIMISTIC), Form):
        assert bottleneck_response(inst, {0, 1}, scope, tie, form) == frozenset()


def test_preference_encodings(fig1):
    assert preference(fig1, Tie.FIXED) == fig1.pref
    assert preference(fig1, Tie.OPTIMISTIC) == (F5, F3, F4, F1, F2)
    assert preference(fig1, Tie.PESSIMISTIC) == (F3, F5, F4, F1, F2)


def _acyclic_pair(inst, rnd):
    X2 = []
    roots = list(range(inst.n))

    def find(x):
        while roots[x] != x:
            x = roots[x]
        return x

    for e in inst.leader_edges:
        a, b = find(inst.graph.ends[e][0]), find(inst.graph.ends[e][1])
        if a != b and rnd.random() < 0.7:
            roots[a] = b
            X2.append(e)
    X1 = [e for e in X2 if rnd.random() < 0.5]
    return X1, X2


@given(instances(max_n=8, max_leader=8, max_follower=7), st.randoms(use_true_random=False))
def test_monotone_in_the_leader_choice(inst, rnd):
    X1, X2 = _acyclic_pair(inst, rnd)
    assert greedy_forest(inst, X1)[0] >= greedy_forest(inst, X2)[0]


@settings(max_examples=80)
@given(instances(), st.randoms(use_true_random=False))
def test_greedy_minimises_follower_cost(inst, rnd):
    _, X = _acyclic_pair(inst, rnd)
    Y = greedy_response(inst, X)
    options = list(oracles.completions(inst, X))
    assert (Y is None) == (not options)
    if Y is not None:
        assert sum(inst.d[e] for e in Y) == min(sum(inst.d[e] for e in Z) for Z in options)
        assert inst.graph.is_spanning_tree(sorted(set(X) | Y))


@settings(max_examples=150)
@given(instances(), st.randoms(use_true_random=False), st.sampled_from(list(Scope)),
       st.sampled_from([Tie.OPTIMISTIC, Tie.PESSIMISTIC]), st.sampled_from(list(Form)), st.sampled_from(list(Form)))
def test_response_matches_definition(inst, rnd, scope, tie, leader_form, follower_form):
    _, X = _acyclic_pair(inst, rnd)
    spec = ObjectiveSpec(leader_form, follower_form, scope, tie)
    got = respond(inst, X, spec)
    want = oracles.response(inst, X, spec)
    assert (got is None) == (want is None)
    if got is not None:
        assert evaluate(inst, X, got, spec) == evaluate(inst, X, want, spec)


@given(instances(), st.randoms(use_true_random=False))
def test_fixed_tie_is_the_plain_scan(inst, rnd):
    _, X = _acyclic_pair(inst, rnd)
    for form in Form:
        spec = ObjectiveSpec(Form.SUM, form, Scope.OWN, Tie.FIXED)
        assert respond(inst, X, spec) == oracles.response(inst, X, spec)
