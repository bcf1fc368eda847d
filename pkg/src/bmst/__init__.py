"""Bilevel minimum spanning tree toolkit.

A leader buys an acyclic set of its own edges; the follower then completes
it to a spanning tree with its edges, greedily minimising its own cost.
The package offers exact, FPT and approximation solvers, instance
transformations, constructive generators and a command-line front end.
"""

from .core import (
    BmstInstance,
    BudgetExceeded,
    CapExceeded,
    Form,
    Infeasible,
    InstanceError,
    Multigraph,
    ObjectiveSpec,
    Owner,
    ParseError,
    Scope,
    SolveReport,
    SUM_SUM,
    Tie,
    evaluate,
    load_fixture,
    parse_instance,
    read_instance,
    write_instance,
)
from .follower import bottleneck_response, greedy_response, respond
from .solvers import (
    bmstr_decide,
    enumerate_enforceable,
    solve_bn_sum,
    solve_bnbn_pess,
    solve_bruteforce,
    solve_uniform_fpt,
)
from .approx import approx_contraction, approx_fpt2
from .reductions import pull_back
from .generators import TerminalInstance, parse_stf, write_stf

__version__ = "0.1.0"

__all__ = [
    "BmstInstance",
    "BudgetExceeded",
    "CapExceeded",
    "Form",
    "Infeasible",
    "InstanceError",
    "Multigraph",
    "ObjectiveSpec",
    "Owner",
    "ParseError",
    "Scope",
    "SolveReport",
    "SUM_SUM",
    "Tie",
    "evaluate",
    "load_fixture",
    "parse_instance",
    "read_instance",
    "write_instance",
    "bottleneck_response",
    "greedy_response",
    "respond",
    "bmstr_decide",
    "enumerate_enforceable",
    "solve_bn_sum",
    "solve_bnbn_pess",
    "solve_bruteforce",
    "solve_uniform_fpt",
    "approx_contraction",
    "approx_fpt2",
    "pull_back",
    "TerminalInstance",
    "parse_stf",
    "write_stf",
]
