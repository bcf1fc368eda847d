"""Hot kernels with a compiled backend and a pure-Python fallback.

The compiled module is used when it was built at install time; otherwise
the package silently runs on ``_pure``.  :func:`use_backend` switches at
runtime, which the tests and the benchmark rely on.
"""

from contextlib import contextmanager

from . import _pure

try:
    from . import _native
except ImportError:  # extension not built
    _native = None

INF = _pure.INF

_impl = _native if _native is not None else _pure


def available_backends():
    return ["native", "pure"] if _native is not None else ["pure"]


def current_backend():
    return "native" if _impl is _native else "pure"


def set_backend(name):
    global _impl
    if name == "pure":
        _impl = _pure
    elif name == "native":
        if _native is None:
            raise RuntimeError("compiled kernels are not built; reinstall with Cython available")
        _impl = _native
    else:
        raise ValueError(f"unknown backend {name!r}")


@contextmanager
def use_backend(name):
    previous = current_backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def greedy_scan(n, xu, xv, fu, fv):
    return _impl.greedy_scan(n, xu, xv, fu, fv)


def acyclic_subsets(n, lu, lv):
    return _impl.acyclic_subsets(n, lu, lv)


def brute_force_greedy(n, lu, lv, lc, fu, fv, fc, bottleneck):
    # 64-bit accumulators in the compiled path; huge costs stay in Python ints.
    if _impl is _native and sum(lc) + sum(fc) >= INF:
        return _pure.brute_force_greedy(n, lu, lv, lc, fu, fv, fc, bottleneck)
    return _impl.brute_force_greedy(n, lu, lv, lc, fu, fv, fc, bottleneck)


def dreyfus_wagner(n, dist, terminals):
    if _impl is _native:
        finite = [x for x in dist if x < INF]
        if finite and max(finite) * (n + len(terminals) + 1) >= INF:
            return _pure.dreyfus_wagner(n, dist, terminals)
    return _impl.dreyfus_wagner(n, dist, terminals)
