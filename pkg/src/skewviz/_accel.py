"""Backend selection for the numeric kernels.

Hot loops in :mod:`skewviz._kernels` are written twice: once as plain
Python loops that numba compiles with ``@njit``, once as vectorised numpy.
Set ``SKEWVIZ_DISABLE_NUMBA=1`` to force the numpy path everywhere.

numba is imported lazily, on the first workload large enough to benefit,
so small inputs (the common interactive case) never pay the import or
compilation cost.
"""
import os
import types

_FALSY = {"", "0", "false", "no", "off"}

#: problem size (inner-loop iterations) below which numpy is always used
MIN_WORK = 200_000

_numba_state = None  # None: untried, False: unavailable, module otherwise


def numba_disabled():
    return os.environ.get("SKEWVIZ_DISABLE_NUMBA", "").strip().lower() not in _FALSY


def numba_available():
    global _numba_state
    if _numba_state is None:
        try:
            import numba
        except ImportError:  # pragma: no cover - numba is a declared dependency
            _numba_state = False
        else:
            _numba_state = numba
    return _numba_state is not False


def use_numba(work):
    """True when a kernel with ``work`` inner iterations should run compiled."""
    if numba_disabled() or work < MIN_WORK:
        return False
    return numba_available()


def backend_name():
    if numba_disabled() or not numba_available():
        return "numpy"
    return "numba"


class lazy_njit:
    """``numba.njit`` applied on first call instead of at import time.

    The undecorated function stays reachable as ``.py_func`` so tests can
    run the interpreted loop against the compiled one.
    """

    def __init__(self, fn=None, **options):
        self.options = {"cache": True, **options}
        self.py_func = fn
        self._compiled = None
        if fn is not None:
            self.__name__ = fn.__name__
            self.__doc__ = fn.__doc__

    def dispatcher(self):
        if self._compiled is None:
            if not numba_available():  # pragma: no cover
                self._compiled = self.py_func
            else:
                self._compiled = _numba_state.njit(**self.options)(self._rebound())
        return self._compiled

    def _rebound(self):
        # numba cannot type a lazy_njit global, so hand it a copy of the
        # function whose globals point at the helpers' real dispatchers
        fn = self.py_func
        scope = dict(fn.__globals__)
        for name in fn.__code__.co_names:
            dep = scope.get(name)
            if isinstance(dep, lazy_njit):
                scope[name] = dep.dispatcher()
        clone = types.FunctionType(fn.__code__, scope, fn.__name__,
                                   fn.__defaults__, fn.__closure__)
        clone.__module__ = fn.__module__
        clone.__qualname__ = fn.__qualname__
        return clone

    def __call__(self, *args, **kwargs):
        return self.dispatcher()(*args, **kwargs)


def njit(fn=None, **options):
    if fn is None:
        return lambda f: lazy_njit(f, **options)
    return lazy_njit(fn, **options)
