import os

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dlalg import BACKEND, _kernels_py

from conftest import coefficients

try:
    from dlalg import _kernels as compiled
except ImportError:  # pragma: no cover - the pure build has no extension
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def _norm(c):
    return _kernels_py.norm(c)


terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), coefficients.map(_norm).filter(bool), max_size=6
)


def test_backend_selection():
    expected = "python" if os.environ.get("DLALG_PURE_PYTHON") == "1" or compiled is None else "cython"
    assert BACKEND == expected


@needs_compiled
@given(terms, terms)
def test_binary_kernels_agree(a, b):
    for name in ("add", "sub", "mul"):
        assert getattr(compiled, name)(a, b) == getattr(_kernels_py, name)(a, b)


@needs_compiled
@given(terms, coefficients, st.integers(0, 1), st.tuples(coefficients, coefficients))
def test_unary_kernels_agree(a, c, idx, point):
    assert compiled.scale(a, c) == _kernels_py.scale(a, c)
    assert compiled.partial(a, idx) == _kernels_py.partial(a, idx)
    assert compiled.evaluate(a, point) == _kernels_py.evaluate(a, point)


@needs_compiled
def test_integral_results_are_ints():
    from fractions import Fraction

    out = compiled.mul({(1, 0): Fraction(1, 2)}, {(0, 1): 2})
    assert out == {(1, 1): 1} and type(out[(1, 1)]) is int
