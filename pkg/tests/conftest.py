from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dlalg.polyring import Poly, VarRing

settings.register_profile(
    "dlalg", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("dlalg")

MODELS = Path(__file__).resolve().parent.parent / "models"

R2 = VarRing.euclidean(2)

coefficients = st.one_of(
    st.integers(-5, 5),
    st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4)),
)


@st.composite
def polys(draw, ring: VarRing = R2, max_exp: int = 2, max_terms: int = 4):
    keys = draw(st.lists(st.tuples(*[st.integers(0, max_exp)] * ring.nvars), max_size=max_terms, unique=True))
    terms = {}
    for k in keys:
        c = draw(coefficients)
        if c:
            terms[k] = c.numerator if isinstance(c, Fraction) and c.denominator == 1 else c
    return Poly(ring, terms)


@pytest.fixture
def models_dir() -> Path:
    return MODELS
