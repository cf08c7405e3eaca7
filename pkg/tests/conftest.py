import hypothesis.strategies as st
import numpy as np
from hypothesis import HealthCheck, settings

from mskit.series import LaurentSeries

settings.register_profile(
    "suite", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")

bounded_complex = st.complex_numbers(
    max_magnitude=3.0, allow_nan=False, allow_infinity=False
)


@st.composite
def laurent_series(draw, min_lo=-6, max_hi=6, max_width=9):
    lo = draw(st.integers(min_value=min_lo, max_value=max_hi))
    width = draw(st.integers(min_value=1, max_value=min(max_width, max_hi - lo + 1)))
    coeffs = draw(st.lists(bounded_complex, min_size=width, max_size=width))
    return LaurentSeries(lo, np.array(coeffs, dtype=np.complex128))


@st.composite
def analytic_series(draw, max_hi=6, max_width=7):
    lo = draw(st.integers(min_value=0, max_value=max_hi - 1))
    width = draw(st.integers(min_value=1, max_value=max(1, min(max_width, max_hi - lo + 1))))
    coeffs = draw(st.lists(bounded_complex, min_size=width, max_size=width))
    return LaurentSeries(lo, np.array(coeffs, dtype=np.complex128))
