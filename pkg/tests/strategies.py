"""Hypothesis strategies shared by the unit tests."""

import numpy as np
from hypothesis import strategies as st

from anovatk.anova import GroupedSample

values = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@st.composite
def grouped_samples(draw, min_k=2, max_k=6, min_size=1, max_size=12):
    k = draw(st.integers(min_k, max_k))
    sizes = draw(st.lists(st.integers(min_size, max_size), min_size=k, max_size=k))
    if sum(sizes) - k < 1:
        sizes[0] += 1
    return GroupedSample(tuple(draw(st.lists(values, min_size=m, max_size=m)) for m in sizes))


@st.composite
def normal_samples(draw, min_k=2, max_k=6, min_size=2, max_size=12):
    """Seeded normal data; avoids the ties and degenerate spreads of raw floats."""
    seed = draw(st.integers(0, 2 ** 32 - 1))
    k = draw(st.integers(min_k, max_k))
    rng = np.random.default_rng(seed)
    sizes = rng.integers(min_size, max_size + 1, k)
    shifts = rng.normal(0, 1.5, k)
    return GroupedSample(tuple(rng.normal(mu, 1.0, m) for mu, m in zip(shifts, sizes)))
