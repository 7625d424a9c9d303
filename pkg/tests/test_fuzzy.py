"""Membership geometry, rule base and inference properties of the FLC."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frachz.fuzzy import (
    LABELS,
    FuzzyEngine,
    MembershipSet,
    default_engine,
    mf_degrees,
    rule_table,
)

# diagonal rule base, one row per error label NL..PL, columns NL..PL
RULES_TRANSCRIBED = np.array([
    [-3, -3, -3, -3, -2, -1, 0],
    [-3, -3, -3, -2, -1, 0, 1],
    [-3, -3, -2, -1, 0, 1, 2],
    [-3, -2, -1, 0, 1, 2, 3],
    [-2, -1, 0, 1, 2, 3, 3],
    [-1, 0, 1, 2, 3, 3, 3],
    [0, 1, 2, 3, 3, 3, 3],
])

unit = st.floats(-1.0, 1.0, allow_nan=False)


@pytest.fixture(scope="module")
def eng():
    return FuzzyEngine()


# ------------------------------------------------------------- memberships


def test_seven_labels_on_unit_universe():
    ms = MembershipSet()
    assert ms.labels == LABELS and len(LABELS) == 7
    assert np.allclose(ms.centers, np.linspace(-1, 1, 7))
    assert ms.half_width == pytest.approx(1 / 3)


def test_degree_examples():
    ms = MembershipSet()
    assert np.allclose(mf_degrees(ms, 0.0), [0, 0, 0, 1, 0, 0, 0])
    assert np.allclose(mf_degrees(ms, 1 / 6), [0, 0, 0, 0.5, 0.5, 0, 0])
    assert np.allclose(mf_degrees(ms, 1.7), [0, 0, 0, 0, 0, 0, 1])  # clamped


@given(unit)
def test_degrees_partition_of_unity(x):
    d = mf_degrees(MembershipSet(), x)
    assert np.all(d >= 0) and np.all(d <= 1)
    assert np.count_nonzero(d > 1e-15) <= 2
    assert d.sum() == pytest.approx(1.0, abs=1e-12)


def test_adjacent_labels_cross_at_half():
    ms = MembershipSet()
    d = mf_degrees(ms, -5 / 6)  # midway between NL and NM
    assert d[0] == pytest.approx(0.5) and d[1] == pytest.approx(0.5)


# --------------------------------------------------------------- rule base


def test_rule_table_matches_transcription():
    assert np.array_equal(rule_table(), RULES_TRANSCRIBED)


def test_rule_table_closed_form_and_antisymmetry():
    t = rule_table()
    for i in range(-3, 4):
        for j in range(-3, 4):
            assert t[i + 3, j + 3] == max(-3, min(3, i + j))
            assert t[3 - i, 3 - j] == -t[i + 3, j + 3]


# --------------------------------------------------------------- inference


def test_infer_zero_at_origin(eng):
    assert eng.infer(0.0, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_infer_corner_positive_large(eng):
    # lone PL rule fires fully; centroid of the boundary-truncated triangle
    # is 8/9 analytically, quadrature agrees to ~2e-6
    assert eng.infer(1.0, 1.0) == pytest.approx(8 / 9, abs=1e-4)
    assert eng.infer(-1.0, -1.0) == pytest.approx(-8 / 9, abs=1e-4)


def test_infer_opposed_corner_cancels(eng):
    assert eng.infer(1.0, -1.0) == pytest.approx(0.0, abs=1e-12)


def test_inputs_clamped_to_universe(eng):
    assert eng.infer(1.7, 0.2) == eng.infer(1.0, 0.2)
    assert eng.infer(-3.0, 0.9) == eng.infer(-1.0, 0.9)


def test_small_error_produces_output(eng):
    # no dead plateau at the origin; exact interpolation here gives 0.05
    v = eng.infer(0.05, 0.0)
    assert v > 0
    assert v == pytest.approx(0.05, abs=1e-3)


@settings(max_examples=300, deadline=None)
@given(st.floats(-1.5, 1.5, allow_nan=False), st.floats(-1.5, 1.5, allow_nan=False))
def test_infer_antisymmetric_and_bounded(eng, a, b):
    u = eng.infer(a, b)
    assert abs(u) <= 1.0
    assert eng.infer(-a, -b) == pytest.approx(-u, abs=1e-9)


def test_infer_monotone_along_each_axis(eng):
    g = np.linspace(-1, 1, 81)
    for fixed in g:
        row = [eng.infer(e, fixed) for e in g]
        col = [eng.infer(fixed, de) for de in g]
        assert np.all(np.diff(row) >= -1e-9)
        assert np.all(np.diff(col) >= -1e-9)


def test_resolution_convergence(eng):
    dense = FuzzyEngine(resolution=100001)
    pts = [(1, 1), (0.5, 0.2), (0.13, -0.7), (-0.9, 0.4), (1, 0), (0.05, 0)]
    for e, de in pts:
        assert eng.infer(e, de) == pytest.approx(dense.infer(e, de), abs=1e-4)


def test_engine_rejects_coarse_quadrature():
    with pytest.raises(ValueError):
        FuzzyEngine(resolution=200)


def test_strengths_route_to_expected_labels(eng):
    s = eng.strengths(1.0, 1.0)
    assert np.allclose(s, [0, 0, 0, 0, 0, 0, 1])
    s = eng.strengths(0.05, 0.0)
    assert s[3] > 0 and s[4] > 0 and s[[0, 1, 2, 5, 6]].sum() == 0


# ----------------------------------------------------------------- surface


def test_surface_shape_and_antisymmetry(eng):
    S = eng.control_surface(21)
    assert S.shape == (21, 21)
    assert np.abs(S + S[::-1, ::-1]).max() < 1e-12
    assert S[10, 10] == pytest.approx(0.0, abs=1e-12)
    assert S[20, 0] == pytest.approx(0.0, abs=1e-12)
    assert S[20, 20] == pytest.approx(8 / 9, abs=1e-4)


def test_surface_rejects_degenerate_grid(eng):
    with pytest.raises(ValueError):
        eng.control_surface(1)


def test_default_engine_is_cached():
    assert default_engine() is default_engine()
