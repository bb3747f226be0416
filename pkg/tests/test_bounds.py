import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supneg import library, measures
from supneg.bounds import (
    SWEEP_COLUMNS,
    SuperpositionSpec,
    cross_terms,
    evaluate_bounds,
    fit_gme_closed_form,
    gme_negativity_bounds,
    min_combine_lower,
    min_combine_upper,
    sweep_csv,
    total_negativity_bounds,
    z_family_sweep,
)
from supneg.states import new_state, normalize

S2 = 1 / np.sqrt(2)

# Frozen from the dense partial-transpose oracle ahead of the build; the
# closed forms are sqrt(29)/6 per cut at p = 1/2 and their aggregates.
Z_HALF_NGME = 0.8975274678557507
Z_HALF_NMULTI = 5.385164807134504
Z_HALF_T1_UPPER = 9.292528739883945  # 3 + 2 sqrt(2) + 2 sqrt(3)
Z_HALF_T2_UPPER = 1.5487547899806575  # 1/2 + sqrt(2)/3 + 1/sqrt(3)


def basis_state(index):
    amps = np.zeros(8, dtype=complex)
    amps[index] = 1.0
    return new_state([2, 2, 2], amps)


def positive_triples():
    return st.tuples(
        st.floats(1e-6, 1e3), st.floats(1e-6, 1e3), st.floats(1e-6, 1e3)
    )


# ------------------------------------------------------------------- spec


def test_spec_validates_coefficients(ghz, w):
    with pytest.raises(ValueError, match="a1"):
        SuperpositionSpec(1.0, 1.0, ghz, w)
    SuperpositionSpec(1.0, 1.0, ghz, w, coeff_check=False)


def test_spec_validates_dims(ghz):
    with pytest.raises(ValueError, match="dims"):
        SuperpositionSpec(S2, S2, ghz, library.ghz(3))


# ------------------------------------------------------------- cross terms


def test_cross_terms_ghz_pair(ghz):
    spec = SuperpositionSpec(S2, S2, ghz, ghz)
    t = cross_terms(spec)
    np.testing.assert_allclose(t.s12, [1.0, 1.0, 1.0], atol=1e-12)
    assert t.f12 == pytest.approx(0.5, abs=1e-12)
    assert t.g12 == pytest.approx(0.5, abs=1e-12)


def test_cross_terms_disjoint_basis_components():
    spec = SuperpositionSpec(S2, S2, basis_state(0), basis_state(7))
    t = cross_terms(spec)
    np.testing.assert_allclose(t.s11, [0.0, 0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(t.s22, [0.0, 0.0, 0.0], atol=1e-15)
    np.testing.assert_allclose(t.s12, [1.0, 1.0, 1.0], atol=1e-12)


def test_cross_terms_degenerate_second_coefficient(ghz, w):
    t = cross_terms(SuperpositionSpec(1.0, 0.0, ghz, w))
    for name in ("f22_multi", "f12_multi", "f22", "f12", "g22", "g12"):
        assert getattr(t, name) == 0.0


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_cross_terms_identities_on_random_specs(seed):
    spec = library.random_superposition_spec([2, 2, 2], seed)
    t = cross_terms(spec)
    # the aggregated self terms are the weighted total negativities
    assert t.f11_multi == pytest.approx(
        abs(spec.a1) ** 2 * measures.multipartite_negativity(spec.psi1), abs=1e-10
    )
    assert t.f22_multi == pytest.approx(
        abs(spec.a2) ** 2 * measures.multipartite_negativity(spec.psi2), abs=1e-10
    )
    for i, j in (("11", "11"), ("22", "22"), ("12", "12")):
        assert getattr(t, f"g{i}") <= getattr(t, f"f{j}") + 1e-15
    assert min(t.s11) >= 0 and min(t.s22) >= 0 and min(t.s12) >= 0


# ------------------------------------------------------------ total bounds


def test_total_bounds_degenerate_superposition(ghz, w):
    spec = SuperpositionSpec(1.0, 0.0, ghz, w)
    upper, lower_raw, lower = total_negativity_bounds(spec)
    assert upper == pytest.approx(6.0, abs=1e-12)
    assert lower_raw == pytest.approx(6.0, abs=1e-12)
    assert lower == pytest.approx(6.0, abs=1e-12)


def test_total_bounds_tight_for_disjoint_products():
    spec = SuperpositionSpec(S2, S2, basis_state(0), basis_state(7))
    upper, _, _ = total_negativity_bounds(spec)
    report = evaluate_bounds(spec)
    assert upper == pytest.approx(6.0, abs=1e-12)
    assert report.n_exact == pytest.approx(6.0, abs=1e-12)


# -------------------------------------------------------------- gme bounds


def test_gme_bounds_degenerate_superposition(ghz, w):
    spec = SuperpositionSpec(1.0, 0.0, ghz, w)
    upper, lower_raw, lower = gme_negativity_bounds(spec)
    assert upper == pytest.approx(1.0, abs=1e-12)
    assert lower == pytest.approx(1.0, abs=1e-12)


def test_gme_bounds_tight_for_disjoint_products():
    spec = SuperpositionSpec(S2, S2, basis_state(0), basis_state(7))
    upper, _, _ = gme_negativity_bounds(spec)
    report = evaluate_bounds(spec)
    assert upper == pytest.approx(1.0, abs=1e-12)
    assert report.ngme_exact == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------- sandwich


@pytest.mark.parametrize("dims", [[2, 2, 2], [3, 3, 3]])
def test_sandwich_on_random_specs(dims):
    for seed in range(40):
        spec = library.random_superposition_spec(dims, seed)
        r = evaluate_bounds(spec)
        assert r.t1_lower_raw <= r.n_exact + 1e-9
        assert r.n_exact <= r.t1_upper + 1e-9
        assert r.t2_lower_raw <= r.ngme_exact + 1e-9
        assert r.ngme_exact <= r.t2_upper + 1e-9
        assert r.t1_lower >= 0.0 and r.t2_lower >= 0.0


def test_exact_values_match_measures_of_normalized_state():
    spec = library.random_superposition_spec([2, 2, 2], 77)
    r = evaluate_bounds(spec)
    chi, norm_sq = normalize(spec.superposed())
    assert r.norm_sq == pytest.approx(norm_sq, abs=1e-12)
    assert r.n_exact == pytest.approx(
        norm_sq * measures.multipartite_negativity(chi), abs=1e-9
    )
    assert r.ngme_exact == pytest.approx(
        norm_sq * measures.gme_negativity(chi), abs=1e-9
    )


def test_phase_covariance_of_bounds():
    spec = library.random_superposition_spec([2, 2, 2], 5)
    rotated = SuperpositionSpec(
        spec.a1 * np.exp(0.9j), spec.a2 * np.exp(-1.3j), spec.psi1, spec.psi2
    )
    for fn in (total_negativity_bounds, gme_negativity_bounds):
        a, b = fn(spec), fn(rotated)
        # bounds depend only on coefficient magnitudes; |a e^{i theta}|
        # differs from |a| by at most one ulp, hence the tight tolerance
        assert b.upper == pytest.approx(a.upper, abs=1e-12)
        assert b.lower_raw == pytest.approx(a.lower_raw, abs=1e-12)
        assert b.lower == pytest.approx(a.lower, abs=1e-12)


def test_exchange_symmetry(ghz, w):
    spec = SuperpositionSpec(0.6, 0.8, ghz, w)
    swapped = spec.swapped()
    assert total_negativity_bounds(spec).upper == total_negativity_bounds(swapped).upper
    assert total_negativity_bounds(spec).lower_raw == pytest.approx(
        total_negativity_bounds(swapped).lower_raw, abs=1e-12
    )
    assert gme_negativity_bounds(spec).upper == pytest.approx(
        gme_negativity_bounds(swapped).upper, abs=1e-12
    )


# -------------------------------------------------------------- min/max lemma


def test_min_combine_symmetric_triple_equality():
    ones = (1.0, 1.0, 1.0)
    assert min_combine_upper(ones, ones, ones)
    assert min_combine_lower(ones, ones, ones)
    # equality case: min(b+c+d) = 3 = min b + max c + max d
    assert min(1 + 1 + 1 for _ in range(1)) == 3


def test_min_combine_worked_example():
    b, c, d = (1.0, 2.0, 3.0), (3.0, 1.0, 2.0), (2.0, 3.0, 1.0)
    assert min_combine_upper(b, c, d)
    assert min_combine_lower(b, c, d)


@settings(max_examples=300, deadline=None)
@given(b=positive_triples(), c=positive_triples(), d=positive_triples())
def test_min_combine_random_triples(b, c, d):
    assert min_combine_upper(b, c, d)
    assert min_combine_lower(b, c, d)


def test_min_combine_rejects_nonpositive():
    good = (1.0, 1.0, 1.0)
    with pytest.raises(ValueError, match="positive"):
        min_combine_upper((0.0, 1.0, 1.0), good, good)
    with pytest.raises(ValueError, match="length"):
        min_combine_lower((1.0, 1.0), good, good)


# ------------------------------------------------------------------- sweep


def test_z_sweep_endpoints_match_pure_states():
    reports = z_family_sweep([0.0, 1.0])
    w, g = library.w_state(), library.ghz(2)
    assert reports[0].n_exact == pytest.approx(
        measures.multipartite_negativity(w), abs=1e-10
    )
    assert reports[0].ngme_exact == pytest.approx(
        measures.gme_negativity(w), abs=1e-10
    )
    assert reports[1].n_exact == pytest.approx(6.0, abs=1e-10)
    assert reports[1].ngme_exact == pytest.approx(1.0, abs=1e-10)


def test_z_sweep_frozen_midpoint_golden():
    (report,) = z_family_sweep([0.5])
    assert report.norm_sq == pytest.approx(1.0, abs=1e-12)
    assert report.ngme_exact == pytest.approx(Z_HALF_NGME, abs=1e-9)
    assert report.n_exact == pytest.approx(Z_HALF_NMULTI, abs=1e-9)
    assert report.t1_upper == pytest.approx(Z_HALF_T1_UPPER, abs=1e-9)
    assert report.t2_upper == pytest.approx(Z_HALF_T2_UPPER, abs=1e-9)


def test_z_sweep_rejects_out_of_range():
    with pytest.raises(ValueError):
        z_family_sweep([0.0, 1.2])


def test_sweep_csv_format():
    grid = np.linspace(0.0, 1.0, 11)
    reports = z_family_sweep(grid)
    text = sweep_csv(grid, 0.0, reports)
    lines = text.strip().split("\n")
    assert lines[0] == ",".join(SWEEP_COLUMNS)
    assert len(lines) == 12  # header + 11 rows
    # values round-trip at full precision
    first = dict(zip(SWEEP_COLUMNS, map(float, lines[1].split(","))))
    assert first["ngme_exact"] == reports[0].ngme_exact
    assert first["t2_gap"] == reports[0].t2_gap


# --------------------------------------------------------------------- fit


def test_fit_recovers_exact_closed_form():
    p = np.linspace(0, 1, 21)
    c = (0.3, 0.7, 1.1)
    y = c[0] * (1 - p) + c[1] * np.sqrt(p * (1 - p)) + c[2] * p
    fit = fit_gme_closed_form(p, y)
    assert fit.c1 == pytest.approx(c[0], abs=1e-12)
    assert fit.c2 == pytest.approx(c[1], abs=1e-12)
    assert fit.c3 == pytest.approx(c[2], abs=1e-12)
    assert fit.max_residual < 1e-12


def test_fit_rejects_short_grids():
    with pytest.raises(ValueError):
        fit_gme_closed_form([0.0, 1.0], [1.0, 2.0])
