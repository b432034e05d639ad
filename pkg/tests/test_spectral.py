from __future__ import annotations

import math

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

from services.spectral_service import (
    SPECTRUM_COLUMNS, BoundStore, BoundStoreError, EigenSolverError, FormSpec, SpectralConfig, SpectralReport,
    SpectralServiceError, UnderResolvedError,
    assemble, bandwidth, boundary_terms, bracket_min_eig, calibrated_bound, correction_term_bound,
    default_samples, eigen_identity_defects, endpoint_estimate_check, endpoint_ratio_sweep, l2_norm2, min_eig,
    profile_form_values, q0_envelope, rayleigh_check, residual_tolerance, spectral_report, sweep, to_function,
    uniformity_verdict, write_spectrum_csv,
)

SWEEP_EPS = [0.1, 0.05, 0.025, 0.0125]


def _lowest(spec: FormSpec, table):
    fm = assemble(spec, table)
    value, vector, residual = min_eig(fm.matrix)
    return fm, value, to_function(fm, vector), residual


def test_free_laplacian_has_constant_zero_mode(table):
    fm, value, b, _ = _lowest(FormSpec(kind="q1", eps=0.05, nodes=257, plumbing=True), table)
    assert abs(value) <= 1e-8
    assert_allclose(b / b[0], np.ones_like(b), atol=1e-5)
    assert l2_norm2(fm, b) == pytest.approx(1.0, rel=1e-10)


def test_dirichlet_laplacian_ground_state(table):
    fm, value, _, _ = _lowest(FormSpec(kind="q1", eps=0.05, nodes=1025, boundary="dirichlet", plumbing=True),
                              table)
    assert fm.size == 1023
    assert value == pytest.approx(math.pi ** 2 / 4.0, abs=1e-3)


def test_q1_min_eig_matches_dense_oracle(table):
    fm, value, _, residual = _lowest(FormSpec(kind="q1", eps=0.05, nodes=257), table)
    dense = np.linalg.eigvalsh(fm.matrix.toarray())[0]
    assert value == pytest.approx(dense, abs=1e-7 * max(1.0, abs(dense)))
    assert residual <= residual_tolerance(fm.matrix)
    lo, hi = bracket_min_eig(fm.matrix)
    assert lo <= dense + 1e-6 and dense <= hi + 1e-6


def test_bracket_iteration_cap_raises(table):
    fm = assemble(FormSpec(kind="q1", eps=0.05, nodes=257, plumbing=True), table)
    with pytest.raises(EigenSolverError):
        bracket_min_eig(fm.matrix, maxiter=1)


@pytest.mark.parametrize("kind", ["q0", "q1", "vector"])
def test_assembled_matrix_is_symmetric(kind, table):
    spec = FormSpec(kind=kind, eps=0.05, nodes=513, slope_minus=1.0, slope_plus=0.25)
    A = assemble(spec, table).matrix
    scale = abs(A).max()
    assert abs(A - A.T).max() <= 1e-12 * scale
    assert bandwidth(A) == (spec.n if kind == "vector" else 1)


def test_vector_form_with_constant_director_decouples(table):
    _, q0, _, _ = _lowest(FormSpec(kind="q0", eps=0.05, nodes=513), table)
    _, q1, _, _ = _lowest(FormSpec(kind="q1", eps=0.05, nodes=513), table)
    fm, vector, b, _ = _lowest(FormSpec(kind="vector", eps=0.05, nodes=513, n=2), table)
    assert b.shape == (513, 2)
    assert vector == pytest.approx(min(q0, q1), abs=1e-6 * max(1.0, abs(vector)))
    assert l2_norm2(fm, b) == pytest.approx(1.0, rel=1e-10)


def test_rotating_director_couples_components(table):
    _, q0, _, _ = _lowest(FormSpec(kind="q0", eps=0.05, nodes=513), table)
    _, q1, _, _ = _lowest(FormSpec(kind="q1", eps=0.05, nodes=513), table)
    spec = FormSpec(kind="vector", eps=0.05, nodes=513, n=2, slope_minus=1.0, slope_plus=0.25)
    fm, vector, b, _ = _lowest(spec, table)
    assert abs(vector - min(q0, q1)) > 1e-4
    # 兩個分量都要有質量
    assert np.all(np.sum(fm.weights[:, None] * b ** 2, axis=0) > 1e-6)


def test_profile_forms_reduce_to_boundary_terms(table, params):
    eps = 0.5
    values = profile_form_values(eps, 16001, table)
    terms = boundary_terms(eps, table)
    assert abs(terms["q1_theta2"]) > 1e-4
    assert values["q1_theta2"] == pytest.approx(terms["q1_theta2"], rel=0.05)
    envelope = q0_envelope(eps, params)
    assert abs(terms["q0_theta1"]) <= envelope
    assert abs(values["q0_theta1"]) <= envelope


def test_q0_ground_state_localizes_in_layer(table):
    spec = FormSpec(kind="q0", eps=0.05, nodes=2049)
    report = spectral_report(spec, table, check_refinement=False)
    assert report.layer_mass >= SpectralConfig.LAYER_MASS
    assert report.localized
    assert l2_norm2(assemble(spec, table), report.eigvector) == pytest.approx(1.0, rel=1e-10)


def test_refinement_check_passes_at_default_resolution(table):
    report = spectral_report(FormSpec(kind="q1", eps=0.1), table)
    assert report.nodes == SpectralConfig.resolution(0.1)
    assert report.lambda_refined is not None
    assert abs(report.lambda_refined - report.lambda_min) <= 0.05 * max(abs(report.lambda_min), 1.0)


def test_coarse_grid_is_under_resolved(table):
    with pytest.raises(UnderResolvedError):
        spectral_report(FormSpec(kind="q0", eps=0.05, nodes=257), table)


def test_endpoint_ratios_exclude_zero_and_vanish_on_theta1(table):
    report = endpoint_estimate_check(0.05, table=table)
    assert report.ratios["theta1"] < 1e-12
    assert 0.0 < report.ratios["one"] < math.inf
    assert report.worst == max(report.ratios.values())

    nodes = 1025
    r = np.linspace(-1.0, 1.0, nodes)
    only = endpoint_estimate_check(0.05, samples={"zero": np.zeros_like(r), "one": np.ones_like(r)},
                                   nodes=nodes, table=table)
    assert set(only.ratios) == {"one"}


def test_endpoint_ratio_sweep_has_no_negative_power_growth(table):
    frame, slope = endpoint_ratio_sweep([0.1, 0.05, 0.025], table=table)
    assert list(frame.columns) == ["eps", "worst"]
    assert np.all(np.isfinite(frame["worst"]))
    assert slope >= -0.2


@pytest.mark.parametrize("kind", ["q1", "vector"])
def test_rayleigh_quotients_bound_min_eig(kind, table):
    fm, value, _, _ = _lowest(FormSpec(kind=kind, eps=0.05, nodes=1025, slope_minus=1.0, slope_plus=0.25), table)
    samples = default_samples(fm.r, 0.05, table)
    frame = rayleigh_check(fm, value, samples)
    assert len(frame) == len(samples)
    assert frame["ok"].all()


def test_profile_eigen_identities_are_second_order(table):
    coarse = eigen_identity_defects(0.1, 501, table)
    fine = eigen_identity_defects(0.1, 1001, table)
    for key in ("theta1", "theta2"):
        assert 3.5 <= coarse[key] / fine[key] <= 4.5


def test_correction_term_is_uniform_in_eps(table):
    frame = correction_term_bound(SWEEP_EPS, table, nodes=4001)
    sup = frame["sup"].to_numpy()
    assert np.all(np.isfinite(sup)) and np.all(sup > 0.0)
    assert sup.max() <= 1.5 * sup.min()


def test_uniformity_verdict_rules():
    def reports(*values):
        return [SpectralReport(eps=0.1 / 2 ** i, kind="q1", lambda_min=v, eigvector=np.zeros(1), nodes=257,
                               residual=0.0, layer_mass=1.0) for i, v in enumerate(values)]

    assert uniformity_verdict(reports(-1.0, -1.2, -1.3), bound=2.0)
    assert not uniformity_verdict(reports(-1.0, -2.0), bound=4.0)
    assert not uniformity_verdict(reports(-1.0, -1.2), bound=1.1)
    assert uniformity_verdict([], bound=1.0)


def test_localized_only_checks_negative_directions():
    def report(value, mass):
        return SpectralReport(eps=0.05, kind="vector", lambda_min=value, eigvector=np.zeros(1), nodes=257,
                              residual=0.0, layer_mass=mass)

    assert report(-0.5, SpectralConfig.LAYER_MASS).localized
    assert not report(-0.5, 0.5).localized
    assert report(0.2, 0.5).localized


def test_sweep_calibrates_once_and_store_resets(tmp_path, table):
    store = BoundStore(str(tmp_path / "bounds.json"))
    template = FormSpec(kind="q1", k_res=4)
    first = sweep(template, [0.2, 0.1], store=store, table=table, check_refinement=False)
    assert first.calibrated
    assert first.bound == calibrated_bound(first.reports[0].lambda_min)
    assert store.get("q1", 1.0, 2.0).bound == first.bound

    second = sweep(template, [0.2, 0.1], store=store, table=table, check_refinement=False)
    assert not second.calibrated and second.bound == first.bound
    assert [r.lambda_min for r in second.reports] == [r.lambda_min for r in first.reports]

    path = write_spectrum_csv(second, str(tmp_path / "report.csv"))
    assert list(pd.read_csv(path).columns) == SPECTRUM_COLUMNS

    assert store.reset("q1") == 1
    assert store.get("q1", 1.0, 2.0) is None


def test_store_and_sweep_errors(tmp_path, table):
    broken = tmp_path / "broken.json"
    broken.write_text("not json", encoding="utf-8")
    with pytest.raises(BoundStoreError):
        BoundStore(str(broken)).load()
    with pytest.raises(SpectralServiceError):
        sweep(FormSpec(kind="q1"), [0.05, 0.1], table=table)
    with pytest.raises(ValueError):
        FormSpec(kind="q1", eps=0.01, nodes=257)


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["q0", "q1", "vector"])
def test_uniform_lower_bound_sweep(kind, table):
    result = sweep(FormSpec(kind=kind), SWEEP_EPS, table=table)
    assert result.verdict
    assert all(r.bound_ok for r in result.reports)
    assert [r.eps for r in result.reports] == SWEEP_EPS
    if kind == "q0":
        assert all(r.layer_mass >= SpectralConfig.LAYER_MASS for r in result.reports)


@pytest.mark.slow
def test_vector_sweep_with_rotating_director(table):
    template = FormSpec(kind="vector", n=2, slope_minus=1.0, slope_plus=0.25)
    result = sweep(template, SWEEP_EPS, table=table)
    assert result.verdict
    assert all(r.lambda_min >= -result.bound for r in result.reports)
    assert all(r.localized for r in result.reports)
    assert all(r.eigvector.shape == (r.nodes, 2) for r in result.reports)
