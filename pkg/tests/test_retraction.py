import math

import numpy as np
import pytest

from jordancenters.centers import CenterKind, classical_center
from jordancenters.curve import Point2, Similarity, transform
from jordancenters.retraction import (
    CenterSolver,
    RetractionContext,
    canonical_center,
    center_report,
    exact_disk_retraction,
    radial_push,
    retract_point,
)
from jordancenters.shapes import FIXTURES

import oracles


@pytest.fixture(scope="module")
def disk_ctx(fixtures):
    return RetractionContext.build(fixtures("circle"))


@pytest.fixture(scope="module")
def lune_ctx(fixtures):
    return RetractionContext.build(fixtures("lune-smoothed"))


def exterior_probes(m=50, seed=0, r0=1.05, r1=10.0):
    rng = np.random.default_rng(seed)
    r = r0 + (r1 - r0) * rng.random(m)
    a = rng.uniform(0, 2 * np.pi, m)
    return np.column_stack([r * np.cos(a), r * np.sin(a)])


def test_closed_form_matches_independent_oracle():
    x = exterior_probes()
    for t in (0.0, 0.3, 1.0):
        np.testing.assert_allclose(exact_disk_retraction(x, t), oracles.disk_retraction(x, t), atol=1e-12)


def test_disk_examples(disk_ctx):
    np.testing.assert_allclose(retract_point(disk_ctx, [2.0, 0.0], 1.0), [1.0, 0.0], atol=1e-3)
    # h_{1/2}(1/2) = 3/4, so 2 goes to 4/3
    np.testing.assert_allclose(retract_point(disk_ctx, [2.0, 0.0], 0.5), [4 / 3, 0.0], atol=1e-3)
    np.testing.assert_allclose(retract_point(disk_ctx, [0.0, 0.5], 0.7), [0.0, 0.5])


def test_disk_matches_closed_form(disk_ctx):
    x = exterior_probes()
    for t in np.linspace(0, 1, 11):
        err = np.linalg.norm(retract_point(disk_ctx, x, t) - oracles.disk_retraction(x, t), axis=1)
        assert err.max() <= 1e-3


def test_strong_retraction(lune_ctx, fixtures):
    D = fixtures("lune-smoothed")
    t = np.linspace(0, 1, 30, endpoint=False)
    inside = D.boundary(t) + 0.01 * D.boundary.normal(t)
    for s in (0.2, 0.6, 1.0):
        np.testing.assert_array_equal(retract_point(lune_ctx, inside, s), inside)
    on = D.boundary(t)
    np.testing.assert_allclose(retract_point(lune_ctx, on, 1.0), on, atol=1e-9)


def test_endpoint_lands_on_closure(lune_ctx, fixtures):
    D = fixtures("lune-smoothed")
    x = exterior_probes(40, seed=3, r0=1.2, r1=5.0)
    end = retract_point(lune_ctx, x, 1.0)
    assert D.boundary.signed_distance(end).min() >= -1e-3 * D.diameter
    assert np.abs(D.boundary.distance(end)).max() <= 1e-3 * D.diameter


def test_identity_at_time_zero(lune_ctx):
    x = exterior_probes(10)
    np.testing.assert_array_equal(retract_point(lune_ctx, x, 0.0), x)


def test_path_is_continuous_in_time(lune_ctx):
    x = exterior_probes(8, seed=5, r0=1.5, r1=3.0)

    def max_step(m):
        path = np.stack([retract_point(lune_ctx, x, t) for t in np.linspace(0, 1, m + 1)])
        return np.linalg.norm(np.diff(path, axis=0), axis=-1).max()

    # Lipschitz in t: halving the step halves the largest jump
    assert 1.6 <= max_step(40) / max_step(80) <= 2.4


def test_gauge_independence(lune_ctx, fixtures):
    D = fixtures("lune-smoothed")
    x = exterior_probes(30, seed=2, r0=1.1, r1=4.0)
    twisted = lune_ctx.with_gauge(2.0)
    for t in (0.25, 0.75, 1.0):
        diff = retract_point(lune_ctx, x, t) - retract_point(twisted, x, t)
        assert np.abs(diff).max() <= 1e-3 * D.diameter


def test_orthogonal_equivariance(fixtures):
    D = fixtures("blob")
    g = Similarity(1.0, 1.1, True, Point2(0.0, 0.0))
    a = RetractionContext.build(D)
    b = RetractionContext.build(transform(g, D))
    x = exterior_probes(20, seed=4, r0=1.5, r1=3.0)
    for t in (0.5, 1.0):
        lhs = g(retract_point(a, x, t))
        rhs = retract_point(b, g(x), t)
        assert np.abs(lhs - rhs).max() <= 1e-3 * D.diameter


def test_invalid_arguments(disk_ctx):
    with pytest.raises(ValueError):
        retract_point(disk_ctx, [2.0, 0.0], 1.5)
    with pytest.raises(ValueError):
        retract_point(disk_ctx, [np.nan, 0.0], 0.5)


def test_radial_push_handles_origin():
    z = np.array([0j, 1e-12 + 0j, 2 + 0j])
    out = radial_push(z, 1.0)
    assert np.all(np.isfinite(out))
    np.testing.assert_allclose(np.abs(out), 1.0)


def test_lune_centroid_is_made_interior(fixtures):
    D = fixtures("lune-smoothed")
    f = classical_center(D, CenterKind.CENTROID)
    assert oracles.winding_number(D.boundary.dense, f) == 0
    r = center_report(D, CenterKind.CENTROID)
    assert r.retracted
    assert oracles.winding_number(D.boundary.dense, r.point) == 1
    d = oracles.point_segment_distance(np.array([r.point]), D.boundary.dense)[0]
    assert d >= 0.9 * r.reach / 2


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_all_centers_clear_the_boundary(fixtures, name):
    solver = CenterSolver(fixtures(name))
    for kind in CenterKind:
        r = solver.report(kind)
        assert r.clearance >= 0.9 * r.reach / 2


def test_convex_centers_are_not_moved(fixtures):
    D = fixtures("ellipse")
    for kind in CenterKind:
        c = canonical_center(D, kind)
        assert math.dist(c, classical_center(D, kind)) <= 1e-3 * D.diameter


def test_report_dict_round_trips(fixtures):
    d = center_report(fixtures("egg"), "steiner").to_dict()
    assert d["kind"] == "steiner"
    assert set(d) == {"kind", "point", "classical", "clearance", "reach", "retracted"}
