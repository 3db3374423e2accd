from __future__ import annotations

import math

import numpy as np
import pytest

from transweingarten.expr import BinOp, Const, Neg, Var
from transweingarten.genesis import make_family
from transweingarten.surface import (
    Ambient,
    DegenerateMetricError,
    ExprProfile,
    GridSpec,
    Immersion,
    NoAdmissibleSamplesError,
    TranslationSurface,
    dump_surface,
    general_curvature,
    graph_immersion,
    load_surface,
    sample_grid,
    translation_curvature,
)

from conftest import random_surfaces


def surface(f: str, g: str, ambient: str = "euclidean") -> TranslationSurface:
    return TranslationSurface.from_expressions(f, g, ambient)


def test_plane_anywhere():
    s = surface("0", "0")
    for x, y in [(0, 0), (3.5, -2), (-100, 7)]:
        smp = translation_curvature(s, x, y)
        assert (smp.H, smp.K, smp.W) == (0.0, 0.0, 1.0)


def test_scherk_origin():
    smp = translation_curvature(surface("-log(cos(t))", "log(cos(t))"), 0.0, 0.0)
    assert smp.H == pytest.approx(0.0, abs=1e-15)
    assert smp.K == pytest.approx(-1.0, abs=1e-15)
    assert smp.W == 1.0


def test_paraboloid_origin():
    smp = translation_curvature(surface("t^2", "t^2"), 0.0, 0.0)
    assert (smp.H, smp.K, smp.W) == pytest.approx((2.0, 4.0, 1.0))


def test_cylinder_at_one():
    smp = translation_curvature(surface("t^2", "0"), 1.0, 0.3)
    assert smp.K == 0.0
    assert smp.W == pytest.approx(5.0)
    assert smp.H == pytest.approx(2.0 / (2.0 * 5.0 ** 1.5), rel=1e-14)
    assert smp.H == pytest.approx(0.089443, abs=1e-6)


def test_spacelike_parabolic_cylinder():
    smp = translation_curvature(surface("t^2/4", "0", "lorentz-spacelike"), 0.0, 0.0)
    assert (smp.H, smp.K, smp.W) == pytest.approx((-0.25, 0.0, 1.0))


def test_pole_gives_invalid_sample():
    s = surface("-log(cos(t))", "0")
    smp = translation_curvature(s, 2.0, 0.0)  # cos(2) < 0
    assert not smp.valid
    assert "log" in smp.reason or "non-positive" in smp.reason


def test_point_outside_domain():
    s = make_family("scherk", 1.0)
    with pytest.raises(ValueError):
        translation_curvature(s, 1.6, 0.0)


def test_general_curvature_of_plane():
    s = surface("0", "0")
    smp = general_curvature(graph_immersion(s, 0.2, 0.4))
    assert (smp.H, smp.K) == (0.0, 0.0)


@pytest.mark.parametrize("family, point", [("scherk", (0.0, 0.0)), ("paraboloid", (0.3, -0.2))])
def test_general_matches_translation(family, point):
    s = make_family(family)
    a = translation_curvature(s, *point)
    b = general_curvature(graph_immersion(s, *point))
    assert b.H == pytest.approx(a.H, abs=1e-12)
    assert b.K == pytest.approx(a.K, abs=1e-12)


def test_degenerate_metric():
    zero = np.zeros(3)
    X = Immersion(zero, np.array([1.0, 0, 0]), np.array([2.0, 0, 0]), zero, zero, zero)
    with pytest.raises(DegenerateMetricError):
        general_curvature(X)


@pytest.mark.parametrize("ambient", [a.value for a in Ambient])
def test_oracle_equivalence(ambient):
    rng = np.random.default_rng(3)
    compared = 0
    for s in random_surfaces(5, 50, ambient):
        for x, y in rng.uniform(-1, 1, (20, 2)):
            a = translation_curvature(s, x, y)
            # near W = 0 both engines lose every digit to cancellation
            if not a.valid or a.W < 1e-6:
                continue
            b = general_curvature(graph_immersion(s, x, y), ambient)
            assert math.isclose(a.H, b.H, rel_tol=1e-10, abs_tol=1e-12), (s, x, y)
            assert math.isclose(a.K, b.K, rel_tol=1e-10, abs_tol=1e-12), (s, x, y)
            assert math.isclose(a.W, b.W, rel_tol=1e-10, abs_tol=1e-12), (s, x, y)
            compared += 1
    assert compared >= 100


def test_swap_symmetry():
    rng = np.random.default_rng(8)
    for s in random_surfaces(9, 30):
        swapped = TranslationSurface(s.g, s.f)
        for x, y in rng.uniform(-1, 1, (5, 2)):
            a = translation_curvature(s, x, y)
            b = translation_curvature(swapped, y, x)
            if a.valid:
                assert (b.H, b.K) == pytest.approx((a.H, a.K), rel=1e-14, abs=1e-15)


def test_linear_profile_has_flat_gauss_curvature():
    rng = np.random.default_rng(10)
    for s in random_surfaces(12, 30):
        cyl = TranslationSurface(s.f, ExprProfile(BinOp("+", BinOp("*", Const(0.7), Var()), Const(2.0))))
        for x, y in rng.uniform(-1, 1, (5, 2)):
            smp = translation_curvature(cyl, x, y)
            if smp.valid:
                assert smp.K == 0.0


def test_reflection_flips_mean_curvature():
    rng = np.random.default_rng(13)
    for s in random_surfaces(14, 30):
        flipped = TranslationSurface(ExprProfile(Neg(s.f.ast)), ExprProfile(Neg(s.g.ast)))
        for x, y in rng.uniform(-1, 1, (5, 2)):
            a, b = translation_curvature(s, x, y), translation_curvature(flipped, x, y)
            if a.valid:
                assert b.H == pytest.approx(-a.H, rel=1e-14, abs=1e-15)
                assert b.K == pytest.approx(a.K, rel=1e-14, abs=1e-15)


def test_lorentzian_validity_tracks_w():
    for ambient in ("lorentz-spacelike", "lorentz-timelike-xz", "lorentz-timelike-yz"):
        s = surface("t^2/2", "t^2/2", ambient)
        for smp in sample_grid(s, GridSpec.square(-1.5, 1.5, 7)):
            assert smp.valid == (smp.W > 0)


def test_spacelike_steep_surface_has_no_samples():
    with pytest.raises(NoAdmissibleSamplesError, match="no admissible samples"):
        sample_grid(surface("t", "t", "lorentz-spacelike"), GridSpec.square(-1, 1, 3))


def test_spacelike_invalid_where_slope_too_large():
    samples = sample_grid(surface("t^2/2", "0", "lorentz-spacelike"), GridSpec.square(-1.5, 1.5, 7))
    for smp in samples:
        assert smp.valid == (abs(smp.x) < 1.0)


def test_plane_grid():
    samples = sample_grid(surface("0", "0"), GridSpec.square(-1, 1, 3))
    assert len(samples) == 9
    assert all((s.H, s.K) == (0.0, 0.0) for s in samples)


def test_scherk_grid_is_minimal():
    samples = sample_grid(make_family("scherk"), GridSpec.square(-1, 1, 11))
    assert len(samples) == 121 and all(s.valid for s in samples)
    assert max(abs(s.H) for s in samples) < 1e-10


def test_row_major_order():
    samples = sample_grid(surface("t", "0"), GridSpec(0, 1, 3, 10, 11, 2))
    assert [(s.x, s.y) for s in samples] == [(0, 10), (0.5, 10), (1, 10), (0, 11), (0.5, 11), (1, 11)]


@pytest.mark.parametrize("text", ["0:1", "0:1:2", "1:0:3,0:1:3", "0:1:0,0:1:2", "a:b:c,0:1:2"])
def test_bad_grids(text):
    with pytest.raises(ValueError):
        GridSpec.parse(text)


def test_grid_outside_domain():
    with pytest.raises(ValueError, match="outside"):
        sample_grid(make_family("scherk", 2.0), GridSpec.square(-1, 1, 3))


def test_surface_json_round_trip():
    s = TranslationSurface.from_expressions("sin(t)", "t^3 - 2*t", "lorentz-timelike-xz", (-1.0, 2.0))
    again = load_surface(dump_surface(s))
    assert again.ambient is Ambient.LORENTZ_TIMELIKE_XZ
    assert again.domain_f == (-1.0, 2.0) and again.domain_g == (-math.inf, math.inf)
    assert dump_surface(again) == dump_surface(s)


def test_surface_json_family_profiles():
    doc = '{"ambient": "euclidean", "f": {"family": "scherk", "lambda": 1}, "g": {"family": "scherk", "lambda": 1}}'
    smp = translation_curvature(load_surface(doc), 0.0, 0.0)
    assert smp.K == pytest.approx(-1.0)


def test_timelike_positions():
    s = surface("t", "2*t", "lorentz-timelike-xz")
    assert s.position(1.0, 2.0) == (1.0, 5.0, 2.0)
    s = surface("t", "2*t", "lorentz-timelike-yz")
    assert s.position(1.0, 2.0) == (5.0, 1.0, 2.0)
