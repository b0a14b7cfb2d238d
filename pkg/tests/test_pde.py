import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yblab.errors import (DegreeMismatch, GridDegenerate, RegimeMismatch)
from yblab.feq import fx_residual
from yblab.lattice_qty import dwbc_partition
from yblab.pde import (MultiPoly, PdeVars, dia_apply, dia_realized, fzt_residual,
                       interpolate_zbar, omega_actions, omega_leading_apply)
from yblab.sampling import random_context, sample_spectral


def bf_z(ctx):
    return lambda pts, th: dwbc_partition(pts, th, ctx)


def random_poly(rng, nvars, deg):
    shape = (deg + 1,) * nvars
    return MultiPoly(rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


# --- replacement operator ---------------------------------------------------

def test_dia_apply_substitutes():
    f = lambda args: args[1] ** 2 * args[2]
    g = dia_apply(f, 1, 0)
    assert g([2, 5, 3]) == 12


def test_dia_apply_idempotent(rng):
    f = lambda args: args[1] ** 3 + 2 * args[2]
    once = dia_apply(f, 1, 0)
    twice = dia_apply(once, 1, 0)
    for _ in range(10):
        args = list(rng.uniform(-2, 2, 3))
        assert once(args) == twice(args)


def test_dia_apply_chained_substitutions(rng):
    f = lambda args: args[1] * args[2] ** 2
    both = dia_apply(dia_apply(f, 1, 0), 2, 0)
    for _ in range(10):
        z0, z1, z2 = rng.uniform(-2, 2, 3)
        assert both([z0, z1, z2]) == pytest.approx(z0 ** 3)


def test_dia_realized_exact_on_monomial(rng):
    # z1^2 * z2 with degree bound 2
    coeffs = np.zeros((3, 3), dtype=complex)
    coeffs[2, 1] = 1.0
    poly = MultiPoly(coeffs)
    for _ in range(100):
        z = [complex(a, b) for a, b in rng.uniform(-1, 1, (2, 2))]
        x0 = complex(*rng.uniform(-1, 1, 2))
        realized = dia_realized(poly, 0, x0, z)
        assert abs(realized - x0 ** 2 * z[1]) < 1e-12 * max(abs(realized), 1e-6)


def test_dia_realized_constant_is_identity():
    poly = MultiPoly(np.array(3.5 + 1j))
    assert dia_realized(poly, 0, 9.0, [2.0]) == 3.5 + 1j


def test_dia_realized_degree_mismatch():
    poly = MultiPoly(np.array([1.0, 2.0, 3.0]))  # degree 2
    with pytest.raises(DegreeMismatch):
        dia_realized(poly, 0, 1.0, [0.5], m=1)


@settings(max_examples=60, deadline=None)
@given(nvars=st.integers(1, 3), deg=st.integers(0, 6), seed=st.integers(0, 10 ** 6))
def test_dia_realized_matches_substitution(nvars, deg, seed):
    rng = np.random.default_rng(seed)
    poly = random_poly(rng, nvars, deg)
    point = [complex(a, b) for a, b in rng.uniform(-1, 1, (nvars, 2))]
    x0 = complex(*rng.uniform(-1, 1, 2))
    axis = int(rng.integers(nvars))
    realized = dia_realized(poly, axis, x0, point)
    substituted = dia_apply(lambda args: poly.evaluate(args[1:]), axis + 1, 0)(
        [x0] + point)
    assert abs(realized - substituted) <= 1e-11 * max(abs(substituted), 1e-9)


# --- partition polynomial ----------------------------------------------------

def test_interpolate_zbar_degree_zero_at_single_site(rng):
    ctx = random_context(1, rng, elliptic=False)
    zbar = interpolate_zbar(ctx, rng=rng)
    assert zbar.nvars == 1 and zbar.max_deg == 0


def test_interpolate_zbar_rejects_elliptic(rng):
    ctx = random_context(2, rng, elliptic=True)
    with pytest.raises(RegimeMismatch):
        interpolate_zbar(ctx, rng=rng)


def test_interpolate_zbar_rejects_coincident_nodes(rng):
    ctx = random_context(2, rng, elliptic=False)
    with pytest.raises(GridDegenerate):
        interpolate_zbar(ctx, nodes=[(0.1, 0.1 + 1e-9), (0.3, -0.4)])


def test_interpolate_zbar_refuses_large_chains(rng):
    ctx = random_context(5, rng, elliptic=False)
    with pytest.raises(ValueError):
        interpolate_zbar(ctx, rng=rng)


def test_omega_actions_rejects_wrong_shape(pencil_setup, rng):
    ctx, _ = pencil_setup[3]
    wrong = random_poly(rng, 3, 3)  # degree above the partition bound
    point = PdeVars.from_lambdas(sample_spectral(ctx, rng, 3), ctx)
    with pytest.raises(DegreeMismatch):
        omega_actions(wrong, point, ctx)


def test_interpolate_zbar_off_grid(rng):
    ctx = random_context(2, rng, elliptic=False)
    zbar = interpolate_zbar(ctx, rng=rng)
    for _ in range(50):
        lams = sample_spectral(ctx, rng, 2)
        xs = [cmath.exp(2 * l) for l in lams]
        direct = dwbc_partition(lams, 0.0, ctx) * cmath.exp(sum(lams))
        assert abs(zbar.evaluate(xs) - direct) <= 1e-9 * max(abs(direct), 1e-20)


def test_zbar_degree_bound(rng):
    # fit one degree higher than the claimed bound: top slices must vanish
    ctx = random_context(3, rng, elliptic=False)
    L = ctx.L
    nodes = []
    for _ in range(L):
        axis = []
        while len(axis) < L + 1:
            cand = complex(rng.uniform(-0.9, 0.9), rng.uniform(-0.35, 0.35))
            if all(abs(cmath.exp(2 * cand) - cmath.exp(2 * o)) > 0.2 for o in axis):
                axis.append(cand)
        nodes.append(axis)
    values = np.zeros((L + 1,) * L, dtype=complex)
    for idx in np.ndindex(values.shape):
        pts = [nodes[k][idx[k]] for k in range(L)]
        values[idx] = dwbc_partition(pts, 0.0, ctx) * cmath.exp((L - 1) * sum(pts))
    coeffs = values
    for axis in range(L):
        xs = np.array([cmath.exp(2 * v) for v in nodes[axis]])
        vander = np.vander(xs, L + 1, increasing=True)
        moved = np.moveaxis(coeffs, axis, 0).reshape(L + 1, -1)
        coeffs = np.moveaxis(np.linalg.solve(vander, moved).reshape(
            (L + 1,) + coeffs.shape[:axis] + coeffs.shape[axis + 1:]), 0, axis)
    top = np.max(np.abs(coeffs))
    for axis in range(L):
        sl = [slice(None)] * L
        sl[axis] = L  # the degree-L slice, beyond the claimed bound
        assert np.max(np.abs(coeffs[tuple(sl)])) <= 1e-10 * top


# --- merged swap equation ----------------------------------------------------

def test_fzt_residual_brute_force(trig_ctx2, rng):
    for _ in range(3):
        pts = sample_spectral(trig_ctx2, rng, 3)
        assert fzt_residual(pts[0], pts[1:], trig_ctx2, bf_z(trig_ctx2)) <= 1e-9


def test_fzt_and_fx_agree_on_zeros(trig_ctx3, rng):
    pts = sample_spectral(trig_ctx3, rng, 4)
    assert fzt_residual(pts[0], pts[1:], trig_ctx3, bf_z(trig_ctx3)) <= 1e-9
    assert fx_residual(pts[0], pts[1:], 0.0, trig_ctx3, bf_z(trig_ctx3)) <= 1e-9


def test_fzt_scale_invariant(trig_ctx2, rng):
    pts = sample_spectral(trig_ctx2, rng, 3)
    base = fzt_residual(pts[0], pts[1:], trig_ctx2, bf_z(trig_ctx2))
    scaled = fzt_residual(pts[0], pts[1:], trig_ctx2,
                          lambda p, t: -4.2j * dwbc_partition(p, t, trig_ctx2))
    assert abs(base - scaled) <= 1e-12


# --- operator pencil ---------------------------------------------------------

@pytest.fixture(scope="module")
def pencil_setup():
    rng = np.random.default_rng(777)
    out = {}
    for L in (2, 3):
        ctx = random_context(L, rng, elliptic=False)
        out[L] = (ctx, interpolate_zbar(ctx, rng=rng))
    return out


def test_pde_vars_consistency(rng):
    ctx = random_context(2, rng, elliptic=False)
    lams = sample_spectral(ctx, rng, 2)
    point = PdeVars.from_lambdas(lams, ctx)
    assert all(abs(x - cmath.exp(2 * l)) < 1e-15 * abs(x)
               for x, l in zip(point.x, lams))
    assert abs(point.q - cmath.exp(ctx.gamma)) < 1e-15


@pytest.mark.parametrize("L", [2, 3])
def test_partition_polynomial_is_null_vector(L, pencil_setup, rng):
    ctx, zbar = pencil_setup[L]
    for _ in range(5):
        point = PdeVars.from_lambdas(sample_spectral(ctx, rng, L), ctx)
        acts = omega_actions(zbar, point, ctx)
        assert len(acts.coefficients) == L
        assert max(abs(c) for c in acts.coefficients) <= 1e-8 * acts.scale


def test_random_polynomial_is_not_null_vector(pencil_setup, rng):
    ctx, _ = pencil_setup[3]
    control = random_poly(rng, 3, 2)
    point = PdeVars.from_lambdas(sample_spectral(ctx, rng, 3), ctx)
    acts = omega_actions(control, point, ctx)
    assert max(abs(c) for c in acts.coefficients) > 1e-3 * acts.scale


def test_perturbed_polynomial_violates(pencil_setup, rng):
    # the null-vector property holds at every point, so a perturbation is
    # detected once the worst violation over sampled points is large
    ctx, zbar = pencil_setup[3]
    coeffs = zbar.coeffs.copy()
    idx = np.unravel_index(int(np.argmax(np.abs(coeffs))), coeffs.shape)
    coeffs[idx] *= 1.01
    perturbed = MultiPoly(coeffs)
    worst = 0.0
    for _ in range(5):
        point = PdeVars.from_lambdas(sample_spectral(ctx, rng, 3), ctx)
        acts = omega_actions(perturbed, point, ctx)
        worst = max(worst, max(abs(c) for c in acts.coefficients) / acts.scale)
    assert worst > 1e-3


@pytest.mark.parametrize("L", [2, 3])
def test_leading_operator_matches_extraction(L, pencil_setup, rng):
    ctx, _ = pencil_setup[L]
    for _ in range(5):
        control = random_poly(rng, L, L - 1)
        point = PdeVars.from_lambdas(sample_spectral(ctx, rng, L), ctx)
        extracted = omega_actions(control, point, ctx).leading
        closed = omega_leading_apply(control, point, ctx)
        assert abs(extracted - closed) <= 1e-7 * max(abs(extracted), abs(closed))


def test_leading_operator_annihilates_partition_polynomial(pencil_setup, rng):
    ctx, zbar = pencil_setup[3]
    point = PdeVars.from_lambdas(sample_spectral(ctx, rng, 3), ctx)
    scale = omega_actions(zbar, point, ctx).scale
    assert abs(omega_leading_apply(zbar, point, ctx)) <= 1e-7 * scale


def test_leading_operator_two_site_transcription(pencil_setup, rng):
    # literal two-site re-transcription of the compact closed form
    ctx, _ = pencil_setup[2]
    control = random_poly(rng, 2, 1)
    point = PdeVars.from_lambdas(sample_spectral(ctx, rng, 2), ctx)
    xs, ys, q = point.x, point.y, point.q
    abar = lambda u, v: u * q ** 2 - v
    expected = (abar(xs[0], ys[0]) + abar(xs[1], ys[1])) * control.evaluate(xs)
    expected -= q ** (-2) * (
        abar(xs[0], ys[0]) * abar(xs[0], ys[1])
        * (abar(xs[1], xs[0]) / (xs[1] - xs[0]))
        * control.derivative(0, 1).evaluate(xs)
        + abar(xs[1], ys[0]) * abar(xs[1], ys[1])
        * (abar(xs[0], xs[1]) / (xs[0] - xs[1]))
        * control.derivative(1, 1).evaluate(xs))
    value = omega_leading_apply(control, point, ctx)
    assert abs(value - expected) <= 1e-12 * max(abs(expected), 1e-12)
    extracted = omega_actions(control, point, ctx).leading
    assert abs(extracted - expected) <= 1e-9 * max(abs(expected), 1e-12)


def test_multipoly_derivative_beyond_degree_is_zero():
    poly = MultiPoly(np.array([1.0, 2.0, 3.0]))  # degree 2 in one variable
    assert np.all(poly.derivative(0, 3).coeffs == 0)
