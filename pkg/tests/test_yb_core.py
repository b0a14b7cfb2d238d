import numpy as np
import pytest

from yblab.errors import DynamicalPole
from yblab.sampling import random_context, sample_spectral, sample_theta
from yblab.special_fn import Regime, f_weight
from yblab.yb_core import (ChainOperator, ModelContext, TolerancePolicy,
                           monodromy_blocks, r_matrix, verify_dybe, verify_rll,
                           weight_operator)

H = np.diag([1.0, -1.0])


def test_tolerance_policy_metric():
    tol = TolerancePolicy()
    a = np.array([[1.0, 0.0], [0.0, 1.0]])
    b = a + 1e-12
    assert tol.residual(a, b) == pytest.approx(1e-12, rel=1e-3)
    assert tol.passes(tol.residual(a, b))


def test_context_validation():
    with pytest.raises(ValueError):
        ModelContext(2, 0.5, (0.1,), Regime.trigonometric())  # len(mu) != L
    with pytest.raises(ValueError):
        ModelContext(2, 0.0, (0.1, 0.2), Regime.trigonometric())  # gamma = 0
    with pytest.raises(ValueError):
        ModelContext(11, 0.5, (0.1,) * 11, Regime.trigonometric())  # over the cap
    ModelContext(2, 0.0, (0.1, 0.2), Regime.trigonometric(),
                 allow_degenerate_gamma=True)


def test_r_matrix_gamma_zero_is_scalar(rng):
    ctx = ModelContext(1, 0.0, (0.0,), Regime.elliptic(0.2),
                       allow_degenerate_gamma=True)
    lam, theta = 0.3 + 0.1j, 0.8 - 0.05j
    r = r_matrix(lam, theta, ctx)
    expected = f_weight(lam, ctx.regime) * np.eye(4)
    assert np.max(np.abs(r - expected)) < 1e-12 * np.max(np.abs(r))


def test_r_matrix_weight_zero_condition(rng):
    ctx = random_context(1, rng)
    total_h = np.kron(H, np.eye(2)) + np.kron(np.eye(2), H)
    for _ in range(10):
        lam = complex(rng.uniform(-1, 1), rng.uniform(-0.4, 0.4))
        theta = sample_theta(ctx, rng)
        r = r_matrix(lam, theta, ctx)
        comm = r @ total_h - total_h @ r
        assert np.max(np.abs(comm)) < 1e-13 * np.max(np.abs(r))


def test_r_matrix_trig_at_zero_spectral():
    import cmath
    ctx = random_context(2, np.random.default_rng(0), elliptic=False)
    r = r_matrix(0.0, 0.0, ctx)
    sg = cmath.sinh(ctx.gamma)
    expected = np.array([[sg, 0, 0, 0],
                         [0, 0, sg, 0],
                         [0, sg, 0, 0],
                         [0, 0, 0, sg]])
    assert np.max(np.abs(r - expected)) == 0


def test_r_matrix_dynamical_pole():
    ctx = random_context(1, np.random.default_rng(1))
    with pytest.raises(DynamicalPole):
        r_matrix(0.3, 0.0, ctx)  # f(0) = 0


@pytest.mark.parametrize("elliptic,tol", [(True, 1e-10), (False, 1e-12)])
def test_dybe_random_points(elliptic, tol, rng):
    # trigonometric shifts are inert: ordinary Yang-Baxter, tighter bound
    ctx = random_context(1, rng, elliptic=elliptic)
    for _ in range(10):
        l1, l2, l3 = sample_spectral(ctx, rng, 3)
        theta = sample_theta(ctx, rng, range(-2, 3))
        assert verify_dybe(l1, l2, l3, theta, ctx) <= tol


def test_dybe_coincident_points(rng):
    ctx = random_context(1, rng)
    lam = 0.4 + 0.1j
    theta = sample_theta(ctx, rng, range(-2, 3))
    assert verify_dybe(lam, lam, -0.3 + 0.2j, theta, ctx) <= 1e-10


@pytest.mark.parametrize("L", [1, 2, 3, 4])
@pytest.mark.parametrize("elliptic", [True, False])
def test_rll_random_points(L, elliptic, rng):
    ctx = random_context(L, rng, elliptic=elliptic)
    for _ in range(3):
        l1, l2 = sample_spectral(ctx, rng, 2)
        theta = sample_theta(ctx, rng, range(-(L + 1), L + 2))
        assert verify_rll(l1, l2, theta, ctx) <= 1e-9


def test_rll_coincident(rng):
    ctx = random_context(2, rng)
    lam = 0.2 - 0.1j
    theta = sample_theta(ctx, rng, range(-3, 4))
    assert verify_rll(lam, lam, theta, ctx) <= 1e-9


def test_monodromy_single_site_creation_entry(rng):
    # L = 1: the creation block has a single nonzero entry, the c_+ weight
    ctx = random_context(1, rng)
    f = ctx.f
    lam = 0.37 + 0.21j
    theta = sample_theta(ctx, rng, range(-2, 3))
    b = monodromy_blocks(lam, theta, ctx)[1].matrix
    expected = f(ctx.gamma) * f(theta - (lam - ctx.mu[0])) / f(theta)
    assert abs(b[1, 0] - expected) < 1e-14 * abs(expected)
    assert b[0, 0] == b[0, 1] == b[1, 1] == 0


def test_monodromy_trig_diagonal_action(rng):
    ctx = random_context(3, rng, elliptic=False)
    lam = 0.52 - 0.13j
    a_block = monodromy_blocks(lam, 0.0, ctx)[0]
    up = np.zeros(ctx.dim, dtype=complex)
    up[0] = 1.0
    eig = np.prod([np.sinh(lam - m + ctx.gamma) for m in ctx.mu])
    assert np.max(np.abs(a_block.apply(up) - eig * up)) < 1e-14 * abs(eig)


def test_monodromy_weight_grading(rng):
    # A, D preserve total weight; B lowers by 2; C raises by 2 -- exactly
    ctx = random_context(3, rng)
    lam = 0.11 + 0.08j
    theta = sample_theta(ctx, rng, range(-4, 5))
    blocks = monodromy_blocks(lam, theta, ctx)
    weights = np.array([ctx.L - 2 * bin(s).count("1") for s in range(ctx.dim)])
    delta = np.subtract.outer(weights, weights)  # w(row) - w(col)
    for block, shift in zip(blocks, (0, -2, 2, 0)):
        off = block.matrix[delta != shift]
        assert np.max(np.abs(off)) < 1e-14


def test_weight_operator_small_cases():
    ctx1 = random_context(1, np.random.default_rng(4))
    assert np.array_equal(weight_operator(ctx1).matrix, np.diag([1.0 + 0j, -1.0]))
    ctx3 = random_context(3, np.random.default_rng(5))
    w = weight_operator(ctx3)
    up = np.zeros(8, dtype=complex)
    up[0] = 1.0
    down = np.zeros(8, dtype=complex)
    down[-1] = 1.0
    assert np.array_equal(w.apply(up), 3.0 * up)
    assert np.array_equal(w.apply(down), -3.0 * down)


def test_chain_operator_rejects_nonfinite():
    with pytest.raises(ValueError):
        ChainOperator(np.array([[np.nan, 0], [0, 1]], dtype=complex))
