"""Dynamical R-matrix, monodromy operators, and Yang-Baxter checks.

Conventions, fixed once and used everywhere:

* Two-level sites; basis index packs spins most-significant-bit first,
  bit value 0 = up, 1 = down.  The all-up chain state is index 0.
* The 4x4 vertex matrix lives in the ordered basis
  (up-up, up-down, down-up, down-down) with the *first* factor the
  auxiliary space.
* Ordered products run left to right in site index: the factor at
  site 1 is the leftmost matrix.  Matrix composition is literal, so the
  rightmost factor acts first on kets.
* Operator-valued shifts of the dynamical parameter are never formal:
  the spin operators involved are diagonal, so the vertex matrix is
  evaluated per input basis state on each weight sector.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DynamicalPole
from .special_fn import Regime, f_weight, trig_weights

#: Relative floor below which a dynamical denominator counts as a pole.
POLE_RTOL = 1e-12


@dataclass(frozen=True)
class TolerancePolicy:
    """Residual metric and pass threshold.

    The residual between two arrays is
    ``max|A - B| / max(max|A|, max|B|, abs_floor)``; a check passes when
    the residual does not exceed ``rel_tol``.
    """

    rel_tol: float = 1e-9
    abs_floor: float = 1e-300

    def residual(self, a, b) -> float:
        a = np.asarray(getattr(a, "matrix", a), dtype=complex)
        b = np.asarray(getattr(b, "matrix", b), dtype=complex)
        num = np.max(np.abs(a - b))
        den = max(np.max(np.abs(a)), np.max(np.abs(b)), self.abs_floor)
        return float(num / den)

    def passes(self, residual: float) -> bool:
        return residual <= self.rel_tol


@dataclass(frozen=True)
class ModelContext:
    """Single source of model truth: chain length, couplings, regime, tolerances."""

    L: int
    gamma: complex
    mu: tuple[complex, ...]
    regime: Regime
    tol: TolerancePolicy = field(default_factory=TolerancePolicy)
    allow_degenerate_gamma: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", complex(self.gamma))
        object.__setattr__(self, "mu", tuple(complex(m) for m in self.mu))
        if not (1 <= self.L <= 10):
            raise ValueError(f"L = {self.L} outside the dense-matrix range 1..10")
        if len(self.mu) != self.L:
            raise ValueError(f"len(mu) = {len(self.mu)} but L = {self.L}")
        if not self.allow_degenerate_gamma:
            if self.gamma == 0 or abs(self.f(self.gamma)) < 1e-12:
                raise ValueError(
                    "gamma is a zero of the weight function; the c-weights vanish "
                    "identically (pass allow_degenerate_gamma=True to force)"
                )

    @property
    def dim(self) -> int:
        return 1 << self.L

    @property
    def is_elliptic(self) -> bool:
        return self.regime.is_elliptic

    def f(self, z: complex) -> complex:
        return f_weight(z, self.regime)


@dataclass(frozen=True)
class ChainOperator:
    """Dense complex operator on the 2^L chain space."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.ascontiguousarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if m.shape[0] & (m.shape[0] - 1):
            raise ValueError(f"dimension {m.shape[0]} is not a power of two")
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("chain operator has non-finite entries")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other) -> "ChainOperator":
        return ChainOperator(self.matrix @ np.asarray(getattr(other, "matrix", other)))

    def __rmul__(self, scalar: complex) -> "ChainOperator":
        return ChainOperator(scalar * self.matrix)

    def __add__(self, other) -> "ChainOperator":
        return ChainOperator(self.matrix + other.matrix)

    def __sub__(self, other) -> "ChainOperator":
        return ChainOperator(self.matrix - other.matrix)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(vec, dtype=complex)

    def max_norm(self) -> float:
        return float(np.max(np.abs(self.matrix)))


def r_matrix(lam: complex, theta: complex, ctx: ModelContext) -> np.ndarray:
    """4x4 vertex matrix at spectral parameter ``lam``.

    Elliptic regime (height-dependent weights):

        a    = f(lam + gamma)
        b_+- = f(lam) f(theta -+ gamma) / f(theta)
        c_+- = f(gamma) f(theta -+ lam) / f(theta)

    Trigonometric regime: the symmetric six-vertex matrix with weights
    (sinh(lam+gamma), sinh(lam), sinh(gamma)); ``theta`` is ignored.
    """
    if not ctx.is_elliptic:
        a, b, c = trig_weights(lam, ctx.gamma)
        return np.array([[a, 0, 0, 0],
                         [0, b, c, 0],
                         [0, c, b, 0],
                         [0, 0, 0, a]], dtype=complex)
    f = ctx.f
    g = ctx.gamma
    ft = f(theta)
    if abs(ft) <= POLE_RTOL * max(abs(f(theta - g)), abs(f(theta + g)), abs(f(g))):
        raise DynamicalPole(f"f(theta) ~ 0 at theta = {theta}")
    a = f(lam + g)
    bp = f(lam) * f(theta - g) / ft
    bm = f(lam) * f(theta + g) / ft
    cp = f(g) * f(theta - lam) / ft
    cm = f(g) * f(theta + lam) / ft
    return np.array([[a, 0, 0, 0],
                     [0, bp, cp, 0],
                     [0, cm, bm, 0],
                     [0, 0, 0, a]], dtype=complex)


def _dyn_embed(vertex_of_weight: Callable[[int], np.ndarray],
               pair: tuple[int, int],
               shift_sites: Sequence[int],
               n_sites: int) -> np.ndarray:
    """Embed a two-site vertex operator into the ``n_sites`` product space.

    ``vertex_of_weight(w)`` must return the 4x4 block evaluated with the
    dynamical argument shifted for spin-weight ``w``, where ``w`` is the
    signed spin sum (+1 up, -1 down) of ``shift_sites`` in the *input*
    basis state.  With an empty ``shift_sites`` this is a plain embedding.
    """
    i, j = pair
    dim = 1 << n_sites
    out = np.zeros((dim, dim), dtype=complex)
    bit_i = n_sites - 1 - i
    bit_j = n_sites - 1 - j
    shift_bits = tuple(n_sites - 1 - k for k in shift_sites)
    cache: dict[int, np.ndarray] = {}
    clear_mask = ~((1 << bit_i) | (1 << bit_j))
    for col in range(dim):
        w = 0
        for b in shift_bits:
            w += 1 - 2 * ((col >> b) & 1)
        block = cache.get(w)
        if block is None:
            block = cache[w] = vertex_of_weight(w)
        col_in = 2 * ((col >> bit_i) & 1) + ((col >> bit_j) & 1)
        base = col & clear_mask
        for si in (0, 1):
            for sj in (0, 1):
                amp = block[2 * si + sj, col_in]
                if amp != 0.0:
                    out[base | (si << bit_i) | (sj << bit_j), col] = amp
    return out


def _embed(lam: complex, theta: complex, ctx: ModelContext,
           pair: tuple[int, int], shift_sites: Sequence[int],
           n_sites: int) -> np.ndarray:
    if not ctx.is_elliptic:
        shift_sites = ()
    g = ctx.gamma
    return _dyn_embed(lambda w: r_matrix(lam, theta - g * w, ctx),
                      pair, shift_sites, n_sites)


def verify_dybe(l1: complex, l2: complex, l3: complex, theta: complex,
                ctx: ModelContext) -> float:
    """Residual of the dynamical Yang-Baxter equation on three sites.

    Both sides are built as 8x8 matrices; the shift on the spectator
    space is realized sector-by-sector.  In the trigonometric regime the
    shifts are inert and this reduces to the ordinary Yang-Baxter
    equation.
    """
    emb = lambda lam, t, pair, shift: _embed(lam, t, ctx, pair, shift, 3)
    lhs = emb(l1 - l2, theta, (0, 1), (2,)) \
        @ emb(l1 - l3, theta, (0, 2), ()) \
        @ emb(l2 - l3, theta, (1, 2), (0,))
    rhs = emb(l2 - l3, theta, (1, 2), ()) \
        @ emb(l1 - l3, theta, (0, 2), (1,)) \
        @ emb(l1 - l2, theta, (0, 1), ())
    return ctx.tol.residual(lhs, rhs)


@functools.lru_cache(maxsize=512)
def monodromy_blocks(lam: complex, theta: complex, ctx: ModelContext
                     ) -> tuple[ChainOperator, ChainOperator, ChainOperator, ChainOperator]:
    """Auxiliary-space blocks (A, B, C, D) of the monodromy matrix.

    The monodromy matrix is the ordered product over sites
    ``i = 1..L`` of the vertex matrix at ``lam - mu_i`` with dynamical
    argument ``theta - gamma * (spin sum of sites i+1..L)``, evaluated
    per input basis state.  Blocks are taken in the auxiliary space:
    A = (up|T|up), B = (up|T|down), C = (down|T|up), D = (down|T|down).

    Results are memoized on (lam, theta, ctx); callers must treat the
    returned operators as read-only.
    """
    lam = complex(lam)
    theta = complex(theta)
    L = ctx.L
    n_sites = L + 1  # site 0 is auxiliary
    g = ctx.gamma
    total = np.eye(1 << n_sites, dtype=complex)
    for site in range(1, L + 1):
        lam_i = lam - ctx.mu[site - 1]
        shift = range(site + 1, L + 1) if ctx.is_elliptic else ()

        def vertex(w: int, _lam=lam_i, _site=site):
            try:
                return r_matrix(_lam, theta - g * w, ctx)
            except DynamicalPole as exc:
                raise DynamicalPole(
                    f"site {_site}, weight sector {w:+d}: {exc}") from exc

        total = total @ _dyn_embed(vertex, (0, site), shift, n_sites)
    d = 1 << L
    return (ChainOperator(total[:d, :d]), ChainOperator(total[:d, d:]),
            ChainOperator(total[d:, :d]), ChainOperator(total[d:, d:]))


def verify_rll(l1: complex, l2: complex, theta: complex,
               ctx: ModelContext) -> float:
    """Residual of the dynamical RLL exchange relation.

    Built on auxiliary_a x auxiliary_b x chain.  The operator-valued
    dynamical arguments (total chain weight for the vertex factor, one
    auxiliary weight for the inner monodromy) are evaluated
    sector-by-sector through the same per-column mechanism used for the
    monodromy itself.
    """
    L = ctx.L
    n_sites = L + 2  # 0, 1 auxiliary; 2..L+1 chain
    g = ctx.gamma
    chain = list(range(2, L + 2))

    def mono(aux: int, lam: complex, extra_shift: tuple[int, ...]) -> np.ndarray:
        total = np.eye(1 << n_sites, dtype=complex)
        for k in range(L):
            shift = extra_shift + tuple(chain[k + 1:]) if ctx.is_elliptic else ()
            total = total @ _embed(lam - ctx.mu[k], theta, ctx,
                                   (aux, chain[k]), shift, n_sites)
        return total

    r_ab = lambda shift: _embed(l1 - l2, theta, ctx, (0, 1), shift, n_sites)
    lhs = r_ab(tuple(chain)) @ mono(0, l1, ()) @ mono(1, l2, (0,))
    rhs = mono(1, l2, ()) @ mono(0, l1, (1,)) @ r_ab(())
    return ctx.tol.residual(lhs, rhs)


def weight_operator(ctx: ModelContext) -> ChainOperator:
    """Diagonal spin-weight operator: (number up - number down) per basis state."""
    L = ctx.L
    diag = np.array([L - 2 * bin(s).count("1") for s in range(ctx.dim)], dtype=complex)
    return ChainOperator(np.diag(diag))
