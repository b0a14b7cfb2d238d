"""Admissible-point samplers for the random verification suites.

The verified identities have explicit poles at coincident spectral
points and at zeros of the weight function's shifted arguments; samplers
reject candidates until every relevant weight magnitude clears a floor,
so random suites never test on top of a singularity.
"""

from __future__ import annotations

import numpy as np

from .special_fn import Regime
from .yb_core import ModelContext, TolerancePolicy

#: Sampling rectangle for spectral parameters.
RECT_RE = (-1.0, 1.0)
RECT_IM = (-0.4, 0.4)
#: Inhomogeneities come from a smaller box so differences stay in range.
MU_RE = (-0.5, 0.5)
MU_IM = (-0.2, 0.2)
#: Weight-magnitude floor for admissibility.
MIN_WEIGHT = 1e-3

DEFAULT_GAMMA = 0.41 + 0.07j
DEFAULT_NOME = 0.2 + 0.0j


def draw_point(rng: np.random.Generator,
               re=RECT_RE, im=RECT_IM) -> complex:
    return complex(rng.uniform(*re), rng.uniform(*im))


def sample_spectral(ctx: ModelContext, rng: np.random.Generator, count: int,
                    avoid: tuple[complex, ...] = (),
                    max_tries: int = 10_000) -> tuple[complex, ...]:
    """Draw spectral points with pairwise-admissible differences.

    Candidates are rejected until |f(p - q)| > MIN_WEIGHT against every
    previously accepted point and every point in ``avoid``.
    """
    points: list[complex] = []
    tries = 0
    while len(points) < count:
        tries += 1
        if tries > max_tries:
            raise RuntimeError("admissible-point sampling did not terminate")
        cand = draw_point(rng)
        others = points + list(avoid)
        if all(abs(ctx.f(cand - o)) > MIN_WEIGHT for o in others):
            points.append(cand)
    return tuple(points)


def sample_theta(ctx: ModelContext, rng: np.random.Generator,
                 shifts: range | None = None,
                 max_tries: int = 10_000) -> complex:
    """Draw a dynamical parameter clear of weight-function zeros.

    ``shifts`` is the range of integer multiples k for which
    ``theta + k*gamma`` will actually be used; each must satisfy
    |f(theta + k*gamma)| > MIN_WEIGHT.  Trigonometric contexts do not
    use the dynamical parameter; zero is returned at once.
    """
    if not ctx.is_elliptic:
        return 0j
    if shifts is None:
        shifts = range(-(ctx.L + 2), 2 * ctx.L + 3)
    for _ in range(max_tries):
        cand = draw_point(rng)
        if all(abs(ctx.f(cand + k * ctx.gamma)) > MIN_WEIGHT for k in shifts):
            return cand
    raise RuntimeError("admissible theta sampling did not terminate")


def sample_mu(rng: np.random.Generator, count: int) -> tuple[complex, ...]:
    """Inhomogeneities: distinct points from the small box."""
    points: list[complex] = []
    while len(points) < count:
        cand = complex(rng.uniform(*MU_RE), rng.uniform(*MU_IM))
        if all(abs(cand - o) > 1e-2 for o in points):
            points.append(cand)
    return tuple(points)


def random_context(L: int, rng: np.random.Generator, *,
                   elliptic: bool = True,
                   gamma: complex = DEFAULT_GAMMA,
                   nome: complex = DEFAULT_NOME,
                   tol: TolerancePolicy | None = None) -> ModelContext:
    """Model context with seeded random inhomogeneities."""
    regime = Regime.elliptic(nome) if elliptic else Regime.trigonometric()
    return ModelContext(L=L, gamma=gamma, mu=sample_mu(rng, L), regime=regime,
                        tol=tol or TolerancePolicy())
