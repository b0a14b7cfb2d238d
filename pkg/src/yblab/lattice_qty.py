"""Brute-force lattice quantities.

Everything here is computed by literal contraction of monodromy blocks
on the dense chain space.  These are the reference oracles against which
the closed-form residue evaluators are checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import RegimeMismatch, SizeMismatch
from .yb_core import ModelContext, monodromy_blocks


@dataclass(frozen=True)
class SpectralSet:
    """Ordered set of spectral parameters with removal/prepend operations."""

    values: tuple[complex, ...]
    label: str = "X"

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(complex(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[complex]:
        return iter(self.values)

    def __getitem__(self, k: int) -> complex:
        return self.values[k]

    def remove(self, k: int) -> "SpectralSet":
        """Drop the k-th entry (0-based), keeping order."""
        return SpectralSet(self.values[:k] + self.values[k + 1:], self.label)

    def prepend(self, value: complex) -> "SpectralSet":
        return SpectralSet((complex(value),) + self.values, self.label)

    def permuted(self, perm: Sequence[int]) -> "SpectralSet":
        return SpectralSet(tuple(self.values[p] for p in perm), self.label)


def as_values(points: "SpectralSet | Iterable[complex]") -> tuple[complex, ...]:
    """Coerce a SpectralSet or plain sequence to a tuple of complex values."""
    if isinstance(points, SpectralSet):
        return points.values
    return tuple(complex(v) for v in points)


@dataclass(frozen=True)
class BoundaryVectors:
    """All-up and all-down chain states (unit basis vectors)."""

    ket0: np.ndarray
    ket0bar: np.ndarray

    @classmethod
    def for_context(cls, ctx: ModelContext) -> "BoundaryVectors":
        up = np.zeros(ctx.dim, dtype=complex)
        up[0] = 1.0
        down = np.zeros(ctx.dim, dtype=complex)
        down[-1] = 1.0
        return cls(up, down)


def dwbc_partition(X, theta: complex, ctx: ModelContext) -> complex:
    """Domain-wall partition function by direct contraction.

    Applies the creation blocks B(lam_j, theta + j*gamma), j = 1..L in
    order, to the all-up state and projects on the all-down state.  The
    dynamical argument is tied to the slot j, not to the value occupying
    it, which is what makes the result symmetric in the spectral set.
    """
    lams = as_values(X)
    if len(lams) != ctx.L:
        raise SizeMismatch(f"need exactly L = {ctx.L} spectral points, got {len(lams)}")
    # shares the exact code path with projecting creation_string
    return complex(creation_string(lams, theta, ctx)[-1, 0])


def creation_string(lams: Sequence[complex], theta: complex,
                    ctx: ModelContext) -> np.ndarray:
    """Ordered product of creation blocks B(lam_j, theta + j*gamma), j = 1..n."""
    out = np.eye(ctx.dim, dtype=complex)
    for j, lam in enumerate(lams, start=1):
        out = out @ monodromy_blocks(lam, theta + j * ctx.gamma, ctx)[1].matrix
    return out


def scalar_product_bf(XB, YC, ctx: ModelContext) -> complex:
    """Off-shell scalar product <0| prod C(y) prod B(x) |0>, six-vertex regime.

    Defined only after the trigonometric limit; elliptic contexts are
    rejected.  ``n > L`` is allowed and gives an exact zero (the
    creation string leaves the weight lattice).
    """
    if ctx.is_elliptic:
        raise RegimeMismatch("scalar products are defined in the trigonometric regime only")
    xb = as_values(XB)
    yc = as_values(YC)
    if len(xb) != len(yc):
        raise SizeMismatch(f"|XB| = {len(xb)} differs from |YC| = {len(yc)}")
    vec = np.zeros(ctx.dim, dtype=complex)
    vec[0] = 1.0
    for lam in reversed(xb):
        vec = monodromy_blocks(lam, 0.0, ctx)[1].apply(vec)
    for lam in yc:
        vec = monodromy_blocks(lam, 0.0, ctx)[2].apply(vec)
    return complex(vec[0])


def hw_action_residuals(lam: complex, theta: complex,
                        ctx: ModelContext) -> dict[str, float]:
    """Residuals of the highest/lowest-weight action statements.

    The diagonal blocks act on the extremal states by explicit
    eigenvalues; the off-diagonal blocks annihilate one of them.  Right
    actions (on kets) and left actions (on plain-transpose bras) are both
    checked.  Annihilation residuals are normalized by the block's own
    max norm.  In the trigonometric regime the eigenvalues are the
    products of six-vertex weights a resp. b over the inhomogeneities.
    """
    f = ctx.f
    g = ctx.gamma
    L = ctx.L
    a_mat, b_mat, c_mat, d_mat = monodromy_blocks(lam, theta, ctx)
    up = np.zeros(ctx.dim, dtype=complex)
    up[0] = 1.0
    down = np.zeros(ctx.dim, dtype=complex)
    down[-1] = 1.0

    prod_shift = np.prod([f(lam - m + g) for m in ctx.mu])
    prod_plain = np.prod([f(lam - m) for m in ctx.mu])
    if ctx.is_elliptic:
        eig_a_up = prod_shift
        eig_a_down = f(theta - g) / f(theta + (L - 1) * g) * prod_plain
        eig_d_up = f(theta + g) / f(theta - (L - 1) * g) * prod_plain
        eig_d_down = prod_shift
    else:
        eig_a_up = prod_shift          # prod a(lam - mu_j)
        eig_a_down = prod_plain        # prod b(lam - mu_j)
        eig_d_up = prod_plain
        eig_d_down = prod_shift

    rho = ctx.tol.residual
    floor = ctx.tol.abs_floor
    res = {
        "A_ket_up": rho(a_mat.apply(up), eig_a_up * up),
        "A_ket_down": rho(a_mat.apply(down), eig_a_down * down),
        "D_ket_up": rho(d_mat.apply(up), eig_d_up * up),
        "D_ket_down": rho(d_mat.apply(down), eig_d_down * down),
        "A_bra_down": rho(down @ a_mat.matrix, eig_a_down * down),
        "A_bra_up": rho(up @ a_mat.matrix, eig_a_up * up),
        "D_bra_up": rho(up @ d_mat.matrix, eig_d_up * up),
        "D_bra_down": rho(down @ d_mat.matrix, eig_d_down * down),
        "C_ket_up": float(np.max(np.abs(c_mat.apply(up))) / max(c_mat.max_norm(), floor)),
        "B_ket_down": float(np.max(np.abs(b_mat.apply(down))) / max(b_mat.max_norm(), floor)),
        "C_bra_down": float(np.max(np.abs(down @ c_mat.matrix)) / max(c_mat.max_norm(), floor)),
        "B_bra_up": float(np.max(np.abs(up @ b_mat.matrix)) / max(b_mat.max_norm(), floor)),
    }
    return res


def check_hw_actions(lam: complex, theta: complex, ctx: ModelContext) -> float:
    """Worst residual over all highest/lowest-weight action statements."""
    return max(hw_action_residuals(lam, theta, ctx).values())
