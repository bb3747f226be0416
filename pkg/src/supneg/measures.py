"""Entanglement measures from antisymmetric-generator bilinear forms.

Per cut gamma|rest, every pair alpha=(i,j) of kept-subsystem basis indices
and beta=(k,l) of complement indices selects one product J = L_alpha x S_beta
of antisymmetric generators L = |i><j| - |j><i| (unnormalized convention; the
1/sqrt(2)-scaled variant breaks the identities below by factors 2 and 4).
The bilinear forms B = <psi| J |phi*> assemble into a D1 x D2 matrix T whose

  * squared Frobenius norm gives the squared concurrence 2(1 - Tr rho^2), and
  * trace norm gives the negativity ||rho^{T_gamma}||_1 - 1

for psi = phi normalized.  The trace norm is the evaluation used throughout:
the entry-wise sum of |B| is basis dependent and overshoots the negativity
for states whose matricization is not Schmidt aligned.

Determinism: generator pairs are enumerated lexicographically and every
reduction has a fixed order, so identical inputs give bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .states import (
    Bipartition,
    PureState,
    bipartitions,
    matricize,
    reduced_density,
    schmidt_spectrum,
)

CONVENTION_TOL = 1e-8  # disagreement between concurrence paths beyond this is a bug
BISEPARABLE_TOL = 1e-9


class GeneratorPair(NamedTuple):
    """Index pair (i, j), i < j, selecting one antisymmetric generator."""

    i: int
    j: int


class ConcurrenceSq(NamedTuple):
    """Squared concurrence from both evaluation paths, for diagnostics."""

    density: float  # 2 (1 - Tr rho_gamma^2)
    generator: float  # sum_{alpha,beta} |B_{alpha beta}|^2

    @property
    def difference(self) -> float:
        return self.generator - self.density


def generator_pairs(dim: int) -> list[GeneratorPair]:
    """All (i, j) with i < j < dim, lexicographic; dim*(dim-1)/2 of them."""
    if dim < 2:
        raise ValueError(f"generator pairs need dimension >= 2, got {dim}")
    return [GeneratorPair(i, j) for i in range(dim - 1) for j in range(i + 1, dim)]


def _conj_matricizations(
    psi: PureState, phi: PureState, cut: Bipartition
) -> tuple[np.ndarray, np.ndarray]:
    if psi.dims != phi.dims:
        raise ValueError(f"dims mismatch: {psi.dims} vs {phi.dims}")
    return matricize(psi, cut).conj(), matricize(phi, cut).conj()


def bilinear_form(
    psi: PureState,
    phi: PureState,
    cut: Bipartition,
    alpha: GeneratorPair,
    beta: GeneratorPair,
) -> complex:
    """<psi| L_alpha x S_beta |phi*> for one generator pair.

    Each J has exactly 4 nonzero entries, so this is four products of
    conjugated amplitudes read off the matricizations:

        B = p[i,k] q[j,l] - p[i,l] q[j,k] - p[j,k] q[i,l] + p[j,l] q[i,k]

    with p, q the conjugated matricizations of psi, phi.
    """
    p, q = _conj_matricizations(psi, phi, cut)
    i, j = alpha
    k, l = beta
    if not (0 <= i < j < cut.row_dim and 0 <= k < l < cut.col_dim):
        raise ValueError(f"generator pair out of range for cut {cut.label}")
    # grouped so psi <-> phi swaps summands pairwise: exact symmetry in floats
    return complex(
        (p[i, k] * q[j, l] + q[i, k] * p[j, l])
        - (p[i, l] * q[j, k] + q[i, l] * p[j, k])
    )


def bilinear_matrix(psi: PureState, phi: PureState, cut: Bipartition) -> np.ndarray:
    """All bilinear forms as a D1 x D2 matrix, rows alpha, columns beta.

    Row and column pairs run lexicographically.  For psi = phi the entries
    are twice the 2x2 minors of the conjugated matricization.
    """
    p, q = _conj_matricizations(psi, phi, cut)
    ri, rj = np.triu_indices(cut.row_dim, 1)
    ci, cj = np.triu_indices(cut.col_dim, 1)
    pi, pj = p[ri], p[rj]
    qi, qj = q[ri], q[rj]
    return (pi[:, ci] * qj[:, cj] + qi[:, ci] * pj[:, cj]) - (
        pi[:, cj] * qj[:, ci] + qi[:, cj] * pj[:, ci]
    )


def cross_sum(psi: PureState, phi: PureState, cut: Bipartition) -> float:
    """Trace norm of the bilinear-form matrix for one cut.

    Nonnegative, symmetric in (psi, phi), and quadratic under rescaling of
    either argument -- so applied to an unnormalized chi it directly yields
    ||chi||^2 times the per-cut negativity of the normalized state.
    """
    t = bilinear_matrix(psi, phi, cut)
    return float(np.linalg.svd(t, compute_uv=False).sum())


def _require_normalized(state: PureState, what: str) -> None:
    if abs(state.norm_sq - 1.0) > 1e-10:
        raise ValueError(f"{what} requires a normalized state")


def negativity_so(state: PureState, cut: Bipartition) -> float:
    """Per-cut negativity via the generator representation."""
    _require_normalized(state, "negativity_so")
    return cross_sum(state, state, cut)


def negativity_schmidt(state: PureState, cut: Bipartition) -> float:
    """Per-cut negativity from the Schmidt spectrum: (sum sqrt(lambda))^2 - 1."""
    _require_normalized(state, "negativity_schmidt")
    lam = schmidt_spectrum(state, cut).lambdas
    return float(np.sqrt(lam).sum() ** 2 - 1.0)


def multipartite_negativity(state: PureState) -> float:
    """Total negativity 2 * (N_A + N_B + N_C)."""
    return 2.0 * sum(negativity_so(state, cut) for cut in bipartitions(state))


def gme_negativity(state: PureState) -> float:
    """min over cuts of the per-cut negativity; zero iff biseparable."""
    return min(negativity_so(state, cut) for cut in bipartitions(state))


def concurrence_sq(state: PureState, cut: Bipartition) -> ConcurrenceSq:
    """Squared per-cut concurrence, computed both ways.

    Returns the linear-entropy value 2(1 - Tr rho^2) together with the
    generator-sum value; raises if they disagree beyond CONVENTION_TOL,
    which would signal a generator normalization bug.
    """
    _require_normalized(state, "concurrence_sq")
    rho = reduced_density(state, cut)
    purity = float((np.abs(rho) ** 2).sum())
    density = 2.0 * (1.0 - purity)
    generator = float((np.abs(bilinear_matrix(state, state, cut)) ** 2).sum())
    pair = ConcurrenceSq(density=density, generator=generator)
    if abs(pair.difference) > CONVENTION_TOL:
        raise ValueError(
            f"concurrence paths disagree by {pair.difference!r} on cut {cut.label}; "
            "generator convention is broken"
        )
    return pair


def multipartite_concurrence_sq(state: PureState) -> float:
    """Sum over cuts of 2(1 - Tr rho_gamma^2)."""
    return sum(concurrence_sq(state, cut).density for cut in bipartitions(state))


def gme_concurrence(state: PureState) -> float:
    """min over cuts of sqrt(2 (1 - Tr rho_gamma^2))."""
    return min(
        float(np.sqrt(max(concurrence_sq(state, cut).density, 0.0)))
        for cut in bipartitions(state)
    )


@dataclass(frozen=True)
class BiseparabilityReport:
    separable: tuple[bool, bool, bool]  # per cut, A|BC first
    biseparable: bool
    negativities: tuple[float, float, float]
    tol: float


def is_biseparable(state: PureState, tol: float = BISEPARABLE_TOL) -> BiseparabilityReport:
    """Flag each cut as product (negativity <= tol) and the state as biseparable.

    For pure states a cut is product iff its negativity vanishes iff its
    Schmidt rank is 1; the flags below use the negativity test.
    """
    negs = tuple(negativity_so(state, cut) for cut in bipartitions(state))
    flags = tuple(n <= tol for n in negs)
    return BiseparabilityReport(
        separable=flags, biseparable=any(flags), negativities=negs, tol=tol
    )


@dataclass(frozen=True)
class MeasureReport:
    """All scalar measures of one state, in fixed serialization order."""

    n_a: float
    n_b: float
    n_c: float
    n_multi: float
    n_gme: float
    c2_a: float
    c2_b: float
    c2_c: float
    c2_multi: float
    c_gme: float
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self, include_diagnostics: bool = True) -> dict:
        out = {
            "n_a": self.n_a,
            "n_b": self.n_b,
            "n_c": self.n_c,
            "n_multi": self.n_multi,
            "n_gme": self.n_gme,
            "c2_a": self.c2_a,
            "c2_b": self.c2_b,
            "c2_c": self.c2_c,
            "c2_multi": self.c2_multi,
            "c_gme": self.c_gme,
        }
        if include_diagnostics and self.diagnostics:
            out["diagnostics"] = dict(self.diagnostics)
        return out


def measure_report(state: PureState) -> MeasureReport:
    """Evaluate every measure of a normalized tripartite state.

    The multipartite negativity is 2 * sum of the per-cut values and the
    GME negativity is their min, both by construction.  Diagnostics carry
    the Schmidt-path negativities, the concurrence path differences, and
    the GME concurrence without the factor 2 under the root (an alternate
    convention some references use).
    """
    _require_normalized(state, "measure_report")
    cuts = bipartitions(state)
    negs = [negativity_so(state, cut) for cut in cuts]
    c2 = [concurrence_sq(state, cut) for cut in cuts]
    c2_density = [pair.density for pair in c2]
    return MeasureReport(
        n_a=negs[0],
        n_b=negs[1],
        n_c=negs[2],
        n_multi=2.0 * sum(negs),
        n_gme=min(negs),
        c2_a=c2_density[0],
        c2_b=c2_density[1],
        c2_c=c2_density[2],
        c2_multi=sum(c2_density),
        c_gme=min(float(np.sqrt(max(v, 0.0))) for v in c2_density),
        diagnostics={
            "n_schmidt": [negativity_schmidt(state, cut) for cut in cuts],
            "c2_path_difference": [pair.difference for pair in c2],
            "c_gme_unit_prefactor": min(
                float(np.sqrt(max(v / 2.0, 0.0))) for v in c2_density
            ),
        },
    )
