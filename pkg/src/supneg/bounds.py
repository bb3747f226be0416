"""Upper and lower bounds on negativities of two-component superpositions.

For chi = a1*psi1 + a2*psi2 the bilinear-form matrix of chi splits into the
component matrices, so by the norm triangle inequality the per-cut cross
sums S_gamma(psi_i, psi_j) sandwich both ||chi||^2 N(chi') (total negativity,
cut sums weighted by the global factor 2) and ||chi||^2 N_GME(chi') (min over
cuts, combined through the min/max lemma).  Lower bounds may be negative as
stated; clamped-at-zero variants are reported alongside.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import library
from .measures import cross_sum
from .states import COEFF_TOL, PureState, bipartitions, superpose

# Previously reported closed-form constants for the GHZ/W-superposition
# family, kept only for the comparison emitted by sweeps; this package's
# conventions do not reproduce them (see README).
REPORTED_TOTAL_CONSTANTS = (32.0, 16.0 * np.sqrt(6.0), 24.0)
REPORTED_GME_CONSTANTS = (16.0 / 3.0, (8.0 / 3.0) * np.sqrt(6.0), 4.0)


@dataclass(frozen=True)
class SuperpositionSpec:
    """Coefficients and components of a two-state superposition."""

    a1: complex
    a2: complex
    psi1: PureState
    psi2: PureState
    coeff_check: bool = True

    def __post_init__(self):
        object.__setattr__(self, "a1", complex(self.a1))
        object.__setattr__(self, "a2", complex(self.a2))
        if self.psi1.dims != self.psi2.dims:
            raise ValueError(f"dims mismatch: {self.psi1.dims} vs {self.psi2.dims}")
        weight = abs(self.a1) ** 2 + abs(self.a2) ** 2
        if self.coeff_check and abs(weight - 1.0) > COEFF_TOL:
            raise ValueError(
                f"coefficients must satisfy |a1|^2+|a2|^2=1, got {weight!r}"
            )

    def superposed(self) -> PureState:
        """The raw (unnormalized) vector a1*psi1 + a2*psi2."""
        return superpose(self.a1, self.psi1, self.a2, self.psi2, check_coefficients=False)

    def swapped(self) -> "SuperpositionSpec":
        return SuperpositionSpec(
            self.a2, self.a1, self.psi2, self.psi1, coeff_check=self.coeff_check
        )


@dataclass(frozen=True)
class CrossTermTable:
    """Per-cut raw cross sums and the derived bound coefficients.

    ``s11``, ``s22``, ``s12`` hold S_gamma(psi_i, psi_j) in cut order
    (A|BC, B|AC, C|AB).  The *_multi scalars aggregate over cuts with the
    total-negativity prefactor 2 (so f11_multi = |a1|^2 N(psi1)); the
    f/g scalars take the max/min over cuts without that prefactor.
    """

    s11: tuple[float, float, float]
    s22: tuple[float, float, float]
    s12: tuple[float, float, float]
    f11_multi: float
    f22_multi: float
    f12_multi: float
    f11: float
    f22: float
    f12: float
    g11: float
    g22: float
    g12: float

    def to_dict(self) -> dict:
        return {
            "s11": list(self.s11),
            "s22": list(self.s22),
            "s12": list(self.s12),
            "f11_multi": self.f11_multi,
            "f22_multi": self.f22_multi,
            "f12_multi": self.f12_multi,
            "f11": self.f11,
            "f22": self.f22,
            "f12": self.f12,
            "g11": self.g11,
            "g22": self.g22,
            "g12": self.g12,
        }


class BoundTriple(NamedTuple):
    upper: float
    lower_raw: float  # max of the signed combinations, may be negative
    lower: float  # lower_raw clamped at zero (negativities are nonnegative)


@dataclass(frozen=True)
class BoundsReport:
    """Exact scaled negativities of a superposition next to all four bounds."""

    norm_sq: float
    n_exact: float  # ||chi||^2 N(chi')
    ngme_exact: float  # ||chi||^2 N_GME(chi')
    t1_upper: float
    t1_lower_raw: float
    t1_lower: float
    t2_upper: float
    t2_lower_raw: float
    t2_lower: float

    @property
    def t2_gap(self) -> float:
        return self.t2_upper - self.ngme_exact

    def to_dict(self) -> dict:
        return {
            "norm_sq": self.norm_sq,
            "n_exact": self.n_exact,
            "ngme_exact": self.ngme_exact,
            "t1_upper": self.t1_upper,
            "t1_lower_raw": self.t1_lower_raw,
            "t1_lower": self.t1_lower,
            "t2_upper": self.t2_upper,
            "t2_lower_raw": self.t2_lower_raw,
            "t2_lower": self.t2_lower,
            "t2_gap": self.t2_gap,
        }


def cross_terms(spec: SuperpositionSpec) -> CrossTermTable:
    """All nine raw cross sums (3 cuts x 3 state pairs) and derived scalars."""
    cuts = bipartitions(spec.psi1)
    s11 = tuple(cross_sum(spec.psi1, spec.psi1, cut) for cut in cuts)
    s22 = tuple(cross_sum(spec.psi2, spec.psi2, cut) for cut in cuts)
    s12 = tuple(cross_sum(spec.psi1, spec.psi2, cut) for cut in cuts)
    w11 = abs(spec.a1) ** 2
    w22 = abs(spec.a2) ** 2
    w12 = abs(spec.a1 * spec.a2)
    return CrossTermTable(
        s11=s11,
        s22=s22,
        s12=s12,
        f11_multi=w11 * 2.0 * sum(s11),
        f22_multi=w22 * 2.0 * sum(s22),
        f12_multi=w12 * 2.0 * sum(s12),
        f11=w11 * max(s11),
        f22=w22 * max(s22),
        f12=w12 * max(s12),
        g11=w11 * min(s11),
        g22=w22 * min(s22),
        g12=w12 * min(s12),
    )


def _total_bounds(t: CrossTermTable) -> BoundTriple:
    upper = t.f11_multi + t.f22_multi + 2.0 * t.f12_multi
    lower_raw = max(
        t.f11_multi - t.f22_multi - 2.0 * t.f12_multi,
        -t.f11_multi + t.f22_multi - 2.0 * t.f12_multi,
        -t.f11_multi - t.f22_multi + 2.0 * t.f12_multi,
    )
    return BoundTriple(upper, lower_raw, max(lower_raw, 0.0))


def _gme_bounds(t: CrossTermTable) -> BoundTriple:
    upper = min(
        t.g11 + t.f22 + 2.0 * t.f12,
        t.f11 + t.g22 + 2.0 * t.f12,
        t.f11 + t.f22 + 2.0 * t.g12,
    )
    lower_raw = max(
        t.g11 - t.f22 - 2.0 * t.f12,
        -t.f11 + t.g22 - 2.0 * t.f12,
        -t.f11 - t.f22 + 2.0 * t.g12,
    )
    return BoundTriple(upper, lower_raw, max(lower_raw, 0.0))


def total_negativity_bounds(
    spec: SuperpositionSpec, table: CrossTermTable | None = None
) -> BoundTriple:
    """Bounds on ||chi||^2 N(chi') for the total multipartite negativity."""
    return _total_bounds(table if table is not None else cross_terms(spec))


def gme_negativity_bounds(
    spec: SuperpositionSpec, table: CrossTermTable | None = None
) -> BoundTriple:
    """Bounds on ||chi||^2 N_GME(chi')."""
    return _gme_bounds(table if table is not None else cross_terms(spec))


def min_combine_upper(b: Sequence[float], c: Sequence[float], d: Sequence[float]) -> bool:
    """min_k(b_k + c_k + d_k) <= min(b) + max(c) + max(d), for positive triples."""
    _check_positive_triples(b, c, d)
    lhs = min(bk + ck + dk for bk, ck, dk in zip(b, c, d))
    return lhs <= min(b) + max(c) + max(d)


def min_combine_lower(b: Sequence[float], c: Sequence[float], d: Sequence[float]) -> bool:
    """min_k(b_k - c_k - d_k) >= min(b) - max(c) - max(d), for positive triples."""
    _check_positive_triples(b, c, d)
    lhs = min(bk - ck - dk for bk, ck, dk in zip(b, c, d))
    return lhs >= min(b) - max(c) - max(d)


def _check_positive_triples(*triples: Sequence[float]) -> None:
    for t in triples:
        if len(t) != 3:
            raise ValueError("expected triples of length 3")
        if any(not x > 0.0 for x in t):
            raise ValueError("all entries must be positive real numbers")


def evaluate_bounds(spec: SuperpositionSpec) -> BoundsReport:
    """Exact scaled negativities of the superposition and all four bounds.

    The exact values come straight from the cross sums of the raw chi:
    cross_sum is quadratic in its arguments, so no normalization step is
    needed and a vanishing-norm chi simply yields exact values near zero.
    """
    table = cross_terms(spec)
    chi = spec.superposed()
    cuts = bipartitions(chi)
    per_cut = [cross_sum(chi, chi, cut) for cut in cuts]
    t1 = _total_bounds(table)
    t2 = _gme_bounds(table)
    return BoundsReport(
        norm_sq=chi.norm_sq,
        n_exact=2.0 * sum(per_cut),
        ngme_exact=min(per_cut),
        t1_upper=t1.upper,
        t1_lower_raw=t1.lower_raw,
        t1_lower=t1.lower,
        t2_upper=t2.upper,
        t2_lower_raw=t2.lower_raw,
        t2_lower=t2.lower,
    )


def z_family_sweep(p_grid: Sequence[float], phi: float = 0.0) -> list[BoundsReport]:
    """Evaluate the GHZ/W superposition family on a grid of mixing weights."""
    for p in p_grid:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {p!r}")
    return [
        evaluate_bounds(library.z_family(library.ZFamilyParams(p=float(p), phi=phi)))
        for p in p_grid
    ]


SWEEP_COLUMNS = (
    "p",
    "phi",
    "norm_sq",
    "n_exact",
    "t1_upper",
    "t1_lower",
    "ngme_exact",
    "t2_upper",
    "t2_lower",
    "t2_gap",
)


def sweep_csv(p_grid: Sequence[float], phi: float, reports: Sequence[BoundsReport]) -> str:
    """CSV text for a sweep, one row per grid point, full float precision."""
    lines = [",".join(SWEEP_COLUMNS)]
    for p, r in zip(p_grid, reports):
        row = (
            float(p),
            float(phi),
            r.norm_sq,
            r.n_exact,
            r.t1_upper,
            r.t1_lower,
            r.ngme_exact,
            r.t2_upper,
            r.t2_lower,
            r.t2_gap,
        )
        lines.append(",".join(repr(v) for v in row))
    return "\n".join(lines) + "\n"


class GmeCurveFit(NamedTuple):
    c1: float
    c2: float
    c3: float
    max_residual: float


def fit_gme_closed_form(p_grid: Sequence[float], values: Sequence[float]) -> GmeCurveFit:
    """Least-squares fit of c1*(1-p) + c2*sqrt(p(1-p)) + c3*p to a curve."""
    p = np.asarray(p_grid, dtype=float)
    y = np.asarray(values, dtype=float)
    if p.size != y.size or p.size < 3:
        raise ValueError("need matching grids with at least 3 points")
    design = np.stack([1.0 - p, np.sqrt(p * (1.0 - p)), p], axis=1)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    residual = float(np.abs(design @ coef - y).max())
    return GmeCurveFit(float(coef[0]), float(coef[1]), float(coef[2]), residual)
