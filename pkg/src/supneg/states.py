"""Pure-state containers and the tensor bookkeeping built on top of them.

Amplitudes are flat complex vectors in row-major subsystem order: for a
tripartite state the entry for basis label (i_A, i_B, i_C) sits at index
``(i_A * d_B + i_B) * d_C + i_C``.  All containers are immutable and every
operation is a pure function, so everything here is safe to call from
concurrent workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .oracle import hermitian_eigenvalues

NORMALIZED_TOL = 1e-12  # |<psi|psi> - 1| for a state considered normalized
ZERO_NORM_TOL = 1e-14  # vectors shorter than this count as the zero vector
COEFF_TOL = 1e-10  # tolerance on |a1|^2 + |a2|^2 = 1 for superpositions

_CUT_NAMES = ("A|BC", "B|AC", "C|AB")


@dataclass(frozen=True)
class PureState:
    """An n-partite pure state as dimensions plus a flat amplitude vector.

    Unnormalized states are first class (superpositions keep their raw
    vector); ``norm_sq`` reports the actual squared norm.
    """

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        amps = np.ascontiguousarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1:
            raise ValueError("amplitudes must be a flat vector")
        if amps.size != int(np.prod(dims)):
            raise ValueError(
                f"amplitude length {amps.size} does not match dims {dims} "
                f"(expected {int(np.prod(dims))})"
            )
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    @property
    def is_normalized(self) -> bool:
        return abs(self.norm_sq - 1.0) <= NORMALIZED_TOL

    @property
    def total_dim(self) -> int:
        return self.amplitudes.size

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per subsystem."""
        return self.amplitudes.reshape(self.dims)

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }


@dataclass(frozen=True)
class Bipartition:
    """One kept subsystem versus the other two, e.g. A|BC.

    ``kept`` indexes the lone subsystem; the complement is ordered by the
    remaining subsystems in (A, B, C) sequence, row-major.
    """

    kept: int
    row_dim: int
    col_dim: int

    @classmethod
    def of(cls, dims: Sequence[int], kept: int) -> "Bipartition":
        dims = tuple(int(d) for d in dims)
        if len(dims) != 3:
            raise ValueError("bipartitions are defined for tripartite states")
        if not 0 <= kept < 3:
            raise ValueError(f"kept subsystem must be 0, 1 or 2, got {kept}")
        col = 1
        for k, d in enumerate(dims):
            if k != kept:
                col *= d
        return cls(kept=kept, row_dim=dims[kept], col_dim=col)

    @property
    def label(self) -> str:
        return _CUT_NAMES[self.kept]


def bipartitions(state: PureState) -> tuple[Bipartition, Bipartition, Bipartition]:
    """The three single-subsystem cuts of a tripartite state, A|BC first."""
    return tuple(Bipartition.of(state.dims, k) for k in range(3))


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Eigenvalues of a reduced density matrix, descending, clamped to [0, 1]."""

    lambdas: np.ndarray

    def __post_init__(self):
        lam = np.ascontiguousarray(self.lambdas, dtype=float)
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.lambdas > 1e-12))


def new_state(dims: Sequence[int], amplitudes: Sequence[complex]) -> PureState:
    """Build a state from raw amplitudes without normalizing.

    Rejects length mismatches, subsystem dimensions below 2 and the zero
    vector.  Superposition outputs bypass this constructor so that their
    possibly vanishing norm stays representable.
    """
    dims = tuple(int(d) for d in dims)
    if any(d < 2 for d in dims):
        raise ValueError(f"all subsystem dimensions must be >= 2, got {dims}")
    state = PureState(dims, np.asarray(amplitudes, dtype=complex))
    if np.sqrt(state.norm_sq) < ZERO_NORM_TOL:
        raise ValueError("zero vector is not a valid state")
    return state


def normalize(state: PureState) -> tuple[PureState, float]:
    """Scale to unit norm; returns (normalized state, original squared norm)."""
    norm_sq = state.norm_sq
    if np.sqrt(norm_sq) < ZERO_NORM_TOL:
        raise ValueError("cannot normalize a (near-)zero vector")
    return PureState(state.dims, state.amplitudes / np.sqrt(norm_sq)), norm_sq


def superpose(
    a1: complex,
    psi1: PureState,
    a2: complex,
    psi2: PureState,
    check_coefficients: bool = True,
) -> PureState:
    """Component-wise a1*psi1 + a2*psi2, left unnormalized.

    The coefficient constraint |a1|^2 + |a2|^2 = 1 is enforced by default;
    pass ``check_coefficients=False`` for exploratory use.  The output can
    have vanishing norm (parallel components with opposite phases) -- that
    is deliberate, downstream normalization is where the error fires.
    """
    if psi1.dims != psi2.dims:
        raise ValueError(f"dims mismatch: {psi1.dims} vs {psi2.dims}")
    weight = abs(a1) ** 2 + abs(a2) ** 2
    if check_coefficients and abs(weight - 1.0) > COEFF_TOL:
        raise ValueError(
            f"superposition coefficients must satisfy |a1|^2+|a2|^2=1, got {weight!r}"
        )
    return PureState(psi1.dims, a1 * psi1.amplitudes + a2 * psi2.amplitudes)


def conjugate(state: PureState) -> PureState:
    """Entry-wise complex conjugate in the computational basis."""
    return PureState(state.dims, state.amplitudes.conj())


def matricize(state: PureState, cut: Bipartition) -> np.ndarray:
    """Amplitudes as a row_dim x col_dim matrix for the given cut.

    Row r is the kept-subsystem index; column c enumerates the complement
    in row-major order over the remaining subsystems in (A, B, C) sequence.
    """
    if len(state.dims) != 3:
        raise ValueError("matricize is defined for tripartite states")
    if cut.row_dim != state.dims[cut.kept] or cut.row_dim * cut.col_dim != state.total_dim:
        raise ValueError(f"cut {cut} inconsistent with dims {state.dims}")
    return np.ascontiguousarray(
        np.moveaxis(state.tensor(), cut.kept, 0).reshape(cut.row_dim, cut.col_dim)
    )


def reduced_density(
    state: PureState, cut: Bipartition, norm_sq: float | None = None
) -> np.ndarray:
    """Reduced density matrix of the kept subsystem, rho = M M^dagger.

    Requires a normalized state unless the caller passes ``norm_sq``
    explicitly, in which case the result is scaled to unit trace.
    """
    if norm_sq is None:
        if abs(state.norm_sq - 1.0) > 1e-10:
            raise ValueError(
                "reduced_density requires a normalized state "
                "(or pass norm_sq for explicit scaling)"
            )
        norm_sq = 1.0
    m = matricize(state, cut)
    return (m @ m.conj().T) / norm_sq


def schmidt_spectrum(state: PureState, cut: Bipartition) -> SchmidtSpectrum:
    """Eigenvalues of the reduced density matrix, descending."""
    rho = reduced_density(state, cut)
    lam = hermitian_eigenvalues(rho)
    lam = np.clip(lam, 0.0, 1.0)
    total = float(lam.sum())
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"Schmidt spectrum sums to {total!r}, expected 1")
    return SchmidtSpectrum(lam)


def state_from_dict(payload: dict) -> PureState:
    """Parse the JSON state format {"dims": [...], "amplitudes": [[re, im], ...]}."""
    try:
        dims = payload["dims"]
        pairs = payload["amplitudes"]
    except (KeyError, TypeError) as exc:
        raise ValueError("state payload must carry 'dims' and 'amplitudes'") from exc
    amps = np.array(
        [complex(float(re), float(im)) for re, im in pairs], dtype=complex
    )
    return new_state(dims, amps)


def load_state(path: str | Path) -> PureState:
    with open(path, encoding="utf-8") as fh:
        return state_from_dict(json.load(fh))


def save_state(state: PureState, path: str | Path) -> None:
    # json float encoding is repr-based, i.e. lossless round-trip precision
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state.to_dict(), fh)
        fh.write("\n")
