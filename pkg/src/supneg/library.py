"""Named reference states and seeded random ensembles.

Random sampling uses numpy's Philox bit generator, a 64-bit counter-based
generator with a documented, platform-independent algorithm, so seeded
outputs (and any golden files derived from them) reproduce bit-for-bit
everywhere.  Seeds are 64-bit unsigned integers; parallel sweeps decouple
their streams by deriving per-point seeds as ``seed XOR index``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .states import Bipartition, PureState, new_state

if TYPE_CHECKING:
    from .bounds import SuperpositionSpec


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed) & (2**64 - 1)))


def ghz(d: int = 2) -> PureState:
    """Equal superposition of |iii> over i < d, for qudits of dimension d."""
    if d < 2:
        raise ValueError(f"GHZ requires subsystem dimension >= 2, got {d}")
    amps = np.zeros(d**3, dtype=complex)
    for i in range(d):
        amps[(i * d + i) * d + i] = 1.0
    return new_state([d, d, d], amps / np.sqrt(d))


def w_state() -> PureState:
    """The three-qubit state (|001> + |010> + |100>) / sqrt(3)."""
    amps = np.zeros(8, dtype=complex)
    amps[[1, 2, 4]] = 1.0 / np.sqrt(3.0)
    return new_state([2, 2, 2], amps)


@dataclass(frozen=True)
class ZFamilyParams:
    """Mixing weight p in [0, 1] and relative phase phi (radians)."""

    p: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p!r}")


def z_family(params: ZFamilyParams) -> "SuperpositionSpec":
    """Two-component spec sqrt(p)*GHZ + e^{i phi} sqrt(1-p)*W on qubits.

    The phase sits on the W component only; GHZ and W are orthogonal so the
    superposed vector has unit norm for every p.
    """
    from .bounds import SuperpositionSpec  # import here: bounds imports this module

    return SuperpositionSpec(
        a1=complex(np.sqrt(params.p)),
        a2=np.exp(1j * params.phi) * np.sqrt(1.0 - params.p),
        psi1=ghz(2),
        psi2=w_state(),
    )


def haar_random(dims: Sequence[int], seed: int) -> PureState:
    """Haar-distributed pure state: normalized i.i.d. complex Gaussians."""
    dims = tuple(int(d) for d in dims)
    rng = _rng(seed)
    n = int(np.prod(dims))
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return new_state(dims, z / np.linalg.norm(z))


def random_superposition_spec(dims: Sequence[int], seed: int) -> "SuperpositionSpec":
    """Two Haar components with Haar-phase unit coefficients, one generator.

    Coefficients are a complex 2-vector of i.i.d. Gaussians scaled to the
    unit sphere, so |a1|^2 + |a2|^2 = 1 with random moduli and phases.
    """
    from .bounds import SuperpositionSpec  # import here: bounds imports this module

    dims = tuple(int(d) for d in dims)
    rng = _rng(seed)
    n = int(np.prod(dims))

    def _haar_vec(size: int) -> np.ndarray:
        z = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        return z / np.linalg.norm(z)

    psi1 = PureState(dims, _haar_vec(n))
    psi2 = PureState(dims, _haar_vec(n))
    coeffs = _haar_vec(2)
    return SuperpositionSpec(complex(coeffs[0]), complex(coeffs[1]), psi1, psi2)


def haar_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    rng = _rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def apply_product_unitary(state: PureState, unitaries: Sequence[np.ndarray]) -> PureState:
    """Apply U_1 x U_2 x ... x U_n to an n-partite state."""
    if len(unitaries) != len(state.dims):
        raise ValueError("need one unitary per subsystem")
    t = state.tensor()
    for k, u in enumerate(unitaries):
        t = np.moveaxis(np.tensordot(u, t, axes=([1], [k])), 0, k)
    return PureState(state.dims, t.reshape(-1))


def random_biseparable(cut: Bipartition, dims: Sequence[int], seed: int) -> PureState:
    """Haar state on the kept subsystem tensored with a Haar state on the rest.

    Product across the chosen cut by construction; the complement factor is
    generically entangled within itself, so the other two cuts stay entangled.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) != 3:
        raise ValueError("random_biseparable is defined for tripartite states")
    rng = _rng(seed)

    def _haar_vec(n: int) -> np.ndarray:
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        return z / np.linalg.norm(z)

    rest = [d for k, d in enumerate(dims) if k != cut.kept]
    kept_vec = _haar_vec(dims[cut.kept])
    rest_vec = _haar_vec(int(np.prod(rest)))
    m = np.outer(kept_vec, rest_vec).reshape([dims[cut.kept]] + rest)
    return PureState(dims, np.moveaxis(m, 0, cut.kept).reshape(-1))
