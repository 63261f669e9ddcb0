"""I.i.d. Pauli error and qubit-loss sampling with counter-based streams.

Each (seed, trial_index, channel) triple selects an independent Philox
stream, so a trial's pattern is a pure function of its parameters and is
bit-for-bit reproducible regardless of execution order or parallelism.
Errors are sampled only on surviving edges: a lost qubit is traced out and
its stabilizer information recovered through merged operators, so a Pauli
on it never enters the decoding problem. The nominal rates therefore apply
conditionally on survival.
"""

from dataclasses import dataclass

import numpy as np

from .lattice import Lattice

_CHANNEL_LOSS = 0
_CHANNEL_Z = 1
_CHANNEL_X = 2

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class NoiseParams:
    """Per-trial noise configuration; (seed, trial_index) fixes the sample."""

    p_x: float = 0.0
    p_z: float = 0.0
    p_loss: float = 0.0
    seed: int = 0
    trial_index: int = 0

    def __post_init__(self):
        for name in ("p_x", "p_z", "p_loss"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name}={p} outside [0, 1]")
        if self.trial_index < 0:
            raise ValueError("trial_index must be nonnegative")


@dataclass(frozen=True)
class ErrorPattern:
    """Edge-index sets of Z errors, X errors, and losses for one trial."""

    z_errors: np.ndarray
    x_errors: np.ndarray
    lost: np.ndarray

    def __post_init__(self):
        if np.intersect1d(self.z_errors, self.lost).size:
            raise ValueError("z_errors intersect lost edges")
        if np.intersect1d(self.x_errors, self.lost).size:
            raise ValueError("x_errors intersect lost edges")


def _channel_uniforms(seed: int, trial_index: int, channel: int, n: int) -> np.ndarray:
    bg = np.random.Philox(
        key=[seed & _MASK64, trial_index & _MASK64],
        counter=[0, 0, 0, channel],
    )
    return np.random.Generator(bg).random(n)


def sample(lat: Lattice, params: NoiseParams) -> ErrorPattern:
    """Draw one error pattern: loss first, then Z and X on survivors.

    The three channels threshold independent uniforms, so patterns at the
    same (seed, trial_index) share randomness across different rates
    (common random numbers).
    """
    E = lat.n_edges
    s, t = params.seed, params.trial_index
    lost = _channel_uniforms(s, t, _CHANNEL_LOSS, E) < params.p_loss
    z = (_channel_uniforms(s, t, _CHANNEL_Z, E) < params.p_z) & ~lost
    x = (_channel_uniforms(s, t, _CHANNEL_X, E) < params.p_x) & ~lost
    return ErrorPattern(
        z_errors=np.flatnonzero(z).astype(np.int64),
        x_errors=np.flatnonzero(x).astype(np.int64),
        lost=np.flatnonzero(lost).astype(np.int64),
    )
