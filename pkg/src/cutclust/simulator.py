"""Dense statevector simulation for few-qubit circuits.

Conventions, fixed once and used everywhere:
  - bit i of a basis index is the value of qubit i (qubit 0 = LSB);
  - rotations use the half-angle form R_p(theta) = exp(-i theta P / 2)
    for P in {X, Y, Z};
  - bitstring keys in sampled counts are written MSB first, i.e.
    format(index, "0nb") with qubit n-1 as the leftmost character;
  - sampling runs on numpy's PCG64 generator (RNG_ID below), so counts
    are reproducible from the seed alone.

All operations are pure: they return a new Statevector and never mutate
their input.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError, ValidationError
from .graph_model import QUBIT_CAP, IsingDiagonal

RNG_ID = "numpy-pcg64"


@dataclass(frozen=True)
class Statevector:
    """2^n complex amplitudes of an n-qubit pure state."""

    n: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        if self.n < 1:
            raise ValidationError("need at least 1 qubit")
        if amps.shape != (2**self.n,):
            raise ValidationError(f"amplitudes must have length 2^{self.n}")
        object.__setattr__(self, "amps", amps)

    def norm_error(self) -> float:
        return abs(float(np.abs(self.amps).dot(np.abs(self.amps))) - 1.0)


def new_state(n: int, init: str = "zeros", cap: int = QUBIT_CAP) -> Statevector:
    """Fresh register: 'zeros' -> |0...0>, 'plus' -> uniform superposition."""
    if n < 1:
        raise ValidationError("need at least 1 qubit")
    if n > cap:
        raise ResourceLimitError(f"{n} qubits exceeds the cap of {cap}")
    amps = np.zeros(2**n, dtype=complex)
    if init == "zeros":
        amps[0] = 1.0
    elif init == "plus":
        amps[:] = 2.0 ** (-n / 2.0)
    else:
        raise ValidationError(f"unknown init {init!r}; use 'zeros' or 'plus'")
    return Statevector(n=n, amps=amps)


# 2x2 gate constructors -----------------------------------------------------

def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -1j * s], [-1j * s, c]])


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * theta), 0.0], [0.0, np.exp(0.5j * theta)]])


def is_unitary(u: np.ndarray, tol: float = 1e-9) -> bool:
    u = np.asarray(u)
    return u.shape == (2, 2) and np.allclose(u.conj().T @ u, np.eye(2), atol=tol)


# gate application ----------------------------------------------------------

def apply_1q(state: Statevector, qubit: int, u: np.ndarray) -> Statevector:
    """Apply a single-qubit unitary to the indexed qubit."""
    if not 0 <= qubit < state.n:
        raise ValidationError(f"qubit {qubit} out of range for n={state.n}")
    u = np.asarray(u, dtype=complex)
    # view amplitudes as (high bits, target bit, low bits)
    a = state.amps.reshape(-1, 2, 2**qubit)
    out = np.empty_like(a)
    out[:, 0, :] = u[0, 0] * a[:, 0, :] + u[0, 1] * a[:, 1, :]
    out[:, 1, :] = u[1, 0] * a[:, 0, :] + u[1, 1] * a[:, 1, :]
    return Statevector(n=state.n, amps=out.reshape(-1))


def apply_cnot(state: Statevector, control: int, target: int) -> Statevector:
    """Flip the target bit on basis states whose control bit is 1."""
    if control == target:
        raise ValidationError("control and target must differ")
    for q in (control, target):
        if not 0 <= q < state.n:
            raise ValidationError(f"qubit {q} out of range for n={state.n}")
    idx = np.arange(2**state.n)
    sel = (idx >> control) & 1 == 1
    out = state.amps.copy()
    out[idx[sel]] = state.amps[idx[sel] ^ (1 << target)]
    return Statevector(n=state.n, amps=out)


def apply_diagonal_phase(state: Statevector, gamma: float, ising: IsingDiagonal) -> Statevector:
    """Multiply amplitude[x] by exp(-i gamma E(x))."""
    if state.n != ising.n:
        raise ValidationError(f"state has {state.n} qubits, diagonal has {ising.n}")
    return Statevector(n=state.n, amps=state.amps * np.exp(-1j * gamma * ising.energies))


# measurement-side operations ------------------------------------------------

def expectation_diagonal(state: Statevector, ising: IsingDiagonal) -> float:
    """<state| H |state> for a diagonal H."""
    if state.n != ising.n:
        raise ValidationError(f"state has {state.n} qubits, diagonal has {ising.n}")
    probs = np.abs(state.amps) ** 2
    return float(probs @ ising.energies)


def probabilities(state: Statevector) -> np.ndarray:
    """|amplitude|^2 per basis index."""
    return np.abs(state.amps) ** 2


def sample_counts(state: Statevector, shots: int, seed: int) -> dict[str, int]:
    """Draw `shots` i.i.d. basis-state samples; keys are MSB-first bitstrings."""
    if shots < 1:
        raise ValidationError("shots must be >= 1")
    probs = probabilities(state)
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return {
        format(k, f"0{state.n}b"): int(c) for k, c in enumerate(counts) if c > 0
    }
