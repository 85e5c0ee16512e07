"""Bell-basis measurement of a labeled qubit pair.

A Bell measurement projects a pair onto one of the four Bell states and
removes it from the register: the measured pair factors out exactly, so
the surviving qubits carry the whole post-measurement state.  Surviving
labels keep their original relative order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .statevec import StateVector, _trusted

# Branches with probability below this floor are impossible; they carry no
# post-measurement state.
PROB_FLOOR = 1e-12


class BellOutcome(enum.Enum):
    """The four Bell states of an ordered qubit pair (a, b)."""

    PHI_PLUS = "Phi+"    # (|00> + |11>)/sqrt(2)
    PHI_MINUS = "Phi-"   # (|00> - |11>)/sqrt(2)
    PSI_PLUS = "Psi+"    # (|01> + |10>)/sqrt(2)
    PSI_MINUS = "Psi-"   # (|01> - |10>)/sqrt(2)


BELL_OUTCOMES = tuple(BellOutcome)

_RSQ2 = 1.0 / np.sqrt(2.0)
# Coefficient of |i>_a |j>_b in each Bell ket, indexed [i, j].
_BELL_COEFFS = {
    BellOutcome.PHI_PLUS: np.array([[_RSQ2, 0], [0, _RSQ2]], dtype=np.complex128),
    BellOutcome.PHI_MINUS: np.array([[_RSQ2, 0], [0, -_RSQ2]], dtype=np.complex128),
    BellOutcome.PSI_PLUS: np.array([[0, _RSQ2], [_RSQ2, 0]], dtype=np.complex128),
    BellOutcome.PSI_MINUS: np.array([[0, _RSQ2], [-_RSQ2, 0]], dtype=np.complex128),
}
# Rows: conjugated Bell bras, flattened over the pair's (i, j) axes.
_BELL_MAT = np.stack([_BELL_COEFFS[o] for o in BELL_OUTCOMES]).conj().reshape(4, 4)
_OUTCOME_INDEX = {o: k for k, o in enumerate(BELL_OUTCOMES)}


@dataclass(frozen=True)
class ProjectionResult:
    """Probability of one Bell outcome plus the surviving register.

    ``remainder`` is None when the probability sits below PROB_FLOOR,
    marking a branch that cannot occur.
    """

    probability: float
    remainder: StateVector | None


def bell_vector(outcome: BellOutcome, a: int, b: int) -> StateVector:
    """The Bell ket ``outcome`` over the two-qubit register (a, b)."""
    if a == b:
        raise ValueError("a Bell pair needs two distinct qubits")
    return StateVector((a, b), _BELL_COEFFS[outcome].reshape(-1))


def _pair_components(s: StateVector, a: int, b: int):
    """Contract qubits (a, b) against all four Bell bras at once.

    Returns ``(rest_labels, comps)`` where ``comps[k]`` holds the
    unnormalized amplitudes of the surviving qubits for BELL_OUTCOMES[k].
    """
    if a == b:
        raise ValueError("a Bell pair needs two distinct qubits")
    pa, pb = s.position(a), s.position(b)
    n = s.n_qubits
    rest_axes = tuple(i for i in range(n) if i != pa and i != pb)
    psi = s.amps.reshape((2,) * n).transpose((pa, pb) + rest_axes).reshape(4, -1)
    comps = _BELL_MAT @ psi
    rest = tuple(q for q in s.labels if q != a and q != b)
    return rest, comps


def _result_for(rest, vec, p: float) -> ProjectionResult:
    if p < PROB_FLOOR:
        return ProjectionResult(probability=p, remainder=None)
    return ProjectionResult(probability=p, remainder=_trusted(rest, vec / np.sqrt(p)))


def project_bell(s: StateVector, a: int, b: int, outcome: BellOutcome) -> ProjectionResult:
    """Project the pair (a, b) onto ``outcome`` and drop it from the register."""
    rest, comps = _pair_components(s, a, b)
    vec = comps[_OUTCOME_INDEX[outcome]]
    return _result_for(rest, vec, float(np.real(np.vdot(vec, vec))))


def bell_probabilities(s: StateVector, a: int, b: int) -> dict[BellOutcome, float]:
    """Born probabilities of the four outcomes for the pair (a, b)."""
    _, comps = _pair_components(s, a, b)
    return {
        o: float(np.real(np.vdot(comps[k], comps[k])))
        for k, o in enumerate(BELL_OUTCOMES)
    }


def sample_bell(s: StateVector, a: int, b: int, rng: np.random.Generator):
    """Draw one Bell outcome for the pair (a, b) with Born probabilities.

    The caller owns ``rng``; this function never seeds or splits it.
    Returns ``(outcome, ProjectionResult)`` where the result carries the
    drawn outcome's exact probability.
    """
    rest, comps = _pair_components(s, a, b)
    # sums of |c|^2 are nonnegative exactly, no clipping needed
    probs = (comps.real * comps.real + comps.imag * comps.imag).sum(axis=1)
    cum = probs.cumsum()
    k = int(cum.searchsorted(rng.random() * cum[-1], side="right"))
    if k > 3:
        k = 3
    while k > 0 and probs[k] == 0.0:
        k -= 1
    return BELL_OUTCOMES[k], _result_for(rest, comps[k], float(probs[k]))
