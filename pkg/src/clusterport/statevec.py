"""Dense complex amplitude vectors over registers of labeled qubits.

A register is an ordered tuple of small positive integer labels, the
protocol's particle numbers.  Amplitudes are stored densely, one per
computational basis state.  The FIRST label owns the most significant bit
of the basis index, so a ket written ``|q_first ... q_last>`` lands at the
index its bit string spells in binary.

Every operation returns a new value; a StateVector is never mutated after
construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 8

# Vectors whose norm falls below this cannot be normalized: asking for it
# means an impossible measurement branch escaped its caller.
ZERO_NORM_FLOOR = 1e-12


@dataclass(frozen=True)
class StateVector:
    """Amplitudes over an ordered register of labeled qubits.

    ``labels`` holds distinct positive integers naming the qubits and
    ``amps`` one complex amplitude per basis state, ``2 ** len(labels)``
    in total.  The empty register (no labels, one amplitude) is legal; it
    is what survives once every qubit has been measured away.
    """

    labels: tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self) -> None:
        labels = tuple(int(q) for q in self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate qubit labels: {labels}")
        if any(q < 1 for q in labels):
            raise ValueError(f"qubit labels must be positive integers: {labels}")
        if len(labels) > MAX_QUBITS:
            raise ValueError(f"register of {len(labels)} qubits exceeds the cap of {MAX_QUBITS}")
        amps = np.array(self.amps, dtype=np.complex128)
        if amps.ndim != 1 or amps.size != 2 ** len(labels):
            raise ValueError(
                f"expected {2 ** len(labels)} amplitudes for {len(labels)} qubits, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "amps", amps)

    @property
    def n_qubits(self) -> int:
        return len(self.labels)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def position(self, label: int) -> int:
        """Index of ``label`` inside the register (0 = most significant bit)."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"qubit {label} not in register {self.labels}") from None


def _trusted(labels: tuple[int, ...], amps: np.ndarray) -> StateVector:
    """Internal factory for amplitudes this package just computed from an
    already-validated state; skips the constructor checks."""
    s = object.__new__(StateVector)
    amps.setflags(write=False)
    object.__setattr__(s, "labels", labels)
    object.__setattr__(s, "amps", amps)
    return s


def basis_state(labels, bits) -> StateVector:
    """Computational basis ket |b_1 ... b_n> over the given labels."""
    labels = tuple(labels)
    bits = tuple(bits)
    if not labels:
        raise ValueError("a basis state needs at least one qubit")
    if len(labels) != len(bits):
        raise ValueError(f"{len(labels)} labels but {len(bits)} bits")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"bits must be 0 or 1: {bits}")
    index = 0
    for b in bits:
        index = (index << 1) | b
    amps = np.zeros(2 ** len(labels), dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(labels, amps)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product; ``a``'s qubits become the high bits."""
    shared = set(a.labels) & set(b.labels)
    if shared:
        raise ValueError(f"registers overlap on labels {sorted(shared)}")
    return StateVector(a.labels + b.labels, np.kron(a.amps, b.amps))


def inner(a: StateVector, b: StateVector) -> complex:
    """<a|b> for registers listed in the same order."""
    if a.labels != b.labels:
        raise ValueError(f"register mismatch: {a.labels} vs {b.labels}")
    return complex(np.vdot(a.amps, b.amps))


def reorder(s: StateVector, labels) -> StateVector:
    """The same state with its register listed in a different order."""
    new = tuple(int(q) for q in labels)
    if sorted(new) != sorted(s.labels):
        raise ValueError(f"{new} is not a permutation of {s.labels}")
    if new == s.labels:
        return s
    axes = [s.labels.index(q) for q in new]
    amps = s.amps.reshape((2,) * s.n_qubits).transpose(axes).reshape(-1)
    return _trusted(new, np.ascontiguousarray(amps))


def fidelity(a: StateVector, b: StateVector) -> float:
    """Squared overlap |<a|b>|^2, insensitive to global phase.

    The registers must cover the same label set; ``b`` is reordered to
    ``a``'s ordering internally, callers never permute by hand.
    """
    if a.labels != b.labels:
        if sorted(a.labels) != sorted(b.labels):
            raise ValueError(f"registers differ: {a.labels} vs {b.labels}")
        b = reorder(b, a.labels)
    return float(abs(np.vdot(a.amps, b.amps)) ** 2)


def normalize(a: StateVector) -> StateVector:
    n = a.norm()
    if n <= ZERO_NORM_FLOOR:
        raise ValueError("cannot normalize a vector of (near-)zero norm")
    return StateVector(a.labels, a.amps / n)


def relabel(s: StateVector, mapping: dict) -> StateVector:
    """Rename qubits without touching amplitudes, e.g. {1: 4, 2: 5}."""
    new = tuple(mapping.get(q, q) for q in s.labels)
    return StateVector(new, s.amps)


def format_state(s: StateVector, tol: float = 1e-9, digits: int = 6) -> str:
    """Readable ket expansion for reports.

    Display only: the first nonzero amplitude is rotated to be real and
    positive so equivalent states print identically.
    """
    nz = np.flatnonzero(np.abs(s.amps) > tol)
    if nz.size == 0:
        return "0"
    lead = s.amps[nz[0]]
    shown = s.amps * (abs(lead) / lead)
    terms = []
    for i in nz:
        c = shown[i]
        if abs(c.imag) <= tol:
            coeff = f"{c.real:.{digits}g}"
        elif abs(c.real) <= tol:
            coeff = f"{c.imag:.{digits}g}i"
        else:
            coeff = f"({c.real:.{digits}g}{c.imag:+.{digits}g}i)"
        bits = format(int(i), f"0{s.n_qubits}b") if s.n_qubits else ""
        terms.append(f"{coeff}|{bits}>")
    return " + ".join(terms)
