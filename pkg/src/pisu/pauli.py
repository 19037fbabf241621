"""Exact algebra of Pauli strings and their dense matrix realizations.

A string over n qubits is stored as two bitmasks (x-bits, z-bits) with the
encoding (x, z) = (0,0) -> I, (1,0) -> X, (1,1) -> Y, (0,1) -> Z, so that
multiplication and commutation checks are O(1) bit operations.  Group phases
are tracked as integer powers of i and folded into the complex coefficient
only when the product string is formed, which keeps sums of integer-weighted
strings exact.

Convention used throughout the package: qubit 1 is the leftmost tensor
factor of the dense realization; bit q-1 of a mask belongs to qubit q.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

DEFAULT_MAX_QUBITS = 12
PRUNE_EPS = 1e-14

_LETTER_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_LETTER = {bits: letter for letter, bits in _LETTER_BITS.items()}
_I_POW = (1.0 + 0j, 1j, -1.0 + 0j, -1j)


class QubitLimitError(ValueError):
    """A dense realization would exceed the configured qubit cap."""


def max_qubits() -> int:
    """Dense-matrix qubit cap; override with the PISU_MAX_QUBITS env var."""
    return int(os.environ.get("PISU_MAX_QUBITS", DEFAULT_MAX_QUBITS))


def check_qubit_cap(n: int) -> None:
    cap = max_qubits()
    if n > cap:
        raise QubitLimitError(
            f"dense matrix over n={n} qubits exceeds the cap of {cap} "
            f"(set PISU_MAX_QUBITS to raise it)"
        )


def letter_matrix(letter: str) -> np.ndarray:
    """Standard 2x2 computational-basis matrix of a single Pauli letter."""
    try:
        return _LETTER_MATRICES[letter].copy()
    except KeyError:
        raise ValueError(f"unknown Pauli letter {letter!r}") from None


@dataclass(frozen=True)
class PauliString:
    """One tensor product of Pauli letters with a complex coefficient."""

    n: int
    x: int
    z: int
    coeff: complex = 1.0 + 0j

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a Pauli string needs at least one qubit")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("x/z bits fall outside the qubit range")

    @classmethod
    def from_letters(cls, letters: Iterable[str], coeff: complex = 1.0 + 0j) -> "PauliString":
        """Build from a letter sequence such as ``"XYI"`` (index 0 = qubit 1)."""
        x = z = 0
        count = 0
        for q, letter in enumerate(letters):
            try:
                xb, zb = _LETTER_BITS[letter]
            except KeyError:
                raise ValueError(f"unknown Pauli letter {letter!r}") from None
            x |= xb << q
            z |= zb << q
            count += 1
        return cls(count, x, z, complex(coeff))

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0)

    @property
    def letters(self) -> str:
        """Dense letter word, e.g. ``"XYI"``; index 0 is qubit 1."""
        return "".join(
            _BITS_LETTER[(self.x >> q) & 1, (self.z >> q) & 1] for q in range(self.n)
        )

    def letter(self, qubit: int) -> str:
        """Letter acting on the given 1-based qubit."""
        if not 1 <= qubit <= self.n:
            raise ValueError(f"qubit index {qubit} out of range 1..{self.n}")
        q = qubit - 1
        return _BITS_LETTER[(self.x >> q) & 1, (self.z >> q) & 1]

    @property
    def weight(self) -> int:
        """Number of non-identity letters."""
        return (self.x | self.z).bit_count()

    def support(self) -> tuple[int, ...]:
        """1-based qubits carrying a non-identity letter."""
        occ = self.x | self.z
        return tuple(q + 1 for q in range(self.n) if (occ >> q) & 1)

    def with_coeff(self, coeff: complex) -> "PauliString":
        return PauliString(self.n, self.x, self.z, complex(coeff))

    def paper_notation(self) -> str:
        """Subscripted rendering, e.g. ``"x2 y1"`` for Y on qubit 1, X on qubit 2."""
        parts = sorted(
            (self.letter(q).lower(), q) for q in self.support()
        )
        if not parts:
            return "1"
        return " ".join(f"{letter}{q}" for letter, q in parts)

    def __mul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __repr__(self) -> str:
        return f"PauliString({self.coeff:+g}, {self.letters!r})"


def _y_count(x: int, z: int) -> int:
    return (x & z).bit_count()


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Exact Pauli-group product: string_matrix(a) @ string_matrix(b).

    The i-power from reordering X against Z is computed as an integer
    exponent mod 4 and folded into the coefficient.
    """
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} != {b.n}")
    x = a.x ^ b.x
    z = a.z ^ b.z
    k = (
        _y_count(a.x, a.z)
        + _y_count(b.x, b.z)
        + 2 * (a.z & b.x).bit_count()
        - _y_count(x, z)
    ) % 4
    return PauliString(a.n, x, z, a.coeff * b.coeff * _I_POW[k])


def commutes(a: PauliString, b: PauliString) -> bool:
    """Symplectic criterion: even number of positions with distinct non-identity letters."""
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} != {b.n}")
    return ((a.x & b.z).bit_count() + (a.z & b.x).bit_count()) % 2 == 0


def string_matrix(s: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n realization: coeff times the Kronecker product of letters.

    Qubit 1 is the leftmost (most significant) tensor factor.
    """
    check_qubit_cap(s.n)
    m = np.array([[1.0 + 0j]])
    for letter in s.letters:
        m = np.kron(m, _LETTER_MATRICES[letter])
    return s.coeff * m


@dataclass(frozen=True)
class PauliSum:
    """Formal complex-linear combination of Pauli strings over n qubits.

    ``terms`` maps (x, z) bitmask pairs to coefficients.  Canonical form
    stores no coefficient of magnitude below the pruning epsilon.  Treated
    as immutable: all operations return new sums.
    """

    n: int
    terms: dict

    @classmethod
    def zero(cls, n: int) -> "PauliSum":
        return cls(n, {})

    @classmethod
    def from_strings(cls, strings: Iterable[PauliString], epsilon: float = PRUNE_EPS) -> "PauliSum":
        n = None
        acc: dict[tuple[int, int], complex] = {}
        for s in strings:
            if n is None:
                n = s.n
            elif s.n != n:
                raise ValueError(f"qubit counts differ: {s.n} != {n}")
            key = (s.x, s.z)
            acc[key] = acc.get(key, 0j) + s.coeff
        if n is None:
            raise ValueError("cannot infer qubit count from an empty iterable")
        return cls(n, _pruned(acc, epsilon))

    def strings(self) -> Iterator[PauliString]:
        """Terms as PauliStrings, sorted by letter word for determinism."""
        items = sorted(self.terms.items(), key=lambda kv: PauliString(self.n, *kv[0]).letters)
        for (x, z), coeff in items:
            yield PauliString(self.n, x, z, coeff)

    def num_terms(self) -> int:
        return len(self.terms)

    def coefficient(self, s: PauliString) -> complex:
        """Coefficient on the letter word of ``s`` (ignores ``s.coeff``)."""
        if s.n != self.n:
            raise ValueError(f"qubit counts differ: {s.n} != {self.n}")
        return self.terms.get((s.x, s.z), 0j)

    def scaled(self, factor: complex) -> "PauliSum":
        return PauliSum(self.n, _pruned({k: factor * v for k, v in self.terms.items()}, PRUNE_EPS))

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if self.n != other.n:
            raise ValueError(f"qubit counts differ: {self.n} != {other.n}")
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0j) + v
        return PauliSum(self.n, _pruned(acc, PRUNE_EPS))

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + other.scaled(-1.0)

    def __rmul__(self, factor: complex) -> "PauliSum":
        return self.scaled(factor)

    def norm(self) -> float:
        """l2 norm of the coefficient vector (trace-orthogonal basis)."""
        return float(np.sqrt(sum(abs(v) ** 2 for v in self.terms.values())))

    def matrix(self) -> np.ndarray:
        check_qubit_cap(self.n)
        dim = 2**self.n
        out = np.zeros((dim, dim), dtype=complex)
        for s in self.strings():
            out += string_matrix(s)
        return out

    def to_json(self) -> str:
        terms = [
            {"letters": s.letters, "re": float(s.coeff.real), "im": float(s.coeff.imag)}
            for s in self.strings()
        ]
        return json.dumps({"n": self.n, "terms": terms})

    @classmethod
    def from_json(cls, text: str) -> "PauliSum":
        data = json.loads(text)
        n = int(data["n"])
        strings = [
            PauliString.from_letters(t["letters"], complex(t["re"], t["im"]))
            for t in data["terms"]
        ]
        if not strings:
            return cls.zero(n)
        out = cls.from_strings(strings)
        if out.n != n:
            raise ValueError("term length disagrees with declared qubit count")
        return out

    def __str__(self) -> str:
        parts = [f"({s.coeff.real:+g}{s.coeff.imag:+g}j) {s.paper_notation()}" for s in self.strings()]
        return " + ".join(parts) if parts else "0"


def _pruned(acc: dict, epsilon: float) -> dict:
    return {k: v for k, v in acc.items() if abs(v) >= epsilon}


def commutator(a: PauliSum, b: PauliSum) -> PauliSum:
    """Lie bracket ab - ba in canonical form.

    Term pairs that commute contribute nothing; anticommuting pairs
    contribute 2ab, so each surviving pair costs one string product.
    """
    if a.n != b.n:
        raise ValueError(f"qubit counts differ: {a.n} != {b.n}")
    acc: dict[tuple[int, int], complex] = {}
    for (ax, az), ac in a.terms.items():
        sa = PauliString(a.n, ax, az, ac)
        for (bx, bz), bc in b.terms.items():
            if ((ax & bz).bit_count() + (az & bx).bit_count()) % 2 == 0:
                continue
            prod = multiply(sa, PauliString(b.n, bx, bz, bc))
            key = (prod.x, prod.z)
            acc[key] = acc.get(key, 0j) + 2 * prod.coeff
    return PauliSum(a.n, _pruned(acc, PRUNE_EPS))
