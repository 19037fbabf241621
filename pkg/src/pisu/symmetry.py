"""SWAP-group machinery and the symmetrized Pauli-string basis.

The basis of the permutation-invariant subalgebra has one element per type
vector (letter-count signature); each element is the symmetric sum over all
distinct letter arrangements of that type.  Closure under the Lie bracket is
verified numerically by projecting every pairwise commutator back onto the
basis, which is exact here because distinct Pauli strings are orthogonal
under the trace inner product.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .pauli import PauliString, PauliSum, check_qubit_cap, commutator


@dataclass(frozen=True)
class SwapGroup:
    """All qubit transpositions on n qubits; they generate the symmetric group."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one qubit")

    @property
    def generators(self) -> tuple[tuple[int, int], ...]:
        return transpositions(self.n)

    def matrices(self) -> Iterator[np.ndarray]:
        for i, j in self.generators:
            yield swap_matrix(i, j, self.n)


def transpositions(n: int) -> tuple[tuple[int, int], ...]:
    """All 1-based qubit index pairs (i, j) with i < j."""
    return tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


def swap_matrix(i: int, j: int, n: int) -> np.ndarray:
    """Permutation matrix exchanging tensor factors i and j (1-based).

    ``i == j`` returns the identity.  Qubit 1 is the most significant bit
    of the basis-state index, matching the dense Kronecker convention.
    """
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"qubit indices ({i}, {j}) out of range 1..{n}")
    check_qubit_cap(n)
    dim = 2**n
    if i == j:
        return np.eye(dim, dtype=complex)
    bi = n - i  # bit positions within the state index
    bj = n - j
    idx = np.arange(dim)
    vi = (idx >> bi) & 1
    vj = (idx >> bj) & 1
    swapped = idx ^ (((vi ^ vj) << bi) | ((vi ^ vj) << bj))
    out = np.zeros((dim, dim), dtype=complex)
    out[swapped, idx] = 1.0
    return out


def _swap_bits(value: int, a: int, b: int) -> int:
    va = (value >> a) & 1
    vb = (value >> b) & 1
    if va != vb:
        value ^= (1 << a) | (1 << b)
    return value


def conjugate_by_swap(s: PauliString, i: int, j: int) -> PauliString:
    """SWAP conjugation of a string: letters at qubits i and j exchanged.

    Exact at the symbolic level (coefficient unchanged), equal to S @ M @ S
    at the matrix level.
    """
    if not (1 <= i <= s.n and 1 <= j <= s.n):
        raise ValueError(f"qubit indices ({i}, {j}) out of range 1..{s.n}")
    if i == j:
        return s
    a, b = i - 1, j - 1
    return PauliString(s.n, _swap_bits(s.x, a, b), _swap_bits(s.z, a, b), s.coeff)


@dataclass(frozen=True)
class TypeVector:
    """Letter-count signature (n_x, n_y, n_z, n_i) of a symmetrized generator."""

    n_x: int
    n_y: int
    n_z: int
    n_i: int

    def __post_init__(self) -> None:
        counts = (self.n_x, self.n_y, self.n_z, self.n_i)
        if any(c < 0 for c in counts):
            raise ValueError(f"negative letter count in {counts}")
        if sum(counts) < 1:
            raise ValueError("type vector must cover at least one qubit")

    @property
    def n(self) -> int:
        return self.n_x + self.n_y + self.n_z + self.n_i

    @property
    def is_identity(self) -> bool:
        return self.n_i == self.n

    @property
    def label(self) -> str:
        """Canonical name: the sorted letter word, e.g. ``"XYI"``."""
        return "X" * self.n_x + "Y" * self.n_y + "Z" * self.n_z + "I" * self.n_i

    def orbit_size(self) -> int:
        """Multinomial count of distinct letter arrangements."""
        return math.factorial(self.n) // (
            math.factorial(self.n_x)
            * math.factorial(self.n_y)
            * math.factorial(self.n_z)
            * math.factorial(self.n_i)
        )

    def distinct_letters(self) -> int:
        """How many of X, Y, Z appear at least once."""
        return sum(1 for c in (self.n_x, self.n_y, self.n_z) if c > 0)


def _arrangements(counts: Sequence[int]) -> Iterator[str]:
    """Distinct letter words of the multiset, lexicographic in X < Y < Z < I."""
    letters = "XYZI"
    remaining = list(counts)

    def rec(prefix: list[str], left: int) -> Iterator[str]:
        if left == 0:
            yield "".join(prefix)
            return
        for idx, letter in enumerate(letters):
            if remaining[idx] == 0:
                continue
            remaining[idx] -= 1
            prefix.append(letter)
            yield from rec(prefix, left - 1)
            prefix.pop()
            remaining[idx] += 1

    yield from rec([], sum(counts))


@dataclass(eq=False)
class SymmetrizedGenerator:
    """One basis element: a type vector plus its expanded permutation orbit.

    The orbit is expanded lazily and cached; ``orbit_size()`` is available
    without expansion.
    """

    type_vector: TypeVector
    label: str

    @property
    def n(self) -> int:
        return self.type_vector.n

    @cached_property
    def orbit(self) -> tuple[PauliString, ...]:
        tv = self.type_vector
        return tuple(
            PauliString.from_letters(word)
            for word in _arrangements((tv.n_x, tv.n_y, tv.n_z, tv.n_i))
        )

    def orbit_size(self) -> int:
        return self.type_vector.orbit_size()

    @cached_property
    def as_sum(self) -> PauliSum:
        return PauliSum.from_strings(self.orbit)

    def matrix(self) -> np.ndarray:
        return self.as_sum.matrix()

    def __repr__(self) -> str:
        return f"SymmetrizedGenerator({self.label!r})"


def type_vectors(n: int) -> list[TypeVector]:
    """All non-identity type vectors, descending lexicographic on (n_x, n_y, n_z).

    For two qubits this yields XX, XY, XZ, XI, YY, YZ, YI, ZZ, ZI.
    """
    out = []
    for n_x in range(n, -1, -1):
        for n_y in range(n - n_x, -1, -1):
            for n_z in range(n - n_x - n_y, -1, -1):
                tv = TypeVector(n_x, n_y, n_z, n - n_x - n_y - n_z)
                if not tv.is_identity:
                    out.append(tv)
    return out


def enumerate_basis(n: int) -> list[SymmetrizedGenerator]:
    """The symmetrized-string basis of the permutation-invariant algebra."""
    if n < 1:
        raise ValueError("need at least one qubit")
    return [SymmetrizedGenerator(tv, tv.label) for tv in type_vectors(n)]


def dim_pisu(n: int) -> int:
    """Dimension formula (n+3)(n+2)(n+1)/6 - 1; equals the basis count."""
    if n < 1:
        raise ValueError("need at least one qubit")
    return (n + 3) * (n + 2) * (n + 1) // 6 - 1


def scaling_table(max_n: int) -> list[tuple[int, int, int]]:
    """Rows (n, invariant dimension, full su(2^n) dimension 4^n - 1)."""
    return [(n, dim_pisu(n), 4**n - 1) for n in range(1, max_n + 1)]


def is_invariant_under(u: np.ndarray, s: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff max |S U S^dag - U| < tol."""
    if u.shape != s.shape or u.shape[0] != u.shape[1]:
        raise ValueError(f"shape mismatch: {u.shape} vs {s.shape}")
    return bool(np.abs(s @ u @ s.conj().T - u).max() < tol)


def invariance_defect(u: np.ndarray, s: np.ndarray) -> float:
    """max |S U S^dag - U|, the quantity thresholded by is_invariant_under."""
    if u.shape != s.shape or u.shape[0] != u.shape[1]:
        raise ValueError(f"shape mismatch: {u.shape} vs {s.shape}")
    return float(np.abs(s @ u @ s.conj().T - u).max())


def is_swap_invariant(u: np.ndarray, n: int, tol: float = 1e-10) -> bool:
    """Invariance under every qubit transposition (they generate S_n)."""
    return swap_invariance_defect(u, n) < tol


def swap_invariance_defect(u: np.ndarray, n: int) -> float:
    """Worst conjugation defect over all transposition SWAPs."""
    if u.shape != (2**n, 2**n):
        raise ValueError(f"matrix shape {u.shape} does not match n={n}")
    worst = 0.0
    for i, j in transpositions(n):
        worst = max(worst, invariance_defect(u, swap_matrix(i, j, n)))
    return worst


def _type_of(n: int, x: int, z: int) -> TypeVector:
    n_y = (x & z).bit_count()
    n_x = x.bit_count() - n_y
    n_z = z.bit_count() - n_y
    return TypeVector(n_x, n_y, n_z, n - n_x - n_y - n_z)


def project_onto_basis(
    v: PauliSum, basis: Sequence[SymmetrizedGenerator]
) -> tuple[list[complex], float]:
    """Exact projection onto symmetrized generators via trace orthogonality.

    Each generator coefficient is the mean of ``v``'s coefficients over the
    generator's orbit (absent orbit members count as zero); the residual is
    the l2 norm of ``v`` minus the reconstruction.  A nonzero residual means
    ``v`` does not lie in the symmetrized span.
    """
    if basis and v.n != basis[0].n:
        raise ValueError(f"qubit counts differ: {v.n} != {basis[0].n}")
    by_type: dict[TypeVector, list[complex]] = {}
    for (x, z), coeff in v.terms.items():
        by_type.setdefault(_type_of(v.n, x, z), []).append(coeff)

    basis_types = set()
    coeffs: list[complex] = []
    residual_sq = 0.0
    for gen in basis:
        tv = gen.type_vector
        basis_types.add(tv)
        present = by_type.get(tv, [])
        size = tv.orbit_size()
        c = sum(present) / size if present else 0j
        coeffs.append(c)
        residual_sq += sum(abs(value - c) ** 2 for value in present)
        residual_sq += (size - len(present)) * abs(c) ** 2
    # terms of v whose type has no basis element (e.g. an identity component)
    for tv, values in by_type.items():
        if tv not in basis_types:
            residual_sq += sum(abs(value) ** 2 for value in values)
    return coeffs, float(math.sqrt(residual_sq))


@dataclass(frozen=True)
class ClosureReport:
    """Outcome of exhaustive pairwise-bracket verification."""

    n: int
    pairs: int
    max_residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pairs": self.pairs,
            "max_residual": self.max_residual,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def verify_closure(n: int, tol: float = 1e-12) -> ClosureReport:
    """Project every pairwise commutator of the basis back onto the basis.

    Brackets are computed symbolically (exact quarter-phase arithmetic), so
    for a closed algebra the reported residual is exactly zero; the
    tolerance only guards the float fold.
    """
    basis = enumerate_basis(n)
    worst = 0.0
    pairs = 0
    for g1, g2 in itertools.combinations(basis, 2):
        pairs += 1
        bracket = commutator(g1.as_sum, g2.as_sum)
        _, residual = project_onto_basis(bracket, basis)
        worst = max(worst, residual)
    return ClosureReport(n=n, pairs=pairs, max_residual=worst, passed=worst < tol)
