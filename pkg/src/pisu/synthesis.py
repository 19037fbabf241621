"""Gate-level synthesis of Pauli-string and symmetrized-generator exponentials.

A single string exponential exp(-i theta/2 P) is realized on an all-X
backbone: a central RX on a pivot qubit, CNOT fans (control = pivot) spreading
the rotation over the string's support, and per-qubit basis changes turning X
into the required letter (H pair for Z, Sdg/S pair for Y).  Identity letters
skip their qubit entirely.

Generator exponentials multiply the orbit's string exponentials directly when
the orbit is pairwise commuting; otherwise a first-order product formula over
k steps approximates the sum exponential.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .pauli import PauliString, check_qubit_cap, commutes, letter_matrix
from .symmetry import SymmetrizedGenerator

GATE_KINDS = ("H", "S", "Sdg", "CNOT", "RX", "RY", "RZ")
ROTATION_KINDS = ("RX", "RY", "RZ")

DEFAULT_TROTTER_STEPS = 4


class NonCommutingOrbitError(ValueError):
    """Exact-product synthesis was requested for a non-commuting orbit."""


@dataclass(frozen=True)
class Gate:
    """One gate: kind, 1-based qubit indices, optional parameter name."""

    kind: str
    qubits: tuple[int, ...]
    param: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(self.qubits))
        if self.kind == "CNOT":
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError("CNOT needs two distinct qubit indices")
        elif len(self.qubits) != 1:
            raise ValueError(f"{self.kind} acts on exactly one qubit")
        if self.kind in ROTATION_KINDS:
            if not self.param:
                raise ValueError(f"{self.kind} requires a parameter name")
        elif self.param is not None:
            raise ValueError(f"{self.kind} carries no parameter")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over n qubits; leftmost gate is applied first.

    ``params`` holds the current binding of parameter names to angles
    (radians).  Circuits are immutable; ``bind`` returns a rebound copy.
    """

    n: int
    gates: tuple[Gate, ...] = ()
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            for q in g.qubits:
                if not 1 <= q <= self.n:
                    raise ValueError(f"gate qubit {q} out of range 1..{self.n}")
        object.__setattr__(self, "params", dict(self.params))

    @property
    def param_names(self) -> tuple[str, ...]:
        """Parameter names in order of first appearance."""
        seen: list[str] = []
        for g in self.gates:
            if g.param is not None and g.param not in seen:
                seen.append(g.param)
        return tuple(seen)

    def bind(self, values: Mapping[str, float]) -> "Circuit":
        unknown = set(values) - set(self.param_names) - set(self.params)
        if unknown:
            raise ValueError(f"unknown parameters: {sorted(unknown)}")
        merged = dict(self.params)
        merged.update({k: float(v) for k, v in values.items()})
        return Circuit(self.n, self.gates, merged)

    def concat(self, other: "Circuit") -> "Circuit":
        if self.n != other.n:
            raise ValueError(f"qubit counts differ: {self.n} != {other.n}")
        merged = dict(self.params)
        for k, v in other.params.items():
            if k in merged and merged[k] != v:
                raise ValueError(f"conflicting values for parameter {k!r}")
            merged[k] = v
        return Circuit(self.n, self.gates + other.gates, merged)

    def __add__(self, other: "Circuit") -> "Circuit":
        return self.concat(other)


@dataclass(frozen=True)
class SynthesisPlan:
    """How to turn a generator into gates.

    ``exact-product`` multiplies the orbit's string exponentials (valid only
    for pairwise-commuting orbits); ``trotter`` repeats the orbit product
    over ``steps`` slices; ``dense-exponential`` skips gates and yields the
    exact matrix.  ``pivot`` pins the central-rotation qubit where the
    string supports allow it.
    """

    mode: str = "exact-product"
    steps: int = 1
    pivot: int | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("exact-product", "trotter", "dense-exponential"):
            raise ValueError(f"unknown synthesis mode {self.mode!r}")
        if self.steps < 1:
            raise ValueError("trotter steps must be >= 1")


# Basis-change wrappers: letter -> (first gate kind, last gate kind) so the
# circuit realizes G RX G^dag with G X G^dag = letter.  Checked numerically
# below rather than trusted from gate-identity conventions.
_WRAPPERS = {"X": None, "Y": ("Sdg", "S"), "Z": ("H", "H")}

_H2 = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S2 = np.diag([1.0 + 0j, 1j])


def _verify_wrappers() -> None:
    conjugators = {"Y": _S2, "Z": _H2}
    x = letter_matrix("X")
    for letter, g in conjugators.items():
        got = g @ x @ g.conj().T
        if np.abs(got - letter_matrix(letter)).max() > 1e-14:
            raise AssertionError(f"wrapper for {letter} does not conjugate X correctly")


_verify_wrappers()


def synth_string(
    s: PauliString,
    theta: float,
    pivot: int | None = None,
    *,
    param_name: str = "theta",
    ladder_order: Sequence[int] | None = None,
) -> Circuit:
    """Circuit realizing exp(-i theta/2 M) for a single coefficient-1 string.

    Args:
        s: target string; must have coefficient 1 and at least one
            non-identity letter.
        theta: rotation angle bound to ``param_name``.
        pivot: 1-based qubit carrying the central RX; defaults to the
            lowest-index non-identity qubit.  Must sit on a non-identity
            letter.
        ladder_order: visitation order of the remaining support qubits for
            the CNOT fan; any permutation yields the same unitary.
    """
    if s.coeff != 1:
        raise ValueError(f"string coefficient must be 1, got {s.coeff}")
    support = s.support()
    if not support:
        raise ValueError("cannot exponentiate the all-identity string")
    if pivot is None:
        pivot = support[0]
    if not 1 <= pivot <= s.n:
        raise ValueError(f"pivot {pivot} out of range 1..{s.n}")
    if s.letter(pivot) == "I":
        raise ValueError(f"pivot qubit {pivot} carries an identity letter")

    targets = [q for q in support if q != pivot]
    if ladder_order is not None:
        if sorted(ladder_order) != sorted(targets):
            raise ValueError("ladder_order must permute the non-pivot support qubits")
        targets = list(ladder_order)

    opening: list[Gate] = []
    closing: list[Gate] = []
    for q in support:
        wrap = _WRAPPERS[s.letter(q)]
        if wrap is not None:
            first, last = wrap
            opening.append(Gate(first, (q,)))
            closing.append(Gate(last, (q,)))

    fan = [Gate("CNOT", (pivot, t)) for t in targets]
    gates = (
        opening
        + fan
        + [Gate("RX", (pivot,), param_name)]
        + list(reversed(fan))
        + list(reversed(closing))
    )
    return Circuit(s.n, tuple(gates), {param_name: float(theta)})


def commuting_orbit(g: SymmetrizedGenerator) -> bool:
    """True iff every pair of orbit strings commutes (symplectic check)."""
    orbit = g.orbit
    for i in range(len(orbit)):
        for j in range(i + 1, len(orbit)):
            if not commutes(orbit[i], orbit[j]):
                return False
    return True


def _string_pivot(s: PauliString, plan_pivot: int | None) -> int | None:
    if plan_pivot is not None and 1 <= plan_pivot <= s.n and s.letter(plan_pivot) != "I":
        return plan_pivot
    return None  # synth_string falls back to the lowest support qubit


def synth_generator(
    g: SymmetrizedGenerator,
    theta: float,
    plan: SynthesisPlan | None = None,
    *,
    param_name: str = "theta",
) -> Circuit | np.ndarray:
    """Synthesize exp(-i theta/2 M) for a symmetrized generator.

    Exact-product and trotter modes return a Circuit; dense-exponential mode
    returns the exact unitary matrix instead (for verification and small-n
    export).  With no plan, exact-product is used when the orbit commutes
    and a first-order product formula otherwise.

    Trotterized circuits bind the per-step angle under the name
    ``<param_name>_step`` (= theta / steps); rebinding it scales every slice.
    """
    if plan is None:
        if commuting_orbit(g):
            plan = SynthesisPlan("exact-product")
        else:
            plan = SynthesisPlan("trotter", steps=DEFAULT_TROTTER_STEPS)

    if plan.mode == "dense-exponential":
        return dense_exponential(g, theta)

    if plan.mode == "exact-product":
        if not commuting_orbit(g):
            raise NonCommutingOrbitError(
                f"orbit of {g.label} does not pairwise commute; "
                f"exact-product order would matter"
            )
        circuit = Circuit(g.n)
        for s in g.orbit:
            circuit = circuit.concat(
                synth_string(s, theta, _string_pivot(s, plan.pivot), param_name=param_name)
            )
        return circuit

    # first-order product formula: k passes over the orbit at theta / k
    step_angle = float(theta) / plan.steps
    step_name = f"{param_name}_step"
    circuit = Circuit(g.n)
    for _ in range(plan.steps):
        for s in g.orbit:
            circuit = circuit.concat(
                synth_string(
                    s, step_angle, _string_pivot(s, plan.pivot), param_name=step_name
                )
            )
    return circuit


def dense_exponential(g: SymmetrizedGenerator, theta: float) -> np.ndarray:
    """exp(-i theta/2 M) via Hermitian eigendecomposition of the generator sum."""
    check_qubit_cap(g.n)
    m = g.matrix()
    eigenvalues, vectors = np.linalg.eigh(m)
    phases = np.exp(-0.5j * theta * eigenvalues)
    return (vectors * phases) @ vectors.conj().T


def cnot_count(c: Circuit) -> int:
    return sum(1 for g in c.gates if g.kind == "CNOT")


def naive_cnot_budget(n: int) -> int:
    """Reference curve 2n * sum_{k=1}^{n} (n-k)^3 for whole-group construction."""
    return 2 * n * sum((n - k) ** 3 for k in range(1, n + 1))


# ---------------------------------------------------------------------------
# interchange formats


def circuit_to_json(c: Circuit) -> str:
    gates = [
        {"kind": g.kind, "qubits": list(g.qubits), "param": g.param} for g in c.gates
    ]
    params = {name: float(value) for name, value in sorted(c.params.items())}
    return json.dumps({"n": c.n, "gates": gates, "params": params})


def circuit_from_json(text: str) -> Circuit:
    data = json.loads(text)
    gates = tuple(
        Gate(g["kind"], tuple(g["qubits"]), g.get("param")) for g in data["gates"]
    )
    return Circuit(int(data["n"]), gates, dict(data.get("params", {})))


_QASM_NAMES = {"H": "h", "S": "s", "Sdg": "sdg", "CNOT": "cx", "RX": "rx", "RY": "ry", "RZ": "rz"}
_QASM_KINDS = {v: k for k, v in _QASM_NAMES.items()}


def circuit_to_qasm(c: Circuit) -> str:
    """OPENQASM 2.0 text with literal angles; requires all parameters bound."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.n}];"]
    for g in c.gates:
        name = _QASM_NAMES[g.kind]
        args = ",".join(f"q[{q - 1}]" for q in g.qubits)
        if g.param is not None:
            if g.param not in c.params:
                raise ValueError(f"parameter {g.param!r} is unbound; cannot export")
            lines.append(f"{name}({c.params[g.param]!r}) {args};")
        else:
            lines.append(f"{name} {args};")
    return "\n".join(lines) + "\n"


_QASM_GATE_RE = re.compile(
    r"^(?P<name>[a-z]+)(?:\((?P<angle>[^)]+)\))?\s+(?P<args>q\[\d+\](?:,q\[\d+\])*);$"
)


def circuit_from_qasm(text: str) -> Circuit:
    """Parse the QASM 2.0 subset emitted by circuit_to_qasm.

    Rotation literals become fresh parameters p0, p1, ... in gate order.
    """
    n = None
    gates: list[Gate] = []
    params: dict[str, float] = {}
    counter = 0
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith(("OPENQASM", "include", "//")):
            continue
        m = re.match(r"^qreg\s+q\[(\d+)\];$", line)
        if m:
            n = int(m.group(1))
            continue
        m = _QASM_GATE_RE.match(line)
        if m is None:
            raise ValueError(f"cannot parse QASM line: {line!r}")
        kind = _QASM_KINDS.get(m.group("name"))
        if kind is None:
            raise ValueError(f"unsupported QASM gate {m.group('name')!r}")
        qubits = tuple(int(q) + 1 for q in re.findall(r"q\[(\d+)\]", m.group("args")))
        if m.group("angle") is not None:
            name = f"p{counter}"
            counter += 1
            params[name] = float(m.group("angle"))
            gates.append(Gate(kind, qubits, name))
        else:
            gates.append(Gate(kind, qubits))
    if n is None:
        raise ValueError("QASM text declares no qreg")
    return Circuit(n, tuple(gates), params)
