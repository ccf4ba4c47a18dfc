"""Ideal (noiseless) qubit engine.

State is kept per entanglement group: every live qubit belongs to exactly one
group, and each group owns a dense amplitude vector over its members. Groups
are merged lazily when a two-qubit gate spans them and shrink on measurement,
so the link protocol never pays for more than two qubits at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..errors import GroupSizeError, InvalidQubitError
from ._backend import resolve_backend

# Marginals this close to 0 or 1 are treated as basis states (no RNG draw).
BASIS_EPS = 1e-12


@dataclass(frozen=True, slots=True)
class QubitRef:
    id: int

    def __repr__(self):
        return f"QubitRef({self.id})"


class BellOutcome(NamedTuple):
    b1: int
    b2: int


class _Group:
    __slots__ = ("members", "amps")

    def __init__(self, members, amps):
        self.members = members
        self.amps = amps


class QuantumEngine:
    """Owns every simulated qubit of one link, plus the measurement RNG.

    ``max_group_size`` bounds the number of qubits a single group may hold;
    exceeding it raises :class:`GroupSizeError`. The link layer sets it to 2,
    which is the most the protocol ever needs.
    """

    def __init__(self, seed=None, *, backend=None, max_group_size=None):
        self._k = resolve_backend(backend)
        self._rng = np.random.default_rng(seed)
        self._groups: dict[int, _Group] = {}
        self._next_id = 0
        self.max_group_size = max_group_size

    @property
    def backend(self) -> str:
        return self._k.BACKEND

    @property
    def live_qubits(self) -> int:
        return len(self._groups)

    def is_valid(self, q: QubitRef) -> bool:
        return q.id in self._groups

    def _group(self, q: QubitRef) -> _Group:
        try:
            return self._groups[q.id]
        except (KeyError, AttributeError):
            raise InvalidQubitError(f"{q!r} is not a live qubit") from None

    def group_size(self, q: QubitRef) -> int:
        return len(self._group(q).members)

    def state(self, q: QubitRef) -> tuple[tuple[QubitRef, ...], np.ndarray]:
        """Members and amplitude vector of the group holding ``q``."""
        g = self._group(q)
        return tuple(QubitRef(m) for m in g.members), np.array(g.amps, dtype=complex)

    def new_qubit(self, initial: int = 0) -> QubitRef:
        qid = self._next_id
        self._next_id += 1
        amps = [0j, 1 + 0j] if initial else [1 + 0j, 0j]
        self._groups[qid] = _Group([qid], amps)
        return QubitRef(qid)

    def _apply(self, kernel, q: QubitRef):
        g = self._group(q)
        g.amps = kernel(g.amps, len(g.members), g.members.index(q.id))

    def apply_x(self, q: QubitRef) -> None:
        self._apply(self._k.apply_x, q)

    def apply_z(self, q: QubitRef) -> None:
        self._apply(self._k.apply_z, q)

    def apply_h(self, q: QubitRef) -> None:
        self._apply(self._k.apply_h, q)

    def _merge(self, a: QubitRef, b: QubitRef) -> _Group:
        ga = self._group(a)
        gb = self._group(b)
        if ga is gb:
            return ga
        members = ga.members + gb.members
        if self.max_group_size is not None and len(members) > self.max_group_size:
            raise GroupSizeError(
                f"merging {a!r} and {b!r} would form a group of {len(members)} "
                f"qubits (limit {self.max_group_size})"
            )
        merged = _Group(members, self._k.kron(ga.amps, gb.amps))
        for m in members:
            self._groups[m] = merged
        return merged

    def cnot(self, control: QubitRef, target: QubitRef) -> None:
        if control == target:
            raise ValueError("cnot control and target must differ")
        g = self._merge(control, target)
        g.amps = self._k.apply_cnot(
            g.amps,
            len(g.members),
            g.members.index(control.id),
            g.members.index(target.id),
        )

    def measure(self, q: QubitRef) -> int:
        """Computational-basis measurement; consumes ``q``."""
        g = self._group(q)
        n = len(g.members)
        k = g.members.index(q.id)
        p1 = self._k.prob_one(g.amps, n, k)
        if p1 <= BASIS_EPS:
            bit = 0
        elif p1 >= 1.0 - BASIS_EPS:
            bit = 1
        else:
            bit = int(self._rng.random() < p1)
        del self._groups[q.id]
        if n > 1:
            g.amps = self._k.collapse(g.amps, n, k, bit, p1 if bit else 1.0 - p1)
            del g.members[k]
        return bit

    def make_epr(self) -> tuple[QubitRef, QubitRef]:
        """Two fresh qubits in (|00> + |11>)/sqrt(2)."""
        q1 = self.new_qubit(0)
        q2 = self.new_qubit(0)
        self.apply_h(q1)
        self.cnot(q1, q2)
        return q1, q2

    def bell_measure(self, q1: QubitRef, q2: QubitRef) -> BellOutcome:
        if q1 == q2:
            raise ValueError("bell_measure needs two distinct qubits")
        self.cnot(q1, q2)
        self.apply_h(q1)
        return BellOutcome(self.measure(q1), self.measure(q2))


def superdense_encode(engine: QuantumEngine, q: QubitRef, b1: int, b2: int) -> None:
    """Fold two bits into one half of a shared Phi+ pair.

    (0,0) -> I, (0,1) -> X, (1,0) -> Z, (1,1) -> X then Z. Paired with
    :func:`superdense_decode` this returns exactly ``(b1, b2)``.
    """
    if b2:
        engine.apply_x(q)
    if b1:
        engine.apply_z(q)


def superdense_decode(engine: QuantumEngine, q: QubitRef, partner: QubitRef) -> BellOutcome:
    """Bell-measure a received half against the locally held one."""
    return engine.bell_measure(q, partner)
