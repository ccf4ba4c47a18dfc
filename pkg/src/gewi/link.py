"""Entanglement-assisted point-to-point link.

The sender runs one protocol iteration per :func:`sender_step`: data first,
otherwise an EPR frame if the buffer has room and the driver allows it. The
receiver drains whole frames from an ideal, ordered, lossless channel. Both
ends share one :class:`QuantumEngine`, since every EPR pair spans the link.
"""

from __future__ import annotations

from collections import deque
from dataclasses import astuple, dataclass, field, fields
from enum import Enum

from .buffer import EntBuffer
from .errors import BufferDesyncError, FramingError, MetricError
from .framing import (
    FlagConfig,
    Frame,
    FrameResult,
    decode_frame,
    encode_data_frame,
    encode_epr_frame,
)
from .qsim import QuantumEngine, QubitRef


@dataclass
class LinkStats:
    header_qubits: int = 0
    data_payload_qubits: int = 0
    flag_qubits: int = 0
    epr_payload_qubits: int = 0
    epr_pairs_generated: int = 0
    epr_pairs_consumed: int = 0
    data_bits_delivered: int = 0
    data_frames: int = 0
    epr_frames: int = 0

    @property
    def total_transmissions(self) -> int:
        return (
            self.header_qubits
            + self.data_payload_qubits
            + self.flag_qubits
            + self.epr_payload_qubits
        )

    def copy(self) -> "LinkStats":
        return LinkStats(*astuple(self))

    def as_dict(self) -> dict[str, int]:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["total_transmissions"] = self.total_transmissions
        return d

    def __add__(self, other):
        return LinkStats(*(a + b for a, b in zip(astuple(self), astuple(other))))

    def __sub__(self, other):
        return LinkStats(*(a - b for a, b in zip(astuple(self), astuple(other))))


def avg_bits_per_data_qubit(stats: LinkStats) -> float:
    """Delivered data bits per data-frame payload qubit.

    Header, flag and EPR qubits are excluded, so a purely classical run gives
    exactly 1.0 and a fully superdense one exactly 2.0.
    """
    if stats.data_payload_qubits <= 0:
        raise MetricError("no data payload qubits were sent")
    return stats.data_bits_delivered / stats.data_payload_qubits


@dataclass(frozen=True)
class LinkConfig:
    epr_frame_len: int = 8
    capacity: int | None = None
    flag: FlagConfig = field(default_factory=FlagConfig)

    def __post_init__(self):
        if self.epr_frame_len < 0:
            raise ValueError("epr_frame_len must be non-negative")
        if self.capacity is not None and self.capacity < 0:
            raise ValueError("capacity must be non-negative")


@dataclass(frozen=True)
class Delivery:
    qubits: tuple[QubitRef, ...]
    payload_qubits: int


class QuantumChannel:
    """Error-free qubit channel with frame-granular hand-off."""

    def __init__(self):
        self._frames: deque[Delivery] = deque()
        self.sent = 0
        self.delivered = 0

    def __len__(self):
        return len(self._frames)

    @property
    def in_flight(self) -> int:
        return self.sent - self.delivered

    def send(self, frame: Frame) -> None:
        d = Delivery(tuple(frame.qubits()), len(frame.payload))
        self._frames.append(d)
        self.sent += len(d.qubits)

    def receive(self) -> Delivery | None:
        if not self._frames:
            return None
        d = self._frames.popleft()
        self.delivered += len(d.qubits)
        return d


class StepOutcome(Enum):
    SENT_DATA = "data"
    SENT_EPR = "epr"
    IDLE = "idle"


@dataclass
class SenderState:
    engine: QuantumEngine
    channel: QuantumChannel
    config: LinkConfig
    stats: LinkStats
    buffer: EntBuffer = None
    queue: deque = field(default_factory=deque)

    def __post_init__(self):
        if self.buffer is None:
            self.buffer = EntBuffer(self.config.capacity)


@dataclass
class ReceiverState:
    engine: QuantumEngine
    channel: QuantumChannel
    config: LinkConfig
    stats: LinkStats
    buffer: EntBuffer = None
    delivered: list = field(default_factory=list)
    pairs_consumed: int = 0

    def __post_init__(self):
        if self.buffer is None:
            self.buffer = EntBuffer(self.config.capacity)


def sender_step(s: SenderState, allow_epr: bool = True) -> StepOutcome:
    """One iteration of the sender loop.

    ``allow_epr`` is the driver's idle budget: EPR frames are only sent when
    it is true, so an idle ideal link does not generate pairs forever.
    """
    cfg = s.config
    st = s.stats
    if s.queue:
        frame = encode_data_frame(s.engine, s.queue.popleft(), s.buffer, cfg.flag)
        st.data_frames += 1
        st.data_payload_qubits += len(frame.payload)
        st.epr_pairs_consumed += frame.pairs
        outcome = StepOutcome.SENT_DATA
    elif not s.buffer.is_full and allow_epr:
        frame = encode_epr_frame(s.engine, s.buffer, cfg.epr_frame_len, cfg.flag)
        st.epr_frames += 1
        st.epr_payload_qubits += len(frame.payload)
        st.epr_pairs_generated += frame.pairs
        outcome = StepOutcome.SENT_EPR
    else:
        return StepOutcome.IDLE
    st.header_qubits += 1
    st.flag_qubits += len(frame.flag)
    s.channel.send(frame)
    return outcome


def receiver_step(r: ReceiverState) -> FrameResult | None:
    """Decode the next frame on the channel, or return ``None`` if there is none."""
    d = r.channel.receive()
    if d is None:
        return None
    stream = iter(d.qubits)
    result = decode_frame(
        r.engine,
        stream,
        r.buffer,
        r.config.epr_frame_len,
        r.config.flag,
        payload_qubits=d.payload_qubits,
    )
    leftover = sum(1 for _ in stream)
    if leftover:
        raise FramingError(f"{leftover} qubits left over after frame end")
    if result.is_data:
        r.delivered.append(result.data)
        r.pairs_consumed += result.pairs_consumed
        r.stats.data_bits_delivered += 8 * len(result.data)
    return result


class Link:
    """Sender, receiver, channel and engine wired together.

    Scheduling is strict alternation: one sender step, then the receiver
    drains the channel. Buffer occupancies are compared after every frame.
    """

    def __init__(self, config: LinkConfig = LinkConfig(), *, seed=None, backend=None, debug=True):
        self.config = config
        self.engine = QuantumEngine(seed, backend=backend, max_group_size=2 if debug else None)
        self.channel = QuantumChannel()
        self.stats = LinkStats()
        self.sender = SenderState(self.engine, self.channel, config, self.stats)
        self.receiver = ReceiverState(self.engine, self.channel, config, self.stats)

    def send(self, packet: bytes) -> None:
        self.sender.queue.append(bytes(packet))

    def step(self, allow_epr: bool = True) -> StepOutcome:
        outcome = sender_step(self.sender, allow_epr)
        self.drain()
        return outcome

    def drain(self) -> list[FrameResult]:
        results = []
        while True:
            res = receiver_step(self.receiver)
            if res is None:
                return results
            self.check_symmetry()
            results.append(res)

    def check_symmetry(self) -> None:
        s, r = len(self.sender.buffer), len(self.receiver.buffer)
        if s != r:
            raise BufferDesyncError(f"sender buffer {s} != receiver buffer {r}")
        if self.receiver.pairs_consumed != self.stats.epr_pairs_consumed:
            raise BufferDesyncError(
                f"receiver consumed {self.receiver.pairs_consumed} pairs, "
                f"sender {self.stats.epr_pairs_consumed}"
            )

    def flush(self) -> int:
        """Send every queued packet; returns the number of data frames sent."""
        sent = 0
        while self.sender.queue:
            self.step(allow_epr=False)
            sent += 1
        return sent
