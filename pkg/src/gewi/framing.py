"""Qubit frames for the entanglement-assisted link.

A frame is one Type qubit, a variable-length payload and an 8-bit flag
trailer. Data frames carry ``|1>`` in the Type qubit and EPR frames ``|0>``.
Bits are taken most-significant first and paired as ``(earlier, later)``;
a pair rides on one superdense-coded qubit whenever the local entanglement
buffer has a half to spend, otherwise each bit gets its own basis qubit.

Two flag modes exist because the decoder spends a buffered pair on *every*
incoming qubit while its buffer is non-empty:

``uniform``
    The flag bits join the bit stream and follow the same pair-if-available
    rule as the payload. Self-delimiting; no side information needed.
``oracle``
    The flag is always 8 basis qubits and the receiver is told the payload
    qubit count out of band. This reproduces the reference throughput
    numbers exactly.

See ``docs/frame_format.md`` for the bit-exact layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .buffer import EntBuffer
from .errors import BufferFullError, FlagCollisionError, FramingError
from .qsim import QuantumEngine, QubitRef, superdense_decode, superdense_encode

FLAG_BYTE = 0x7E
ESCAPE_BYTE = 0x7D
ESCAPE_XOR = 0x20
FLAG_QUBITS = 8

_BITS = [tuple((b >> (7 - i)) & 1 for i in range(8)) for b in range(256)]


class FlagMode(str, Enum):
    UNIFORM = "uniform"
    ORACLE = "oracle"


class Stuffing(str, Enum):
    STRICT = "strict"
    STUFFED = "stuffed"


@dataclass(frozen=True)
class FlagConfig:
    flag_byte: int = FLAG_BYTE
    mode: FlagMode = FlagMode.UNIFORM
    stuffing: Stuffing = Stuffing.STRICT

    def __post_init__(self):
        object.__setattr__(self, "mode", FlagMode(self.mode))
        object.__setattr__(self, "stuffing", Stuffing(self.stuffing))
        if not 0 <= self.flag_byte <= 0xFF:
            raise ValueError(f"flag byte out of range: {self.flag_byte}")
        if self.stuffing is Stuffing.STUFFED and self.flag_byte in (
            ESCAPE_BYTE,
            ESCAPE_BYTE ^ ESCAPE_XOR,
        ):
            raise ValueError("flag byte collides with the escape sequence")


class FrameKind(str, Enum):
    DATA = "data"
    EPR = "epr"


@dataclass
class Frame:
    kind: FrameKind
    header: QubitRef
    payload: list[QubitRef] = field(default_factory=list)
    flag: list[QubitRef] = field(default_factory=list)
    # data frames: halves popped from the sender buffer; EPR frames: halves pushed
    pairs: int = 0

    def qubits(self) -> list[QubitRef]:
        return [self.header, *self.payload, *self.flag]

    def __len__(self):
        return 1 + len(self.payload) + len(self.flag)


@dataclass(frozen=True)
class FrameResult:
    kind: FrameKind
    data: bytes | None = None
    stored: int = 0
    pairs_consumed: int = 0

    @property
    def is_data(self) -> bool:
        return self.kind is FrameKind.DATA


def byte_bits(data: Iterable[int]) -> list[int]:
    return [bit for b in data for bit in _BITS[b]]


def bits_to_bytes(bits) -> bytes:
    if len(bits) % 8:
        raise ValueError("bit count is not a multiple of 8")
    out = bytearray()
    for i in range(0, len(bits), 8):
        v = 0
        for b in bits[i : i + 8]:
            v = (v << 1) | b
        out.append(v)
    return bytes(out)


def stuff_bytes(payload: bytes, cfg: FlagConfig = FlagConfig()) -> bytes:
    out = bytearray()
    for b in payload:
        if b == cfg.flag_byte or b == ESCAPE_BYTE:
            out.append(ESCAPE_BYTE)
            out.append(b ^ ESCAPE_XOR)
        else:
            out.append(b)
    return bytes(out)


def unstuff_bytes(data: bytes, cfg: FlagConfig = FlagConfig()) -> bytes:
    out = bytearray()
    escaped = False
    for b in data:
        if escaped:
            out.append(b ^ ESCAPE_XOR)
            escaped = False
        elif b == ESCAPE_BYTE:
            escaped = True
        else:
            out.append(b)
    if escaped:
        raise FramingError("dangling escape byte at end of input")
    return bytes(out)


def wire_bytes(payload: bytes, cfg: FlagConfig) -> bytes:
    """The byte sequence actually placed in a data frame's payload."""
    if cfg.stuffing is Stuffing.STUFFED:
        return stuff_bytes(payload, cfg)
    if cfg.flag_byte in payload:
        raise FlagCollisionError(
            f"payload contains flag byte 0x{cfg.flag_byte:02X} (strict mode)"
        )
    return payload


def _encode_bits(engine, bits, buffer, out) -> int:
    used = 0
    for i in range(0, len(bits), 2):
        b1 = bits[i]
        b2 = bits[i + 1]
        if buffer:
            q = buffer.pop()
            superdense_encode(engine, q, b1, b2)
            out.append(q)
            used += 1
        else:
            out.append(engine.new_qubit(b1))
            out.append(engine.new_qubit(b2))
    return used


def encode_data_frame(
    engine: QuantumEngine,
    payload: bytes,
    buffer: EntBuffer,
    cfg: FlagConfig = FlagConfig(),
) -> Frame:
    payload = bytes(payload)
    if not payload:
        raise ValueError("data frame payload must be non-empty")
    bits = byte_bits(wire_bytes(payload, cfg))
    frame = Frame(FrameKind.DATA, engine.new_qubit(1))
    frame.pairs = _encode_bits(engine, bits, buffer, frame.payload)
    flag_bits = _BITS[cfg.flag_byte]
    if cfg.mode is FlagMode.UNIFORM:
        frame.pairs += _encode_bits(engine, flag_bits, buffer, frame.flag)
    else:
        frame.flag = [engine.new_qubit(b) for b in flag_bits]
    return frame


def encode_epr_frame(
    engine: QuantumEngine,
    buffer: EntBuffer,
    max_pairs: int,
    cfg: FlagConfig = FlagConfig(),
) -> Frame:
    """Generate up to ``max_pairs`` EPR pairs, keep one half of each locally."""
    if buffer.is_full:
        raise BufferFullError("EPR frame requested with a full buffer")
    frame = Frame(FrameKind.EPR, engine.new_qubit(0))
    while not buffer.is_full and len(frame.payload) < max_pairs:
        local, remote = engine.make_epr()
        buffer.push(local)
        frame.payload.append(remote)
    frame.pairs = len(frame.payload)
    frame.flag = [engine.new_qubit(b) for b in _BITS[cfg.flag_byte]]
    return frame


class _Reader:
    __slots__ = ("_it", "taken")

    def __init__(self, stream):
        self._it = iter(stream)
        self.taken = 0

    def take(self) -> QubitRef:
        try:
            q = next(self._it)
        except StopIteration:
            raise FramingError(
                f"qubit stream ended after {self.taken} qubits inside a frame"
            ) from None
        self.taken += 1
        return q


def _decode_qubit(engine, q, buffer, bits) -> int:
    if buffer:
        bits.extend(superdense_decode(engine, q, buffer.pop()))
        return 1
    bits.append(engine.measure(q))
    return 0


def _verify_basis_flag(engine, reader, cfg):
    got = [engine.measure(reader.take()) for _ in range(FLAG_QUBITS)]
    if got != list(_BITS[cfg.flag_byte]):
        raise FramingError(
            f"bad flag trailer {bits_to_bytes(got).hex()} "
            f"(expected {cfg.flag_byte:02x})"
        )


def decode_frame(
    engine: QuantumEngine,
    stream: Iterable[QubitRef],
    buffer: EntBuffer,
    max_pairs: int,
    cfg: FlagConfig = FlagConfig(),
    *,
    payload_qubits: int | None = None,
) -> FrameResult:
    """Receive one frame from ``stream`` (positioned at a frame boundary).

    ``payload_qubits`` is the out-of-band payload length and is required in
    oracle mode. For EPR frames the receiver mirrors the sender's capacity
    clamp, so ``buffer`` must carry the same capacity as the sender's.
    """
    reader = _Reader(stream)
    header = engine.measure(reader.take())
    if header == 0:
        stored = buffer.room(max_pairs)
        for _ in range(stored):
            buffer.push(reader.take())
        _verify_basis_flag(engine, reader, cfg)
        return FrameResult(FrameKind.EPR, stored=stored)

    used = 0
    if cfg.mode is FlagMode.UNIFORM:
        out = bytearray()
        while True:
            bits: list[int] = []
            while len(bits) < 8:
                used += _decode_qubit(engine, reader.take(), buffer, bits)
            if len(bits) != 8:
                raise FramingError("superdense pair straddles a byte boundary")
            value = (
                bits[0] << 7 | bits[1] << 6 | bits[2] << 5 | bits[3] << 4
                | bits[4] << 3 | bits[5] << 2 | bits[6] << 1 | bits[7]
            )
            if value == cfg.flag_byte:
                break
            out.append(value)
        wire = bytes(out)
    else:
        if payload_qubits is None:
            raise FramingError("oracle mode needs the payload qubit count")
        bits = []
        for _ in range(payload_qubits):
            used += _decode_qubit(engine, reader.take(), buffer, bits)
        try:
            wire = bits_to_bytes(bits)
        except ValueError:
            raise FramingError(f"{len(bits)} payload bits do not fill whole bytes") from None
        _verify_basis_flag(engine, reader, cfg)

    data = unstuff_bytes(wire, cfg) if cfg.stuffing is Stuffing.STUFFED else wire
    return FrameResult(FrameKind.DATA, data=data, pairs_consumed=used)
