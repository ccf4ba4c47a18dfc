"""Periodic bursty workload and the experiment driver.

Every cycle is an idle phase (the sender may send ``epr_frames`` EPR frames)
followed by a burst phase (``burst_packets`` random packets are queued and
drained through the link). Statistics from post-warmup cycles are summed and
compared with the closed-form model.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .analytic import bits_per_transmission
from .errors import DeliveryError
from .framing import ESCAPE_BYTE, FLAG_BYTE, FlagConfig, FlagMode, Stuffing
from .link import Link, LinkConfig, LinkStats, StepOutcome, avg_bits_per_data_qubit


@dataclass(frozen=True)
class ExperimentConfig:
    burst_packets: int
    epr_frames: int
    packet_bits: int = 168
    epr_frame_len: int = 8
    cycles: int = 3
    warmup_cycles: int = 1
    mode: FlagMode = FlagMode.UNIFORM
    stuffing: Stuffing = Stuffing.STRICT
    capacity: int | None = None
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mode", FlagMode(self.mode))
        object.__setattr__(self, "stuffing", Stuffing(self.stuffing))
        problems = []
        if self.burst_packets < 1:
            problems.append("burst_packets must be >= 1")
        if self.packet_bits < 8 or self.packet_bits % 8:
            problems.append("packet_bits must be a positive multiple of 8")
        if self.epr_frames < 0:
            problems.append("epr_frames must be >= 0")
        if self.epr_frame_len < 0:
            problems.append("epr_frame_len must be >= 0")
        if self.cycles < 1:
            problems.append("cycles must be >= 1")
        if not 0 <= self.warmup_cycles < self.cycles:
            problems.append("warmup_cycles must be in [0, cycles)")
        if self.capacity is not None and self.capacity < 0:
            problems.append("capacity must be >= 0")
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def flag(self) -> FlagConfig:
        return FlagConfig(FLAG_BYTE, self.mode, self.stuffing)

    @property
    def link(self) -> LinkConfig:
        return LinkConfig(self.epr_frame_len, self.capacity, self.flag)

    def with_(self, **changes) -> "ExperimentConfig":
        return replace(self, **changes)


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    per_cycle: list[LinkStats]
    aggregate: LinkStats
    measured: float
    analytic: float
    final_buffer: int = 0
    backend: str = ""

    @property
    def deviation(self) -> float:
        return self.measured - self.analytic


def generate_burst(count: int, bits: int, rng, flag_byte: int | None = None) -> list[bytes]:
    """``count`` packets of ``bits // 8`` uniform random bytes.

    With ``flag_byte`` set, that value is never drawn.
    """
    if bits % 8:
        raise ValueError(f"packet size {bits} bits is not byte-aligned")
    if count < 0:
        raise ValueError("packet count must be non-negative")
    n = bits // 8
    packets = []
    for _ in range(count):
        if flag_byte is None:
            raw = rng.integers(0, 256, size=n, dtype=np.uint16)
        else:
            raw = rng.integers(0, 255, size=n, dtype=np.uint16)
            raw[raw >= flag_byte] += 1
        packets.append(raw.astype(np.uint8).tobytes())
    return packets


def _burst(cfg: ExperimentConfig, rng) -> list[bytes]:
    flag = FLAG_BYTE if cfg.stuffing is Stuffing.STRICT else None
    return generate_burst(cfg.burst_packets, cfg.packet_bits, rng, flag)


def run_experiment(cfg: ExperimentConfig, *, backend=None, debug=True) -> ExperimentResult:
    link = Link(cfg.link, seed=cfg.seed, backend=backend, debug=debug)
    rng = np.random.default_rng(cfg.seed)
    per_cycle = []
    for cycle in range(cfg.cycles):
        before = link.stats.copy()
        for _ in range(cfg.epr_frames):
            outcome = link.step(allow_epr=True)
            if outcome is StepOutcome.SENT_DATA:
                raise AssertionError("data sent during an idle phase")
        packets = _burst(cfg, rng)
        start = len(link.receiver.delivered)
        for p in packets:
            link.send(p)
        link.flush()
        got = link.receiver.delivered[start:]
        if got != packets:
            raise DeliveryError(f"cycle {cycle}: delivered payloads differ from injected ones")
        per_cycle.append(link.stats - before)
    aggregate = LinkStats()
    for delta in per_cycle[cfg.warmup_cycles:]:
        aggregate = aggregate + delta
    return ExperimentResult(
        config=cfg,
        per_cycle=per_cycle,
        aggregate=aggregate,
        measured=avg_bits_per_data_qubit(aggregate),
        analytic=bits_per_transmission(
            cfg.burst_packets, cfg.epr_frames, cfg.packet_bits, cfg.epr_frame_len
        ),
        final_buffer=len(link.sender.buffer),
        backend=link.engine.backend,
    )


@dataclass
class OracleTrace:
    per_cycle: list[LinkStats] = field(default_factory=list)
    aggregate: LinkStats = field(default_factory=LinkStats)
    final_buffer: int = 0

    @property
    def metric(self) -> float:
        return avg_bits_per_data_qubit(self.aggregate)


def trace_oracle(cfg: ExperimentConfig) -> OracleTrace:
    """Replay the greedy pair schedule with plain integer arithmetic.

    No engine, no frames: only counts. In stuffed mode the same packets are
    regenerated from the seed so their escaped lengths can be counted.
    """
    uniform = cfg.mode is FlagMode.UNIFORM
    cap = cfg.capacity
    buf = 0
    trace = OracleTrace()
    rng = np.random.default_rng(cfg.seed)
    for _ in range(cfg.cycles):
        c = LinkStats()
        for _ in range(cfg.epr_frames):
            if cap is not None and buf >= cap:
                continue
            n = cfg.epr_frame_len if cap is None else min(cfg.epr_frame_len, cap - buf)
            buf += n
            c.epr_frames += 1
            c.header_qubits += 1
            c.flag_qubits += 8
            c.epr_payload_qubits += n
            c.epr_pairs_generated += n

        if cfg.stuffing is Stuffing.STUFFED:
            sizes = [
                len(p) + sum(1 for b in p if b in (FLAG_BYTE, ESCAPE_BYTE))
                for p in _burst(cfg, rng)
            ]
        else:
            sizes = [cfg.packet_bits // 8] * cfg.burst_packets

        for size in sizes:
            bits = 8 * size
            payload_pairs = min(buf, bits // 2)
            buf -= payload_pairs
            if uniform:
                flag_pairs = min(buf, 4)
                buf -= flag_pairs
            else:
                flag_pairs = 0
            c.data_frames += 1
            c.header_qubits += 1
            c.data_payload_qubits += bits - payload_pairs
            c.flag_qubits += 8 - flag_pairs
            c.epr_pairs_consumed += payload_pairs + flag_pairs
        c.data_bits_delivered = cfg.burst_packets * cfg.packet_bits
        trace.per_cycle.append(c)

    for c in trace.per_cycle[cfg.warmup_cycles:]:
        trace.aggregate = trace.aggregate + c
    trace.final_buffer = buf
    return trace
