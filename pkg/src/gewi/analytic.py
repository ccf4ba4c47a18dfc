"""Closed-form throughput of periodic bursts with buffered entanglement.

A burst of ``burst_packets`` packets of ``packet_bits`` bits each follows an
idle period in which ``epr_frames`` frames of ``epr_frame_len`` pairs were
stored. Each stored pair carries two bits in one qubit; the rest go one bit
per qubit.
"""

from __future__ import annotations

from dataclasses import dataclass


def _check(burst_packets, epr_frames, packet_bits, epr_frame_len):
    if burst_packets < 1 or packet_bits < 1:
        raise ValueError("burst_packets and packet_bits must be >= 1")
    if epr_frames < 0 or epr_frame_len < 0:
        raise ValueError("epr_frames and epr_frame_len must be >= 0")


def burst_transmissions(burst_packets, epr_frames, packet_bits, epr_frame_len):
    """Payload qubits needed for one burst.

    Below saturation: pairs + classical bits = DB - EL. At or above it every
    bit pair is superdense coded, giving DB / 2.
    """
    _check(burst_packets, epr_frames, packet_bits, epr_frame_len)
    bits = burst_packets * packet_bits
    pairs = epr_frames * epr_frame_len
    if 2 * pairs < bits:
        return bits - pairs
    return bits / 2 if bits % 2 else bits // 2


def bits_per_transmission(burst_packets, epr_frames, packet_bits, epr_frame_len):
    _check(burst_packets, epr_frames, packet_bits, epr_frame_len)
    bits = burst_packets * packet_bits
    pairs = epr_frames * epr_frame_len
    if 2 * pairs < bits:
        return bits / (bits - pairs)
    return 2.0


def is_saturated(burst_packets, epr_frames, packet_bits, epr_frame_len) -> bool:
    return 2 * epr_frames * epr_frame_len >= burst_packets * packet_bits


@dataclass(frozen=True)
class AnalyticPoint:
    burst_packets: int
    epr_frames: int
    packet_bits: int
    epr_frame_len: int
    transmissions: float
    bits_per_transmission: float


def analytic_point(burst_packets, epr_frames, packet_bits, epr_frame_len) -> AnalyticPoint:
    args = (burst_packets, epr_frames, packet_bits, epr_frame_len)
    return AnalyticPoint(*args, burst_transmissions(*args), bits_per_transmission(*args))
