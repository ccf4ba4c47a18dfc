import pytest

from gewi.errors import MetricError
from gewi.framing import FlagConfig, FlagMode, FrameKind
from gewi.link import (
    Link,
    LinkConfig,
    LinkStats,
    QuantumChannel,
    StepOutcome,
    avg_bits_per_data_qubit,
    receiver_step,
    sender_step,
)


@pytest.fixture(params=[FlagMode.UNIFORM, FlagMode.ORACLE])
def link(request, backend):
    return Link(LinkConfig(8, None, FlagConfig(mode=request.param)), seed=3, backend=backend)


def test_data_takes_priority(link):
    link.send(b"pkt")
    assert sender_step(link.sender) is StepOutcome.SENT_DATA
    assert link.stats.data_frames == 1
    assert link.stats.epr_frames == 0


def test_epr_when_idle(link):
    assert link.step() is StepOutcome.SENT_EPR
    assert len(link.sender.buffer) == len(link.receiver.buffer) == 8
    assert link.stats.epr_pairs_generated == 8


def test_idle_without_budget_or_room(backend):
    link = Link(LinkConfig(8, capacity=8), backend=backend)
    assert link.step(allow_epr=False) is StepOutcome.IDLE
    assert link.step() is StepOutcome.SENT_EPR
    assert link.step() is StepOutcome.IDLE
    assert link.stats.total_transmissions == 17


def test_receiver_on_empty_channel(link):
    assert receiver_step(link.receiver) is None


def test_data_delivered_upward(link):
    link.step()
    link.send(b"payload!")
    link.step()
    assert link.receiver.delivered == [b"payload!"]
    assert link.stats.data_bits_delivered == 64
    # 8 pairs cover 16 of 64 payload bits
    assert link.stats.data_payload_qubits == 8 + 48


def test_epr_result_reports_stored(backend):
    link = Link(LinkConfig(5), backend=backend)
    sender_step(link.sender)
    res = receiver_step(link.receiver)
    assert res.kind is FrameKind.EPR and res.stored == 5


def test_capacity_clamp_mirrored(backend):
    link = Link(LinkConfig(8, capacity=11), backend=backend)
    link.step()
    link.step()
    assert len(link.sender.buffer) == len(link.receiver.buffer) == 11
    assert link.stats.epr_payload_qubits == 11


def test_channel_is_ordered_and_counts(backend):
    link = Link(LinkConfig(2), backend=backend)
    ch = link.channel
    for p in (b"a", b"b", b"c"):
        link.sender.queue.append(p)
        sender_step(link.sender)
    assert len(ch) == 3 and ch.in_flight == ch.sent
    link.drain()
    assert link.receiver.delivered == [b"a", b"b", b"c"]
    assert ch.in_flight == 0 and ch.delivered == ch.sent


def test_stats_accounting(link):
    link.step()
    link.send(b"\x01\x02\x03")
    link.step()
    st = link.stats
    assert st.total_transmissions == link.channel.sent
    assert st.epr_pairs_consumed <= st.epr_pairs_generated
    assert st.epr_pairs_generated - st.epr_pairs_consumed == len(link.sender.buffer)


def test_metric():
    assert avg_bits_per_data_qubit(LinkStats(data_payload_qubits=168, data_bits_delivered=168)) == 1.0
    assert avg_bits_per_data_qubit(LinkStats(data_payload_qubits=84, data_bits_delivered=168)) == 2.0
    with pytest.raises(MetricError):
        avg_bits_per_data_qubit(LinkStats())


def test_stats_arithmetic():
    a = LinkStats(header_qubits=2, flag_qubits=16)
    b = a.copy()
    b.header_qubits += 1
    assert (b - a).header_qubits == 1
    assert (a + b).flag_qubits == 32
    assert a.as_dict()["total_transmissions"] == 18


def test_empty_channel_receive():
    assert QuantumChannel().receive() is None
