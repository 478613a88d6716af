import struct

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eta_riccati.errors import DomainError, InfeasibleTargetError
from eta_riccati.series import EtaPoint, eta_direct
from eta_riccati.sonify import (
    BIN_QUARTERS,
    ETA_BINS,
    MelodyConfig,
    MidiDocument,
    MidiFormatError,
    NoteEvent,
    PRESETS,
    compose,
    decode_vlq,
    duration_quarters,
    encode_vlq,
    melody_from_riccati,
    parse_midi,
    preset,
    raw_pitches,
    scale_pitches,
    snap,
    time_grid,
    trajectory,
    write_midi,
)

SINGLE_NOTE = bytes.fromhex(
    "4d546864000000060000000101e0"
    "4d54726b00000014"
    "00ff510307a120"
    "00903c50" "8360803c40"
    "00ff2f00"
)


@pytest.fixture(scope="module")
def composition():
    return compose(preset("composition"))


# --- configuration ---

@pytest.mark.parametrize("kw", [
    {"t_start": 2.0, "t_end": 1.0},
    {"steps": 1},
    {"scale": (0, 0, 4)},
    {"scale": (0, 12)},
    {"pitch_span": 0},
    {"base_pitch": 120},
    {"tempo_bpm": 0.0},
    {"target_seconds": -5.0},
])
def test_config_rejects(kw):
    with pytest.raises(DomainError):
        MelodyConfig(**kw)


def test_presets():
    assert set(PRESETS) == {"theme", "composition"}
    assert preset("theme", steps=8).steps == 8
    with pytest.raises(DomainError):
        preset("symphony")


@pytest.mark.parametrize("kw", [{"pitch": 128, "duration_ticks": 1}, {"pitch": 60, "duration_ticks": 0},
                                {"pitch": 60, "duration_ticks": 1, "velocity": 0}])
def test_note_event_rejects(kw):
    with pytest.raises(DomainError):
        NoteEvent(**kw)


def test_document_seconds():
    doc = MidiDocument(120.0, [NoteEvent(60, 960), NoteEvent(62, 480)])
    assert doc.total_ticks == 1440
    assert doc.seconds == pytest.approx(1.5)
    with pytest.raises(DomainError):
        MidiDocument(1.0, [])


# --- variable-length quantities ---

@pytest.mark.parametrize("value,encoded", [
    (0, "00"), (0x40, "40"), (0x7F, "7f"), (0x80, "8100"), (480, "8360"),
    (0x2000, "c000"), (0x3FFF, "ff7f"), (0x4000, "818000"), (0x0FFFFFFF, "ffffff7f"),
])
def test_vlq_known_values(value, encoded):
    assert encode_vlq(value).hex() == encoded
    assert decode_vlq(bytes.fromhex(encoded), 0) == (value, len(encoded) // 2)


@given(st.integers(0, 0x0FFFFFFF))
def test_vlq_round_trip(value):
    data = b"\x99" + encode_vlq(value)
    assert decode_vlq(data, 1) == (value, len(data))


def test_vlq_errors():
    with pytest.raises(DomainError):
        encode_vlq(0x10000000)
    with pytest.raises(DomainError):
        encode_vlq(-1)
    with pytest.raises(MidiFormatError):
        decode_vlq(b"\x81", 0)
    with pytest.raises(MidiFormatError):
        decode_vlq(b"\x81\x81\x81\x81\x01", 0)


# --- file layout ---

def test_single_note_bytes():
    doc = MidiDocument(120.0, [NoteEvent(60, 480)])
    assert write_midi(doc) == SINGLE_NOTE


def test_header_fields(composition):
    data = write_midi(composition)
    assert data[:4] == b"MThd"
    assert struct.unpack(">IHHH", data[4:14]) == (6, 0, 1, 480)
    assert data[14:18] == b"MTrk"
    assert struct.unpack(">I", data[18:22])[0] == len(data) - 22
    assert data.endswith(b"\x00\xff\x2f\x00")


def test_empty_document_round_trip():
    doc = MidiDocument(100.0, [])
    back = parse_midi(write_midi(doc))
    assert back.events == () and back.tempo_bpm == pytest.approx(100.0)


def test_round_trip(composition):
    back = parse_midi(write_midi(composition))
    assert back.events == composition.events
    assert back.ticks_per_quarter == composition.ticks_per_quarter
    assert back.tempo_bpm == pytest.approx(composition.tempo_bpm, rel=1e-6)
    assert write_midi(back) == write_midi(composition)


def test_deterministic_bytes():
    cfg = preset("theme")
    assert write_midi(compose(cfg)) == write_midi(compose(cfg))


def test_parse_running_status_and_zero_velocity_off():
    track = (b"\x00\xff\x51\x03\x07\xa1\x20"
             b"\x00\x90\x3c\x50" b"\x83\x60\x3c\x00"  # running status, velocity-0 off
             b"\x00\x3e\x50" b"\x81\x70\x3e\x00"
             b"\x00\xff\x2f\x00")
    data = b"MThd" + struct.pack(">IHHH", 6, 0, 1, 480) + b"MTrk" + struct.pack(">I", len(track)) + track
    doc = parse_midi(data)
    assert [(e.pitch, e.duration_ticks) for e in doc.events] == [(60, 480), (62, 240)]


@pytest.mark.parametrize("mutate", [
    lambda d: b"MThx" + d[4:],
    lambda d: d[:8] + b"\x00\x01" + d[10:],
    lambda d: d[:12] + b"\xe7\x28",
    lambda d: d[:-4],
    lambda d: d[:-4] + b"\x00\xff\x2f\x00\x00",
    lambda d: d[:18] + struct.pack(">I", len(d)) + d[22:],
    lambda d: d.replace(b"\x80\x3c\x40", b"\x80\x3d\x40"),
    lambda d: d.replace(b"\x83\x60\x80\x3c\x40", b"\x83\x60\x90\x3c\x40"),
])
def test_parse_rejects_malformed(mutate):
    with pytest.raises(MidiFormatError):
        parse_midi(mutate(SINGLE_NOTE))


# --- melody ---

def test_composition_length(composition):
    assert abs(composition.seconds - 300.0) <= 15.0
    assert len(composition.events) == 128


def test_infeasible_target():
    with pytest.raises(InfeasibleTargetError):
        compose(preset("composition", target_seconds=1.0))
    with pytest.raises(InfeasibleTargetError):
        compose(preset("composition", target_seconds=1e5))


def test_raw_contour_is_non_increasing():
    cfg = preset("composition")
    raw = raw_pitches([s.phi for s in trajectory(cfg)], cfg.base_pitch, cfg.pitch_span)
    assert np.all(np.diff(raw) <= 0)
    assert raw[0] == cfg.base_pitch + cfg.pitch_span and raw[-1] == cfg.base_pitch


def test_snapped_pitches_stay_in_scale_and_descend():
    cfg = preset("theme")
    pitches = [e.pitch for e in melody_from_riccati(cfg)]
    allowed = set(scale_pitches(cfg.scale, cfg.base_pitch, cfg.pitch_span).tolist())
    assert set(pitches) <= allowed
    assert all(x >= y for x, y in zip(pitches, pitches[1:]))


def test_two_steps_hit_range_ends():
    cfg = MelodyConfig(steps=2)
    pitches = [e.pitch for e in melody_from_riccati(cfg)]
    assert pitches == [cfg.base_pitch + cfg.pitch_span, cfg.base_pitch]


def test_raw_pitches_constant_input():
    assert np.all(raw_pitches([0.3, 0.3], 60, 24) == 60)


def test_snap_ties_and_edges():
    degrees = np.array([60, 62, 64, 65])
    assert snap([61.0, 63.0, 64.5], degrees).tolist() == [60, 62, 64]
    assert snap([59.0, 70.0, 62.4], degrees).tolist() == [60, 65, 62]
    assert snap([61.0], np.array([67])).tolist() == [67]


def test_scale_pitches_major_two_octaves():
    got = scale_pitches((0, 2, 4, 5, 7, 9, 11), 60, 24).tolist()
    assert got[:8] == [60, 62, 64, 65, 67, 69, 71, 72] and got[-1] == 84
    assert len(got) == 15


def test_duration_bins():
    assert [duration_quarters(x) for x in (0.6, 0.625, 0.7, 0.8, 0.9, 1.0)] == [0.5, 1.0, 1.0, 2.0, 4.0, 4.0]
    assert len(BIN_QUARTERS) == len(ETA_BINS) + 1


def test_durations_follow_eta():
    cfg = preset("theme", steps=12)
    events = melody_from_riccati(cfg)
    for t, e in zip(time_grid(cfg), events):
        eta = eta_direct(EtaPoint(cfg.a, t)).value
        assert e.duration_ticks == round(duration_quarters(eta) * 480)


def test_late_notes_longer_for_a2():
    cfg = MelodyConfig(a=2.0, t_start=0.5, t_end=8.0, steps=16)
    ticks = [e.duration_ticks for e in melody_from_riccati(cfg)]
    assert ticks[-1] > ticks[0]
    assert all(x <= y for x, y in zip(ticks, ticks[1:]))


def test_unset_target_keeps_tempo():
    cfg = MelodyConfig(a=1.0, steps=10, tempo_bpm=96.0)
    doc = compose(cfg)
    assert doc.tempo_bpm == 96.0
    assert doc.seconds == pytest.approx(sum(e.duration_ticks for e in doc.events) / 480 * 60 / 96.0)


def test_sixty_four_steps_a2_round_trip():
    doc = compose(MelodyConfig(a=2.0, steps=64))
    back = parse_midi(write_midi(doc))
    assert back.events == doc.events and len(back.events) == 64
