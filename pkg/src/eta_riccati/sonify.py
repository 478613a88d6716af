"""Turn a sampled Riccati trajectory into a melody and a Standard MIDI File.

Pitch follows ``phi_a(t)``: the sampled values are min-max normalized onto
``[base_pitch, base_pitch + pitch_span]`` and snapped to the nearest scale
degree, ties going down. Because ``phi_a`` decreases and snapping is monotone,
the contour never rises. Duration follows ``eta_a(t) in (1/2, 1)``, cut at
0.625, 0.75 and 0.875 into eighth, quarter, half and whole notes. Velocity is
a constant 80.
"""

import math
import struct
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError, InfeasibleTargetError
from .riccati import riccati_sweep
from .series import EtaPoint

MAJOR_SCALE = (0, 2, 4, 5, 7, 9, 11)
TICKS_PER_QUARTER = 480
VELOCITY = 80
OFF_VELOCITY = 0x40
ETA_BINS = (0.625, 0.75, 0.875)
# eighth, quarter, half, whole in quarter-note units
BIN_QUARTERS = (0.5, 1.0, 2.0, 4.0)
TEMPO_RANGE = (20.0, 300.0)


@dataclass(frozen=True)
class MelodyConfig:
    a: float = 1.0
    t_start: float = 0.5
    t_end: float = 8.0
    steps: int = 32
    scale: tuple = MAJOR_SCALE
    base_pitch: int = 60
    pitch_span: int = 24
    tempo_bpm: float = 96.0
    target_seconds: float | None = None

    def __post_init__(self):
        EtaPoint(self.a, self.t_start)
        EtaPoint(self.a, self.t_end)
        if not self.t_end > self.t_start:
            raise DomainError(f"t_end must exceed t_start, got [{self.t_start}, {self.t_end}]")
        if int(self.steps) != self.steps or self.steps < 2:
            raise DomainError(f"steps must be an integer >= 2, got {self.steps!r}")
        scale = tuple(self.scale)
        if not scale or any(int(s) != s or not 0 <= s <= 11 for s in scale) \
                or any(b <= a for a, b in zip(scale, scale[1:])):
            raise DomainError(f"scale must be strictly increasing pitch classes in 0..11, got {self.scale!r}")
        if int(self.pitch_span) != self.pitch_span or self.pitch_span < 1:
            raise DomainError(f"pitch_span must be a positive integer, got {self.pitch_span!r}")
        if int(self.base_pitch) != self.base_pitch or not 0 <= self.base_pitch <= 127 - self.pitch_span:
            raise DomainError(
                f"base_pitch must be an integer with base_pitch + pitch_span <= 127, got {self.base_pitch!r}")
        if not (self.tempo_bpm > 0 and math.isfinite(self.tempo_bpm)):
            raise DomainError(f"tempo_bpm must be positive, got {self.tempo_bpm!r}")
        if self.target_seconds is not None and not (self.target_seconds > 0 and math.isfinite(self.target_seconds)):
            raise DomainError(f"target_seconds must be positive, got {self.target_seconds!r}")
        object.__setattr__(self, "scale", tuple(int(s) for s in scale))
        object.__setattr__(self, "steps", int(self.steps))
        object.__setattr__(self, "base_pitch", int(self.base_pitch))
        object.__setattr__(self, "pitch_span", int(self.pitch_span))


PRESETS = {
    # short theme; phi decays faster at a = 2 so the line falls quickly
    "theme": MelodyConfig(a=2.0, t_start=0.5, t_end=4.0, steps=32, tempo_bpm=120.0),
    "composition": MelodyConfig(a=1.0, t_start=0.5, t_end=8.0, steps=128, target_seconds=300.0),
}


@dataclass(frozen=True)
class NoteEvent:
    pitch: int
    duration_ticks: int
    velocity: int = VELOCITY

    def __post_init__(self):
        if int(self.pitch) != self.pitch or not 0 <= self.pitch <= 127:
            raise DomainError(f"pitch must be in 0..127, got {self.pitch!r}")
        if int(self.duration_ticks) != self.duration_ticks or self.duration_ticks < 1:
            raise DomainError(f"duration_ticks must be a positive integer, got {self.duration_ticks!r}")
        if int(self.velocity) != self.velocity or not 1 <= self.velocity <= 127:
            raise DomainError(f"velocity must be in 1..127, got {self.velocity!r}")


@dataclass(frozen=True)
class MidiDocument:
    tempo_bpm: float
    events: tuple = field(default_factory=tuple)
    ticks_per_quarter: int = TICKS_PER_QUARTER

    def __post_init__(self):
        if int(self.ticks_per_quarter) != self.ticks_per_quarter or not 1 <= self.ticks_per_quarter < 0x8000:
            raise DomainError(f"ticks_per_quarter must be in 1..32767, got {self.ticks_per_quarter!r}")
        if not self.tempo_bpm > 0 or _tempo_micros(self.tempo_bpm) > 0xFFFFFF:
            raise DomainError(f"tempo_bpm {self.tempo_bpm!r} does not fit a MIDI tempo event")
        object.__setattr__(self, "events", tuple(self.events))

    @property
    def total_ticks(self):
        return sum(e.duration_ticks for e in self.events)

    @property
    def seconds(self):
        """Playback length at ``tempo_bpm``."""
        return self.total_ticks / self.ticks_per_quarter * 60.0 / self.tempo_bpm


def time_grid(cfg):
    return np.linspace(cfg.t_start, cfg.t_end, cfg.steps)


def trajectory(cfg):
    return riccati_sweep([EtaPoint(cfg.a, t) for t in time_grid(cfg)])


def raw_pitches(phi, base_pitch, pitch_span):
    """Min-max map of ``phi`` onto ``[base_pitch, base_pitch + pitch_span]``."""
    phi = np.asarray(phi, dtype=np.float64)
    lo, hi = phi.min(), phi.max()
    if hi == lo:
        return np.full(phi.shape, float(base_pitch))
    return base_pitch + pitch_span * (phi - lo) / (hi - lo)


def scale_pitches(scale, base_pitch, pitch_span):
    """All pitches of ``scale`` (relative to ``base_pitch``) inside the range."""
    out = [base_pitch + 12 * octave + s
           for octave in range(pitch_span // 12 + 1) for s in scale]
    out = sorted(p for p in out if p <= base_pitch + pitch_span)
    if not out:
        raise DomainError("no scale degree falls inside the pitch range")
    return np.array(out)


def snap(raw, degrees):
    """Nearest entry of the sorted ``degrees`` for each raw pitch; ties go down."""
    raw = np.asarray(raw, dtype=np.float64)
    if len(degrees) == 1:
        return np.full(raw.shape, degrees[0])
    idx = np.clip(np.searchsorted(degrees, raw), 1, len(degrees) - 1)
    below, above = degrees[idx - 1], degrees[idx]
    return np.where(above - raw < raw - below, above, below)


def duration_quarters(eta):
    return BIN_QUARTERS[int(np.searchsorted(ETA_BINS, eta, side="right"))]


def melody_from_riccati(cfg, ticks_per_quarter=TICKS_PER_QUARTER):
    samples = trajectory(cfg)
    raw = raw_pitches([s.phi for s in samples], cfg.base_pitch, cfg.pitch_span)
    pitches = snap(raw, scale_pitches(cfg.scale, cfg.base_pitch, cfg.pitch_span))
    return [NoteEvent(int(p), int(round(duration_quarters(s.eta) * ticks_per_quarter)))
            for p, s in zip(pitches, samples)]


def compose(cfg):
    """Melody plus tempo; with ``target_seconds`` the tempo is solved for it."""
    events = melody_from_riccati(cfg)
    tempo = cfg.tempo_bpm
    if cfg.target_seconds is not None:
        beats = sum(e.duration_ticks for e in events) / TICKS_PER_QUARTER
        tempo = beats * 60.0 / cfg.target_seconds
        lo, hi = TEMPO_RANGE
        if not lo <= tempo <= hi:
            raise InfeasibleTargetError(
                f"{cfg.target_seconds:g} s needs {tempo:.1f} bpm, outside [{lo:g}, {hi:g}]")
    return MidiDocument(tempo, tuple(events), TICKS_PER_QUARTER)


def preset(name, **overrides):
    try:
        cfg = PRESETS[name]
    except KeyError:
        raise DomainError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return replace(cfg, **overrides) if overrides else cfg


# --- Standard MIDI File encoding ---

class MidiFormatError(ValueError):
    pass


def _tempo_micros(bpm):
    return int(round(60_000_000 / bpm))


def encode_vlq(value):
    if int(value) != value or not 0 <= value <= 0x0FFFFFFF:
        raise DomainError(f"VLQ value out of range: {value!r}")
    value = int(value)
    out = [value & 0x7F]
    value >>= 7
    while value:
        out.append(0x80 | (value & 0x7F))
        value >>= 7
    return bytes(reversed(out))


def decode_vlq(data, pos):
    value = 0
    for i in range(4):
        if pos + i >= len(data):
            raise MidiFormatError("truncated variable-length quantity")
        b = data[pos + i]
        value = (value << 7) | (b & 0x7F)
        if not b & 0x80:
            return value, pos + i + 1
    raise MidiFormatError("variable-length quantity longer than 4 bytes")


def write_midi(doc):
    """Standard MIDI File, format 0, single track."""
    track = bytearray()
    track += b"\x00\xff\x51\x03" + _tempo_micros(doc.tempo_bpm).to_bytes(3, "big")
    for e in doc.events:
        track += b"\x00" + bytes((0x90, e.pitch, e.velocity))
        track += encode_vlq(e.duration_ticks) + bytes((0x80, e.pitch, OFF_VELOCITY))
    track += b"\x00\xff\x2f\x00"
    header = b"MThd" + struct.pack(">IHHH", 6, 0, 1, doc.ticks_per_quarter)
    return header + b"MTrk" + struct.pack(">I", len(track)) + bytes(track)


def parse_midi(data):
    """Structural re-parse of a format-0 file back into a :class:`MidiDocument`.

    Notes are paired note-on/note-off per pitch (note-on with velocity 0 counts
    as an off). Anything malformed raises :class:`MidiFormatError`.
    """
    data = bytes(data)
    if data[:4] != b"MThd" or len(data) < 14:
        raise MidiFormatError("missing MThd header")
    length, fmt, ntracks, division = struct.unpack(">IHHH", data[4:14])
    if length != 6 or fmt != 0 or ntracks != 1:
        raise MidiFormatError(f"expected format 0 with one track, got format {fmt}, {ntracks} tracks")
    if division & 0x8000:
        raise MidiFormatError("SMPTE time division is not supported")
    if data[14:18] != b"MTrk":
        raise MidiFormatError("missing MTrk chunk")
    (track_len,) = struct.unpack(">I", data[18:22])
    end = 22 + track_len
    if end != len(data):
        raise MidiFormatError("track length does not match file size")

    pos, now, status = 22, 0, None
    tempo = 500_000
    open_notes = {}
    starts = []
    finished = False
    while pos < end:
        if finished:
            raise MidiFormatError("data after end-of-track")
        delta, pos = decode_vlq(data, pos)
        now += delta
        if pos >= end:
            raise MidiFormatError("truncated event")
        byte = data[pos]
        if byte == 0xFF:
            if pos + 2 > end:
                raise MidiFormatError("truncated meta event")
            kind = data[pos + 1]
            size, pos = decode_vlq(data, pos + 2)
            body = data[pos:pos + size]
            if len(body) != size:
                raise MidiFormatError("truncated meta event")
            pos += size
            if kind == 0x51:
                if size != 3:
                    raise MidiFormatError("bad tempo event")
                tempo = int.from_bytes(body, "big")
            elif kind == 0x2F:
                finished = True
            continue
        if byte in (0xF0, 0xF7):
            size, pos = decode_vlq(data, pos + 1)
            pos += size
            continue
        if byte & 0x80:
            status = byte
            pos += 1
        elif status is None:
            raise MidiFormatError("running status without a prior status byte")
        kind = status & 0xF0
        width = 1 if kind in (0xC0, 0xD0) else 2
        args = data[pos:pos + width]
        if len(args) != width or any(b & 0x80 for b in args):
            raise MidiFormatError("bad channel event data")
        pos += width
        if kind == 0x90 and args[1] > 0:
            if args[0] in open_notes:
                raise MidiFormatError(f"overlapping note-on for pitch {args[0]}")
            open_notes[args[0]] = len(starts)
            starts.append([args[0], now, None, args[1]])
        elif kind == 0x80 or kind == 0x90:
            idx = open_notes.pop(args[0], None)
            if idx is None:
                raise MidiFormatError(f"note-off without note-on for pitch {args[0]}")
            starts[idx][2] = now
    if not finished:
        raise MidiFormatError("missing end-of-track")
    if open_notes:
        raise MidiFormatError("unterminated notes")
    events = tuple(NoteEvent(p, off - on, vel) for p, on, off, vel in starts)
    return MidiDocument(60_000_000 / tempo, events, division)


__all__ = [
    "MAJOR_SCALE",
    "MelodyConfig",
    "MidiDocument",
    "MidiFormatError",
    "NoteEvent",
    "PRESETS",
    "compose",
    "decode_vlq",
    "duration_quarters",
    "encode_vlq",
    "melody_from_riccati",
    "parse_midi",
    "preset",
    "raw_pitches",
    "scale_pitches",
    "snap",
    "time_grid",
    "trajectory",
    "write_midi",
]
