"""Utterance manifest IO and data-mixture accounting.

Manifests are newline-delimited JSON with the conventional ASR fields
(audio_filepath, duration, text, plus optional source/dialect). Durations are
parsed as exact decimals so mixture totals are bit-stable; hour sums never go
through binary floating point.
"""

import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal, localcontext

GROUP_KEYS = ("source", "dialect")
_FIELD_ORDER = ("audio_filepath", "duration", "text", "source", "dialect")


class ManifestParseError(ValueError):
    def __init__(self, line_no, reason):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


def _as_decimal(value):
    if isinstance(value, Decimal):
        return value
    if isinstance(value, int):
        return Decimal(value)
    if isinstance(value, float):
        # float durations come from callers, not files; str() keeps the
        # shortest round-tripping decimal form
        return Decimal(str(value))
    if isinstance(value, str):
        return Decimal(value)
    raise TypeError(f"cannot use {type(value).__name__} as a duration")


@dataclass
class ManifestEntry:
    audio_filepath: str
    duration: Decimal
    text: str = ""
    source: str | None = None
    dialect: str | None = None

    def __post_init__(self):
        if not self.audio_filepath:
            raise ValueError("audio_filepath must be nonempty")
        self.duration = _as_decimal(self.duration)
        if self.duration < 0:
            raise ValueError("duration must be non-negative")

    @classmethod
    def from_dict(cls, obj):
        if not isinstance(obj, dict):
            raise ValueError("manifest line is not a JSON object")
        missing = [k for k in ("audio_filepath", "duration", "text") if k not in obj]
        if missing:
            raise ValueError(f"missing field(s): {', '.join(missing)}")
        return cls(
            audio_filepath=obj["audio_filepath"],
            duration=obj["duration"],
            text=obj["text"],
            source=obj.get("source"),
            dialect=obj.get("dialect"),
        )

    def to_json_line(self) -> str:
        parts = [
            f'"audio_filepath": {json.dumps(self.audio_filepath, ensure_ascii=False)}',
            f'"duration": {format(self.duration, "f")}',
            f'"text": {json.dumps(self.text, ensure_ascii=False)}',
        ]
        for key in ("source", "dialect"):
            value = getattr(self, key)
            if value is not None:
                parts.append(f'"{key}": {json.dumps(value, ensure_ascii=False)}')
        return "{" + ", ".join(parts) + "}"


@dataclass
class ManifestReadResult:
    entries: list[ManifestEntry]
    errors: list[ManifestParseError] = field(default_factory=list)


def read_manifest(path, fail_fast=True) -> ManifestReadResult:
    """Read a manifest; bad lines either raise or are collected with numbers."""
    entries = []
    errors = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line, parse_float=Decimal)
                entries.append(ManifestEntry.from_dict(obj))
            except (ValueError, TypeError) as exc:
                err = ManifestParseError(line_no, str(exc))
                if fail_fast:
                    raise err from None
                errors.append(err)
    return ManifestReadResult(entries, errors)


def write_manifest(entries, path):
    with open(path, "w", encoding="utf-8") as fh:
        for entry in entries:
            fh.write(entry.to_json_line())
            fh.write("\n")


@dataclass
class MixtureGroup:
    key: str
    hours: Decimal
    utterances: int


@dataclass
class MixtureReport:
    groups: list[MixtureGroup]
    total_hours: Decimal
    total_utterances: int

    def format_table(self) -> str:
        rows = [(g.key, display_hours(g.hours), str(g.utterances)) for g in self.groups]
        rows.append(("TOTAL", display_hours(self.total_hours), str(self.total_utterances)))
        key_w = max(len("group"), max((len(r[0]) for r in rows), default=0))
        hr_w = max(len("hours"), max((len(r[1]) for r in rows), default=0))
        ut_w = max(len("utterances"), max((len(r[2]) for r in rows), default=0))
        lines = [f"{'group':<{key_w}}  {'hours':>{hr_w}}  {'utterances':>{ut_w}}"]
        for key, hrs, utts in rows:
            lines.append(f"{key:<{key_w}}  {hrs:>{hr_w}}  {utts:>{ut_w}}")
        return "\n".join(lines)


def display_hours(hours: Decimal, places=2) -> str:
    """Round half-up for display; internal values stay exact."""
    q = Decimal(1).scaleb(-places)
    return str(hours.quantize(q, rounding=ROUND_HALF_UP))


def stats(entries, group_key=None) -> MixtureReport:
    """Per-group and total hours/utterance counts over an entry iterable."""
    if group_key not in (None, "none", *GROUP_KEYS):
        raise ValueError(f"bad group key: {group_key!r}")
    if group_key == "none":
        group_key = None

    order = []
    seconds = {}
    counts = {}
    for entry in entries:
        key = "all" if group_key is None else (getattr(entry, group_key) or "(none)")
        if key not in seconds:
            order.append(key)
            seconds[key] = Decimal(0)
            counts[key] = 0
        seconds[key] += entry.duration
        counts[key] += 1

    with localcontext() as ctx:
        ctx.prec = 50
        groups = [
            MixtureGroup(key, seconds[key] / 3600, counts[key]) for key in order
        ]
        total_hours = sum((g.hours for g in groups), Decimal(0))
    return MixtureReport(groups, total_hours, sum(counts.values()))
