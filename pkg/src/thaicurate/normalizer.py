"""Canonical spoken-form normalization of Thai transcripts.

The pipeline applies, in order:

  1. whitespace/punctuation canonicalization (format chars stripped, stray
     punctuation dropped, runs of whitespace collapsed, space before ๆ removed)
  2. symbol resolution for digit-symbol-digit patterns ('-' carries a
     configurable sense: range ถึง, minus ลบ, separator ขีด)
  3. numeric span conversion per the configured policy
  4. mai yamok (ๆ) expansion by repeating the preceding word
  5. foreign-word transliteration from a lookup table

Every rewrite is recorded in an ordered trace that replays exactly, and
unresolvable ambiguities become flags instead of failures. A flag-free output
contains no digits, no repetition marks and no punctuation outside the
configured whitelist, and is a fixed point of the pipeline.
"""

import os
import re
import unicodedata
from dataclasses import dataclass, field, replace
from importlib import resources

from .chars import (
    MAI_YAMOK,
    CharClass,
    classify_char,
    digit_value,
    is_digit_char,
    is_thai_letter,
)
from .lexicon import Lexicon, load_default_lexicon
from . import numbers

# Numeric policies
POLICY_QUANTITY = "quantity"
POLICY_DIGITS = "digits"
POLICY_AUTO = "auto"
POLICIES = (POLICY_QUANTITY, POLICY_DIGITS, POLICY_AUTO)

# Symbol senses for digit-digit '-'
SENSE_RANGE = "range"
SENSE_MINUS = "minus"
SENSE_SEPARATOR = "separator"
SENSE_WORDS = {SENSE_RANGE: "ถึง", SENSE_MINUS: "ลบ", SENSE_SEPARATOR: "ขีด"}

# Flag kinds
FLAG_NUMERIC_READING = "numeric_reading"
FLAG_SYMBOL_SENSE = "symbol_sense"
FLAG_UNKNOWN_FOREIGN_WORD = "unknown_foreign_word"
FLAG_ORPHAN_REPETITION_MARK = "orphan_repetition_mark"

_DIGITS = "0-9๐-๙"
_NUM_RE = re.compile(f"[{_DIGITS}]+")
_DECIMAL_RE = re.compile(f"[{_DIGITS}]+\\.[{_DIGITS}]+")
_CHAIN_RE = re.compile(f"[{_DIGITS}]+(?:[-/:][{_DIGITS}]+)+")
_THOUSANDS_RE = re.compile(f"(?<=[{_DIGITS}]),(?=[{_DIGITS}]{{3}}(?![{_DIGITS}]))")
_LATIN_RE = re.compile("[A-Za-z]+")
_SPACE_RUN_RE = re.compile(r"\s{2,}")
_SPACE_BEFORE_YAMOK_RE = re.compile(rf"\s+(?={MAI_YAMOK})")


class UnsupportedSymbolError(ValueError):
    """Symbol span does not match the implemented digit-symbol-digit set."""


@dataclass(frozen=True)
class AmbiguityFlag:
    kind: str
    start: int
    end: int

    def to_dict(self):
        return {"kind": self.kind, "start": self.start, "end": self.end}


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    start: int
    end: int
    before: str
    after: str

    def to_dict(self):
        return {
            "rule": self.rule,
            "start": self.start,
            "end": self.end,
            "before": self.before,
            "after": self.after,
        }


@dataclass
class NormalizedText:
    text: str
    trace: list[TraceEntry] = field(default_factory=list)
    flags: list[AmbiguityFlag] = field(default_factory=list)

    def to_dict(self):
        return {
            "text": self.text,
            "trace": [t.to_dict() for t in self.trace],
            "flags": [f.to_dict() for f in self.flags],
        }


def replay_trace(raw: str, trace) -> str:
    """Re-apply a trace to the raw input; each span indexes the evolving text."""
    text = raw
    for entry in trace:
        if text[entry.start : entry.end] != entry.before:
            raise ValueError(f"trace mismatch at {entry.start}..{entry.end}")
        text = text[: entry.start] + entry.after + text[entry.end :]
    return text


@dataclass(frozen=True)
class NormConfig:
    lexicon: Lexicon
    translit: dict
    numeric_policy: str = POLICY_AUTO
    symbol_default: str = SENSE_RANGE
    whitelist: frozenset = frozenset(" ")

    def __post_init__(self):
        if self.numeric_policy not in POLICIES:
            raise ValueError(f"bad numeric policy: {self.numeric_policy!r}")
        if self.symbol_default not in SENSE_WORDS:
            raise ValueError(f"bad symbol sense: {self.symbol_default!r}")
        for token, word in self.translit.items():
            if not word or not all(is_thai_letter(ch) for ch in word):
                raise ValueError(
                    f"transliteration for {token!r} is not Thai letters: {word!r}"
                )


def load_translit(path) -> dict:
    """Read a tab-separated latin_token<TAB>thai_word mapping."""
    mapping = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            try:
                token, word = line.split("\t")
            except ValueError:
                raise ValueError(f"{path}:{line_no}: expected two tab-separated fields")
            mapping[token.strip().lower()] = word.strip()
    return mapping


TRANSLIT_ENV_VAR = "CURATE_TRANSLIT"

_config_cache: dict = {}


def bundled_translit_path() -> str:
    override = os.environ.get(TRANSLIT_ENV_VAR)
    if override:
        return override
    return str(resources.files("thaicurate.data").joinpath("translit.tsv"))


def default_config(**overrides) -> NormConfig:
    """Config backed by the bundled lexicon and transliteration table.

    Cached per resolved file paths, so environment overrides take effect
    even after a config was already built.
    """
    from .lexicon import bundled_lexicon_path

    key = (bundled_lexicon_path(), bundled_translit_path())
    config = _config_cache.get(key)
    if config is None:
        config = NormConfig(
            lexicon=load_default_lexicon(),
            translit=load_translit(key[1]),
        )
        _config_cache[key] = config
    if overrides:
        return replace(config, **overrides)
    return config


class _EditSession:
    """Tracks a text buffer plus the trace and flags as rewrites apply."""

    def __init__(self, text: str):
        self.text = text
        self.trace: list[TraceEntry] = []
        self.flags: list[AmbiguityFlag] = []

    def replace(self, start: int, end: int, after: str, rule: str):
        before = self.text[start:end]
        if before == after:
            return
        self.text = self.text[:start] + after + self.text[end:]
        self.trace.append(TraceEntry(rule, start, end, before, after))
        delta = len(after) - (end - start)
        if delta:
            moved = []
            for flag in self.flags:
                if flag.start >= end:
                    moved.append(replace(flag, start=flag.start + delta,
                                         end=flag.end + delta))
                elif flag.end > start:
                    moved.append(replace(flag, end=flag.end + delta))
                else:
                    moved.append(flag)
            self.flags = moved

    def apply(self, edits, rule: str):
        """Apply (start, end, after) edits computed on the current text.

        Edits must be non-overlapping and ascending.
        """
        offset = 0
        for start, end, after in edits:
            self.replace(start + offset, end + offset, after, rule)
            offset += len(after) - (end - start)

    def flag(self, kind: str, start: int, end: int):
        self.flags.append(AmbiguityFlag(kind, start, end))

    def result(self) -> NormalizedText:
        return NormalizedText(self.text, self.trace, self.flags)


def _absorb_spaces(text: str, start: int, end: int):
    """Widen a span to swallow one adjacent space on each side."""
    if start > 0 and text[start - 1] == " ":
        start -= 1
    if end < len(text) and text[end] == " ":
        end += 1
    return start, end


def _canonicalize_layout(session: _EditSession, whitelist):
    # Invisible format characters (ZWSP and friends) are common in Thai text.
    edits = [
        (i, i + 1, "")
        for i, ch in enumerate(session.text)
        if unicodedata.category(ch) == "Cf"
    ]
    session.apply(edits, "strip_format")

    text = session.text
    session.apply(
        [(m.start(), m.end(), "") for m in _THOUSANDS_RE.finditer(text)],
        "thousands_sep",
    )

    # Drop punctuation, keeping structural chars that sit between two digits
    # (consumed later by symbol/decimal handling) and whitelisted characters.
    text = session.text
    edits = []
    for i, ch in enumerate(text):
        if ch in whitelist:
            continue
        cls = classify_char(ch)
        if cls not in (CharClass.PUNCTUATION, CharClass.THAI_OTHER_SIGN):
            continue
        if ch in "-/:." and 0 < i < len(text) - 1:
            if is_digit_char(text[i - 1]) and is_digit_char(text[i + 1]):
                continue
        edits.append((i, i + 1, " "))
    session.apply(edits, "drop_punct")

    text = session.text
    session.apply(
        [(m.start(), m.end(), " ") for m in _SPACE_RUN_RE.finditer(text)],
        "collapse_space",
    )
    text = session.text
    stripped = text.strip()
    if stripped != text:
        lead = len(text) - len(text.lstrip())
        if lead:
            session.replace(0, lead, "", "collapse_space")
        text = session.text
        tail = len(text) - len(text.rstrip())
        if tail:
            session.replace(len(text) - tail, len(text), "", "collapse_space")

    text = session.text
    session.apply(
        [(m.start(), m.end(), "") for m in _SPACE_BEFORE_YAMOK_RE.finditer(text)],
        "collapse_space",
    )


def _read_operand(span: str) -> str:
    """Operand of a symbol pattern: digit reading for code-like spans."""
    if (len(span) >= 2 and digit_value(span[0]) == 0) or len(span) >= 7:
        return numbers.read_digits(span)
    return numbers.read_quantity(numbers.span_to_int(span))


def resolve_symbol(span: str, sense: str) -> str:
    """Spoken form of a digit-symbol-digit span under an explicit sense."""
    if sense not in SENSE_WORDS:
        raise ValueError(f"bad symbol sense: {sense!r}")
    m = re.fullmatch(f"([{_DIGITS}]+)(.)([{_DIGITS}]+)", span)
    if not m:
        raise UnsupportedSymbolError(f"not a digit-symbol-digit span: {span!r}")
    left, symbol, right = m.groups()
    if symbol != "-":
        raise UnsupportedSymbolError(f"unsupported symbol {symbol!r} in {span!r}")
    return _read_operand(left) + SENSE_WORDS[sense] + _read_operand(right)


def _resolve_symbols(session: _EditSession, config: NormConfig):
    while True:
        m = _CHAIN_RE.search(session.text)
        if m is None:
            return
        parts = re.split("[-/:]", m.group())
        separators = re.findall("[-/:]", m.group())
        if len(parts) == 2 and separators == ["-"]:
            spoken = (
                _read_operand(parts[0])
                + SENSE_WORDS[config.symbol_default]
                + _read_operand(parts[1])
            )
        else:
            # Multi-part or ':'/'/' chains are code-like: per-part digit
            # reading, parts separated by a spoken pause (space).
            spoken = " ".join(numbers.read_digits(p) for p in parts)
        start, end = _absorb_spaces(session.text, m.start(), m.end())
        session.replace(start, end, spoken, "symbol")
        session.flag(FLAG_SYMBOL_SENSE, start, start + len(spoken))


def _convert_decimals(session: _EditSession, config: NormConfig):
    while True:
        m = _DECIMAL_RE.search(session.text)
        if m is None:
            return
        int_part, frac_part = m.group().split(".")
        if config.numeric_policy == POLICY_DIGITS:
            head = numbers.read_digits(int_part)
        else:
            head = numbers.read_quantity(numbers.span_to_int(int_part))
        spoken = head + numbers.POINT + numbers.read_digits(frac_part)
        start, end = _absorb_spaces(session.text, m.start(), m.end())
        session.replace(start, end, spoken, "decimal")


def _convert_numbers(session: _EditSession, config: NormConfig):
    while True:
        m = _NUM_RE.search(session.text)
        if m is None:
            return
        span = m.group()
        text = session.text
        ambiguous = False
        if config.numeric_policy == POLICY_DIGITS:
            spoken = numbers.read_digits(span)
        elif config.numeric_policy == POLICY_QUANTITY:
            spoken = numbers.read_quantity(numbers.span_to_int(span))
        else:
            decision = numbers.classify_numeric_span(
                span, before=text[: m.start()], after=text[m.end() :]
            )
            if decision == numbers.FORCE_QUANTITY:
                spoken = numbers.read_quantity(numbers.span_to_int(span))
            else:
                spoken = numbers.read_digits(span)
                ambiguous = decision == numbers.AMBIGUOUS
        start, end = _absorb_spaces(text, m.start(), m.end())
        session.replace(start, end, spoken, "number")
        if ambiguous:
            session.flag(FLAG_NUMERIC_READING, start, start + len(spoken))


def _drop_stranded_structurals(session: _EditSession, whitelist):
    """Remove '-'/'/'/':'/'.' left behind by partial chains like "3.14.4"."""
    edits = [
        (i, i + 1, " ")
        for i, ch in enumerate(session.text)
        if ch in "-/:." and ch not in whitelist
    ]
    if not edits:
        return
    session.apply(edits, "drop_punct")
    text = session.text
    session.apply(
        [(m.start(), m.end(), " ") for m in _SPACE_RUN_RE.finditer(text)],
        "collapse_space",
    )
    text = session.text
    if text.startswith(" "):
        session.replace(0, 1, "", "collapse_space")
    text = session.text
    if text.endswith(" "):
        session.replace(len(text) - 1, len(text), "", "collapse_space")
    text = session.text
    session.apply(
        [(m.start(), m.end(), "") for m in _SPACE_BEFORE_YAMOK_RE.finditer(text)],
        "collapse_space",
    )


def _expand_repetitions(session: _EditSession, lexicon: Lexicon):
    while True:
        idx = session.text.find(MAI_YAMOK)
        if idx < 0:
            return
        prefix = session.text[:idx]
        unit = lexicon.longest_suffix_word(prefix, idx)
        orphan = False
        if not unit:
            run_start = idx
            while run_start > 0 and is_thai_letter(prefix[run_start - 1]):
                run_start -= 1
            unit = prefix[run_start:idx]
            orphan = True
        if not unit:
            session.replace(idx, idx + 1, "", "mai_yamok")
            session.flag(FLAG_ORPHAN_REPETITION_MARK, idx, idx)
            continue
        unit_start = idx - len(unit)
        if unit_start > 0 and session.text[unit_start - 1] != " ":
            session.replace(unit_start, unit_start, " ", "mai_yamok")
            idx += 1
            unit_start += 1
        session.replace(idx, idx + 1, " " + unit, "mai_yamok")
        if orphan:
            session.flag(FLAG_ORPHAN_REPETITION_MARK, unit_start, idx + 1 + len(unit))


def transliterate(token: str, translit: dict):
    """Thai spelling for a Latin token, or None when the table has no entry."""
    if not token or not _LATIN_RE.fullmatch(token):
        raise ValueError(f"not a Latin-letter token: {token!r}")
    return translit.get(token.lower())


def _transliterate_tokens(session: _EditSession, translit: dict):
    pos = 0
    while True:
        m = _LATIN_RE.search(session.text, pos)
        if m is None:
            return
        word = translit.get(m.group().lower())
        if word is None:
            session.flag(FLAG_UNKNOWN_FOREIGN_WORD, m.start(), m.end())
            pos = m.end()
        else:
            session.replace(m.start(), m.end(), word, "transliterate")
            pos = m.start() + len(word)


def expand_mai_yamok(text: str, lexicon: Lexicon):
    """Standalone ๆ expansion; returns (text, flags)."""
    session = _EditSession(text)
    _expand_repetitions(session, lexicon)
    return session.text, session.flags


def normalize(raw: str, config: NormConfig | None = None) -> NormalizedText:
    """Normalize a raw transcript into its canonical spoken form."""
    if config is None:
        config = default_config()
    session = _EditSession(raw)
    _canonicalize_layout(session, config.whitelist)
    _resolve_symbols(session, config)
    _convert_decimals(session, config)
    _convert_numbers(session, config)
    _drop_stranded_structurals(session, config.whitelist)
    _expand_repetitions(session, config.lexicon)
    _transliterate_tokens(session, config.translit)
    return session.result()


@dataclass(frozen=True)
class ComplexityReason:
    kind: str
    start: int
    end: int
    excerpt: str

    def to_dict(self):
        return {
            "kind": self.kind,
            "start": self.start,
            "end": self.end,
            "excerpt": self.excerpt,
        }

    def __str__(self):
        return f"{self.kind} {self.excerpt!r} at {self.start}..{self.end}"


@dataclass
class ComplexityReport:
    complex: bool
    reasons: list[ComplexityReason] = field(default_factory=list)


_OFFENDING = {
    CharClass.ARABIC_DIGIT: "arabic_digit",
    CharClass.THAI_DIGIT: "thai_digit",
    CharClass.REPETITION_MARK: "repetition_mark",
    CharClass.PUNCTUATION: "punctuation",
    CharClass.THAI_OTHER_SIGN: "punctuation",
}


def is_complex(text: str, whitelist=frozenset(" ")) -> ComplexityReport:
    """Flag text containing digits, ๆ, or punctuation outside the whitelist."""
    reasons = []
    current = None  # (kind, start)
    for i, ch in enumerate(text):
        kind = None if ch in whitelist else _OFFENDING.get(classify_char(ch))
        if kind is None:
            if current:
                reasons.append(
                    ComplexityReason(current[0], current[1], i, text[current[1] : i])
                )
                current = None
        elif current is None:
            current = (kind, i)
        elif current[0] != kind:
            reasons.append(
                ComplexityReason(current[0], current[1], i, text[current[1] : i])
            )
            current = (kind, i)
    if current:
        reasons.append(
            ComplexityReason(current[0], current[1], len(text), text[current[1] :])
        )
    return ComplexityReport(complex=bool(reasons), reasons=reasons)
