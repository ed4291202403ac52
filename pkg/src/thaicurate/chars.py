"""Unicode character classification for Thai transcript processing."""

import unicodedata
from enum import Enum

MAI_YAMOK = "ๆ"  # Thai repetition mark

_THAI_CONSONANT_RANGE = (0x0E01, 0x0E2E)
_THAI_DIGIT_RANGE = (0x0E50, 0x0E59)
_ARABIC_DIGIT_RANGE = (0x0030, 0x0039)
_TONE_MARK_RANGE = (0x0E48, 0x0E4B)

# Dependent and leading vowels, plus the word-internal combining signs
# (maitaikhu, thanthakhat, nikhahit, yamakkan) that bind inside words.
_THAI_VOWEL_CPS = (
    set(range(0x0E30, 0x0E3B))
    | set(range(0x0E40, 0x0E46))
    | {0x0E47, 0x0E4C, 0x0E4D, 0x0E4E}
)

# Paiyannoi, baht sign, fongman, angkhankhu, khomut: sign/punctuation-like.
_THAI_SIGN_CPS = {0x0E2F, 0x0E3F, 0x0E4F, 0x0E5A, 0x0E5B}

# Characters that may never begin a word or segment: Thai combining marks
# plus sara am, which is spacing but always follows a consonant.
_NEVER_WORD_INITIAL = (
    {0x0E31, 0x0E33} | set(range(0x0E34, 0x0E3B)) | set(range(0x0E47, 0x0E4F))
)


class CharClass(Enum):
    THAI_CONSONANT = "thai_consonant"
    THAI_VOWEL = "thai_vowel"
    THAI_TONE_MARK = "thai_tone_mark"
    THAI_DIGIT = "thai_digit"
    ARABIC_DIGIT = "arabic_digit"
    REPETITION_MARK = "repetition_mark"
    THAI_OTHER_SIGN = "thai_other_sign"
    LATIN_LETTER = "latin_letter"
    WHITESPACE = "whitespace"
    PUNCTUATION = "punctuation"
    OTHER = "other"


def classify_char(ch: str) -> CharClass:
    """Classify a single character. Total over all Unicode scalars."""
    cp = ord(ch)
    if ch == MAI_YAMOK:
        return CharClass.REPETITION_MARK
    if _THAI_DIGIT_RANGE[0] <= cp <= _THAI_DIGIT_RANGE[1]:
        return CharClass.THAI_DIGIT
    if _ARABIC_DIGIT_RANGE[0] <= cp <= _ARABIC_DIGIT_RANGE[1]:
        return CharClass.ARABIC_DIGIT
    if _THAI_CONSONANT_RANGE[0] <= cp <= _THAI_CONSONANT_RANGE[1]:
        return CharClass.THAI_CONSONANT
    if _TONE_MARK_RANGE[0] <= cp <= _TONE_MARK_RANGE[1]:
        return CharClass.THAI_TONE_MARK
    if cp in _THAI_VOWEL_CPS:
        return CharClass.THAI_VOWEL
    if cp in _THAI_SIGN_CPS:
        return CharClass.THAI_OTHER_SIGN
    if ("a" <= ch <= "z") or ("A" <= ch <= "Z"):
        return CharClass.LATIN_LETTER
    if ch.isspace():
        return CharClass.WHITESPACE
    cat = unicodedata.category(ch)
    if cat.startswith("P") or cat.startswith("S"):
        return CharClass.PUNCTUATION
    return CharClass.OTHER


_LETTER_CLASSES = frozenset(
    {CharClass.THAI_CONSONANT, CharClass.THAI_VOWEL, CharClass.THAI_TONE_MARK}
)
_DIGIT_CLASSES = frozenset({CharClass.THAI_DIGIT, CharClass.ARABIC_DIGIT})


def is_thai_letter(ch: str) -> bool:
    """True for characters that form Thai words (consonants, vowels, marks)."""
    return classify_char(ch) in _LETTER_CLASSES


def is_digit_char(ch: str) -> bool:
    """True for Arabic (0-9) and Thai (๐-๙) digits."""
    return classify_char(ch) in _DIGIT_CLASSES


def digit_value(ch: str) -> int:
    """Numeric value of an Arabic or Thai digit character."""
    cp = ord(ch)
    if _ARABIC_DIGIT_RANGE[0] <= cp <= _ARABIC_DIGIT_RANGE[1]:
        return cp - _ARABIC_DIGIT_RANGE[0]
    if _THAI_DIGIT_RANGE[0] <= cp <= _THAI_DIGIT_RANGE[1]:
        return cp - _THAI_DIGIT_RANGE[0]
    raise ValueError(f"not a digit character: {ch!r}")


def never_starts_word(ch: str) -> bool:
    """True for combining marks and sara am, which bind to the previous base."""
    return ord(ch) in _NEVER_WORD_INITIAL
