"""Thai spoken-form readings of numbers.

Two readings exist for a digit string: as a quantity (cardinal) or
digit-by-digit (postal codes, phone numbers, id numbers). The cardinal grammar
follows standard Thai: place words สิบ ร้อย พัน หมื่น แสน, recursive ล้าน per
10^6 group, เอ็ด for a trailing 1 in a multi-digit number, ยี่ for 2 in the
tens place, and bare สิบ for 1 in the tens place. Outputs never contain digit
characters and are concatenated without spaces.
"""

from .chars import digit_value, is_digit_char

DIGIT_WORDS = ("ศูนย์", "หนึ่ง", "สอง", "สาม", "สี่", "ห้า", "หก", "เจ็ด", "แปด", "เก้า")

TEN = "สิบ"
HUNDRED = "ร้อย"
THOUSAND = "พัน"
TEN_THOUSAND = "หมื่น"
HUNDRED_THOUSAND = "แสน"
MILLION = "ล้าน"
ET = "เอ็ด"  # trailing-one in a multi-digit number
YI = "ยี่"  # two in the tens place
POINT = "จุด"  # decimal point

_SUB_MILLION_PLACES = (
    (100_000, HUNDRED_THOUSAND),
    (10_000, TEN_THOUSAND),
    (1_000, THOUSAND),
    (100, HUNDRED),
)

FORCE_DIGITS = "force_digits"
FORCE_QUANTITY = "force_quantity"
AMBIGUOUS = "ambiguous"

_CODE_CHARS = "-/:"


class NonDigitInputError(ValueError):
    """Input for a digit reading contained a non-digit character."""


class UnparseableWordsError(ValueError):
    """Word sequence is not produced by the quantity grammar."""


def read_quantity(n: int) -> str:
    """Thai cardinal reading of a non-negative integer."""
    if n < 0:
        raise ValueError("quantity must be non-negative")
    if n == 0:
        return DIGIT_WORDS[0]
    return _read_positive(n, part_of_larger=False)


def _read_positive(n: int, part_of_larger: bool) -> str:
    if n >= 1_000_000:
        head = _read_positive(n // 1_000_000, part_of_larger=False)
        rest = n % 1_000_000
        if rest == 0:
            return head + MILLION
        return head + MILLION + _read_positive(rest, part_of_larger=True)

    parts = []
    for place, word in _SUB_MILLION_PLACES:
        digit = n // place % 10
        if digit:
            parts.append(DIGIT_WORDS[digit] + word)
    tens = n // 10 % 10
    if tens == 1:
        parts.append(TEN)
    elif tens == 2:
        parts.append(YI + TEN)
    elif tens:
        parts.append(DIGIT_WORDS[tens] + TEN)
    unit = n % 10
    if unit == 1 and (n > 9 or part_of_larger):
        parts.append(ET)
    elif unit:
        parts.append(DIGIT_WORDS[unit])
    return "".join(parts)


def read_digits(s: str) -> str:
    """Digit-by-digit reading; accepts Arabic and Thai digit characters."""
    if not s:
        raise NonDigitInputError("empty digit string")
    words = []
    for ch in s:
        if not is_digit_char(ch):
            raise NonDigitInputError(f"non-digit character {ch!r} in {s!r}")
        words.append(DIGIT_WORDS[digit_value(ch)])
    return "".join(words)


# Tokens of the quantity grammar, longest first so greedy scanning is exact.
# The token set is prefix-free, so greedy tokenization is unambiguous.
_PLACE_VALUES = {TEN: 10, HUNDRED: 100, THOUSAND: 1_000, TEN_THOUSAND: 10_000,
                 HUNDRED_THOUSAND: 100_000}
_TOKENS = sorted(
    set(DIGIT_WORDS) | set(_PLACE_VALUES) | {MILLION, ET, YI},
    key=len,
    reverse=True,
)


def _tokenize(words: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(words):
        for tok in _TOKENS:
            if words.startswith(tok, i):
                tokens.append(tok)
                i += len(tok)
                break
        else:
            raise UnparseableWordsError(f"unrecognized word at index {i} in {words!r}")
    return tokens


def parse_quantity(words: str) -> int:
    """Inverse of read_quantity; rejects anything outside the grammar's image."""
    if not words:
        raise UnparseableWordsError("empty input")
    tokens = _tokenize(words)

    total = 0
    group = 0
    pending = None
    for tok in tokens:
        if tok == ET:
            pending = 1
        elif tok == YI:
            pending = 2
        elif tok == MILLION:
            total = (total + group + (pending or 0)) * 1_000_000
            group = 0
            pending = None
        elif tok == TEN:
            group += (pending if pending is not None else 1) * 10
            pending = None
        elif tok in _PLACE_VALUES:
            group += (pending or 0) * _PLACE_VALUES[tok]
            pending = None
        else:
            pending = DIGIT_WORDS.index(tok)
    value = total + group + (pending or 0)

    # The accumulator is permissive; re-reading catches every malformed input
    # (e.g. หนึ่งสิบ, สิบหนึ่ง, ศูนย์ห้า) since readings are unique.
    if read_quantity(value) != words:
        raise UnparseableWordsError(f"not a quantity reading: {words!r}")
    return value


def classify_numeric_span(span: str, before: str = "", after: str = "") -> str:
    """Decide the reading for a digit span given its immediate context.

    Leading zeros, length >= 7, or adjacency to code-like punctuation force the
    digit-by-digit reading; short plain spans read as quantities; the rest is
    ambiguous and should be surfaced for review.
    """
    if not span:
        raise NonDigitInputError("empty span")
    for ch in span:
        if not is_digit_char(ch):
            raise NonDigitInputError(f"non-digit character {ch!r} in span")
    code_adjacent = (bool(before) and before[-1] in _CODE_CHARS) or (
        bool(after) and after[0] in _CODE_CHARS
    )
    leading_zero = len(span) >= 2 and digit_value(span[0]) == 0
    if leading_zero or len(span) >= 7 or code_adjacent:
        return FORCE_DIGITS
    if len(span) <= 2:
        return FORCE_QUANTITY
    return AMBIGUOUS


def span_to_int(span: str) -> int:
    """Integer value of a digit span in either script."""
    return int("".join(str(digit_value(ch)) for ch in span))
