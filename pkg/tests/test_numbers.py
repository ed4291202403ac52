import random

import pytest

from thaicurate.chars import CharClass, classify_char
from thaicurate.numbers import (
    AMBIGUOUS,
    FORCE_DIGITS,
    FORCE_QUANTITY,
    DIGIT_WORDS,
    NonDigitInputError,
    UnparseableWordsError,
    classify_numeric_span,
    parse_quantity,
    read_digits,
    read_quantity,
    span_to_int,
)

# Standard Thai cardinals, checked against common reference readings before
# the converter was written.
KNOWN_READINGS = {
    0: "ศูนย์",
    1: "หนึ่ง",
    2: "สอง",
    5: "ห้า",
    10: "สิบ",
    11: "สิบเอ็ด",
    12: "สิบสอง",
    20: "ยี่สิบ",
    21: "ยี่สิบเอ็ด",
    25: "ยี่สิบห้า",
    31: "สามสิบเอ็ด",
    100: "หนึ่งร้อย",
    101: "หนึ่งร้อยเอ็ด",
    110: "หนึ่งร้อยสิบ",
    111: "หนึ่งร้อยสิบเอ็ด",
    221: "สองร้อยยี่สิบเอ็ด",
    1000: "หนึ่งพัน",
    2501: "สองพันห้าร้อยเอ็ด",
    10000: "หนึ่งหมื่น",
    10150: "หนึ่งหมื่นหนึ่งร้อยห้าสิบ",
    100000: "หนึ่งแสน",
    1000000: "หนึ่งล้าน",
    1000001: "หนึ่งล้านเอ็ด",
    1000021: "หนึ่งล้านยี่สิบเอ็ด",
    2500000: "สองล้านห้าแสน",
    11000000: "สิบเอ็ดล้าน",
    21000000: "ยี่สิบเอ็ดล้าน",
    100000000: "หนึ่งร้อยล้าน",
    1000000000000: "หนึ่งล้านล้าน",
    1000000000005: "หนึ่งล้านล้านห้า",
}


def test_known_quantity_readings():
    for n, words in KNOWN_READINGS.items():
        assert read_quantity(n) == words, n


def test_quantity_rejects_negative():
    with pytest.raises(ValueError):
        read_quantity(-1)


def test_read_digits():
    assert read_digits("10150") == "หนึ่งศูนย์หนึ่งห้าศูนย์"
    assert read_digits("0") == "ศูนย์"
    assert read_digits("๐๔") == "ศูนย์สี่"
    assert read_digits("๙9") == "เก้าเก้า"


def test_read_digits_errors():
    with pytest.raises(NonDigitInputError):
        read_digits("")
    with pytest.raises(NonDigitInputError):
        read_digits("1a")


def test_parse_quantity_examples():
    assert parse_quantity("ศูนย์") == 0
    assert parse_quantity("ยี่สิบเอ็ด") == 21
    assert parse_quantity("หนึ่งหมื่นหนึ่งร้อยห้าสิบ") == 10150


@pytest.mark.parametrize(
    "bad",
    [
        "",
        "หนึ่งสิบ",        # tens coefficient 1 must be bare สิบ
        "สิบหนึ่ง",        # trailing one must be เอ็ด
        "สองสิบ",          # tens coefficient 2 must be ยี่
        "ศูนย์ห้า",        # zero only stands alone
        "เอ็ด",            # เอ็ด needs a higher part
        "ยี่",             # ยี่ only before สิบ
        "ร้อย",            # place word without coefficient
        "ห้าหก",           # two digit words in a row
        "สวัสดี",          # not number words at all
        "หนึ่งร้อยหนึ่ง",   # trailing one must be เอ็ด
    ],
)
def test_parse_quantity_rejects(bad):
    with pytest.raises(UnparseableWordsError):
        parse_quantity(bad)


def test_roundtrip_exhaustive_small():
    for n in range(0, 10000):
        assert parse_quantity(read_quantity(n)) == n


def test_roundtrip_random_large():
    rng = random.Random(99)
    for _ in range(2000):
        n = rng.randrange(0, 10**12)
        assert parse_quantity(read_quantity(n)) == n


def test_outputs_contain_no_digit_codepoints():
    rng = random.Random(3)
    for _ in range(500):
        n = rng.randrange(0, 10**9)
        for ch in read_quantity(n):
            assert classify_char(ch) not in (
                CharClass.ARABIC_DIGIT,
                CharClass.THAI_DIGIT,
            )
        for ch in read_digits(str(n)):
            assert classify_char(ch) not in (
                CharClass.ARABIC_DIGIT,
                CharClass.THAI_DIGIT,
            )


def test_digit_count_preserved():
    rng = random.Random(4)
    for _ in range(300):
        s = "".join(rng.choice("0123456789") for _ in range(rng.randint(1, 12)))
        words = read_digits(s)
        count = 0
        i = 0
        while i < len(words):
            for w in sorted(DIGIT_WORDS, key=len, reverse=True):
                if words.startswith(w, i):
                    count += 1
                    i += len(w)
                    break
            else:
                raise AssertionError(f"unexpected content in {words!r}")
        assert count == len(s)


def test_classify_numeric_span():
    assert classify_numeric_span("04") == FORCE_DIGITS
    assert classify_numeric_span("๐๔") == FORCE_DIGITS
    assert classify_numeric_span("21") == FORCE_QUANTITY
    assert classify_numeric_span("10150") == AMBIGUOUS
    assert classify_numeric_span("1234567") == FORCE_DIGITS
    assert classify_numeric_span("30", before="10:") == FORCE_DIGITS
    assert classify_numeric_span("10", after="-20") == FORCE_DIGITS
    assert classify_numeric_span("10", before="ก", after=" ข") == FORCE_QUANTITY
    assert classify_numeric_span("345") == AMBIGUOUS
    with pytest.raises(NonDigitInputError):
        classify_numeric_span("1a2")


def test_span_to_int():
    assert span_to_int("007") == 7
    assert span_to_int("๑๒๓") == 123
