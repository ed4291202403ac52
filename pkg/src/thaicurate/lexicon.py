"""Thai lexicon trie and greedy longest-match (maximal matching) segmentation.

Thai has no inter-word spaces, so locating word boundaries requires a
dictionary. The segmentation here is deterministic greedy longest-match from
the left; a match never ends in front of a combining mark, and positions where
no dictionary word starts are collected into maximal Unknown runs.
"""

import os
from dataclasses import dataclass
from importlib import resources

from .chars import is_thai_letter, never_starts_word

KNOWN = "known"
UNKNOWN = "unknown"

LEXICON_ENV_VAR = "CURATE_LEXICON"

_END = object()  # trie terminal marker


@dataclass(frozen=True)
class Segment:
    text: str
    start: int
    end: int
    kind: str

    def __post_init__(self):
        if self.kind not in (KNOWN, UNKNOWN):
            raise ValueError(f"bad segment kind: {self.kind!r}")


class Lexicon:
    """Immutable word list with longest-prefix lookup."""

    def __init__(self, words, name="custom", version="0"):
        self.name = name
        self.version = version
        self._words = set()
        self._trie = {}
        self.max_word_len = 0
        for word in words:
            self._add(word)

    def _add(self, word: str):
        if not word:
            raise ValueError("empty lexicon entry")
        if never_starts_word(word[0]):
            raise ValueError(f"entry starts with a combining mark: {word!r}")
        for ch in word:
            if not is_thai_letter(ch):
                raise ValueError(f"non-Thai character {ch!r} in entry {word!r}")
        self._words.add(word)
        self.max_word_len = max(self.max_word_len, len(word))
        node = self._trie
        for ch in word:
            node = node.setdefault(ch, {})
        node[_END] = True

    @classmethod
    def from_file(cls, path, name=None, version="0"):
        """Load a UTF-8 word-per-line file; '#' lines and blanks are ignored."""
        words = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                word = line.strip()
                if not word or word.startswith("#"):
                    continue
                words.append(word)
        if name is None:
            name = os.path.basename(str(path))
        return cls(words, name=name, version=version)

    def __contains__(self, word):
        return word in self._words

    def __len__(self):
        return len(self._words)

    def longest_match(self, text: str, start: int) -> int:
        """Length of the longest entry starting at `start`, 0 when none.

        A match whose end would split a grapheme (next char is a combining
        mark) is not a valid match.
        """
        node = self._trie
        best = 0
        i = start
        n = len(text)
        while i < n:
            node = node.get(text[i])
            if node is None:
                break
            i += 1
            if _END in node and (i == n or not never_starts_word(text[i])):
                best = i - start
        return best

    def longest_suffix_word(self, text: str, end: int) -> str:
        """Longest entry ending exactly at index `end`; '' when none."""
        lo = max(0, end - self.max_word_len)
        for start in range(lo, end):
            candidate = text[start:end]
            if candidate in self._words:
                return candidate
        return ""


def segment(text: str, lexicon: Lexicon) -> list[Segment]:
    """Greedy longest-match segmentation; concatenation reproduces the input."""
    segments = []
    i = 0
    n = len(text)
    while i < n:
        length = lexicon.longest_match(text, i)
        if length:
            segments.append(Segment(text[i : i + length], i, i + length, KNOWN))
            i += length
        else:
            j = i + 1
            while j < n and lexicon.longest_match(text, j) == 0:
                j += 1
            segments.append(Segment(text[i:j], i, j, UNKNOWN))
            i = j
    return segments


def bundled_lexicon_path() -> str:
    """Path of the shipped lexicon, unless CURATE_LEXICON overrides it."""
    override = os.environ.get(LEXICON_ENV_VAR)
    if override:
        return override
    return str(resources.files("thaicurate.data").joinpath("lexicon.txt"))


def load_default_lexicon() -> Lexicon:
    return Lexicon.from_file(bundled_lexicon_path(), name="bundled", version="1")
