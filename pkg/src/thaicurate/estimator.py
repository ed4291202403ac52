"""scikit-learn compatible wrapper around the normalizer.

Lets the canonicalization step sit inside an sklearn Pipeline ahead of
vectorizers or models: fit() loads the configured resources, transform() maps
a sequence of raw transcripts to canonical spoken-form strings.
"""

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .lexicon import Lexicon, load_default_lexicon
from .normalizer import (
    NormConfig,
    bundled_translit_path,
    load_translit,
    normalize,
)


def validate_text_sequence(X):
    """Require an iterable of strings; reject ndarray-of-object surprises."""
    if isinstance(X, str):
        raise ValueError("expected a sequence of strings, got a single string")
    items = list(X)
    for i, item in enumerate(items):
        if not isinstance(item, str):
            raise ValueError(
                f"element {i} is {type(item).__name__}, expected str"
            )
    return items


class SpokenFormNormalizer(BaseEstimator, TransformerMixin):
    """Transform raw Thai transcripts into canonical spoken form.

    Parameters mirror the normalizer configuration; paths default to the
    bundled lexicon and transliteration table.
    """

    def __init__(self, numeric_policy="auto", symbol_default="range",
                 lexicon_path=None, translit_path=None):
        self.numeric_policy = numeric_policy
        self.symbol_default = symbol_default
        self.lexicon_path = lexicon_path
        self.translit_path = translit_path

    def fit(self, X, y=None):
        validate_text_sequence(X)
        if self.lexicon_path is None:
            lexicon = load_default_lexicon()
        else:
            lexicon = Lexicon.from_file(self.lexicon_path)
        translit = load_translit(self.translit_path or bundled_translit_path())
        self.config_ = NormConfig(
            lexicon=lexicon,
            translit=translit,
            numeric_policy=self.numeric_policy,
            symbol_default=self.symbol_default,
        )
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        items = validate_text_sequence(X)
        return [normalize(text, self.config_).text for text in items]
