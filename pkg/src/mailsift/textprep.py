"""Tokenization and stop-word filtering ahead of feature extraction.

Tokens are maximal runs of ASCII letters and digits; everything else
(punctuation, symbols, non-ASCII characters) acts as a separator. This
splits email addresses into their informative parts, e.g.
``shel.cooper@caltech.edu`` becomes ``shel cooper caltech edu``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

# A preprocessed document: ordered, whitespace-free tokens.
TokenSequence = list[str]

_TOKEN_LOWER = re.compile(r"[a-z0-9]+")
_TOKEN_CASED = re.compile(r"[A-Za-z0-9]+")


def load_stopwords() -> frozenset[str]:
    """Stop words shipped with the package (data/stopwords.txt, one per line)."""
    text = resources.files("mailsift").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(w for w in text.split() if w)


def read_stopword_file(path) -> frozenset[str]:
    """Read a user-supplied stop-word file, one word per line."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(w.strip() for w in fh if w.strip())


@dataclass(frozen=True)
class PrepConfig:
    """Preprocessing knobs.

    stopwords entries must be lowercase and punctuation-free so they can
    match tokenizer output.
    """

    stopwords: frozenset[str] = frozenset()
    lowercase: bool = True
    min_token_len: int = 1

    def __post_init__(self):
        object.__setattr__(self, "stopwords", frozenset(self.stopwords))
        if self.min_token_len < 1:
            raise ValueError("min_token_len must be >= 1")
        for word in self.stopwords:
            if not _TOKEN_LOWER.fullmatch(word):
                raise ValueError(f"stop word {word!r} is not lowercase/punctuation-free")

    @classmethod
    def default(cls) -> "PrepConfig":
        return cls(stopwords=load_stopwords())


def preprocess(raw: str, config: PrepConfig) -> TokenSequence:
    """Tokenize ``raw`` and drop stop words and too-short tokens.

    Empty input yields an empty sequence; order of surviving tokens is
    preserved.
    """
    if config.lowercase:
        text = raw.lower()
        pattern = _TOKEN_LOWER
    else:
        text = raw
        pattern = _TOKEN_CASED
    out: TokenSequence = []
    for tok in pattern.findall(text):
        if len(tok) < config.min_token_len:
            continue
        key = tok if config.lowercase else tok.lower()
        if key in config.stopwords:
            continue
        out.append(tok)
    return out
