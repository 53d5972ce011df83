"""Exception types shared across the pipeline."""

from __future__ import annotations


class MailsiftError(Exception):
    """Base class for all mailsift errors."""


class DataError(MailsiftError):
    """Problems with input data (corpora, labels, shapes)."""


class MissingColumn(DataError):
    def __init__(self, name: str):
        super().__init__(f"required column {name!r} not found in header")
        self.name = name


class EmptyDataset(DataError):
    pass


class EmptyCorpus(DataError):
    pass


class NoTokensAboveMinCount(DataError):
    pass


class SingleClassData(DataError):
    pass


class DimensionMismatch(DataError):
    pass


class NegativeFeature(DataError):
    pass


class BadRatio(DataError):
    pass


class LengthMismatch(DataError):
    pass


class EmptyInput(DataError):
    pass


class EmptyDocument(DataError):
    pass


class ModelVectorizerMismatch(MailsiftError):
    pass


class ArtifactError(MailsiftError):
    """Problems loading or saving pipeline artifacts."""


class UnsupportedVersion(ArtifactError):
    pass


class CorruptArtifact(ArtifactError):
    pass
