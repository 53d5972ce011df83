"""Versioned on-disk bundles of trained pipelines.

File layout (little-endian):

    magic   5 bytes  b"MSFT1"
    version u32
    length  u64      payload byte count
    digest  32 bytes sha256 of the payload
    payload          pickled TrainedPipeline

The version gate runs before the checksum so a future format is reported
as UnsupportedVersion rather than as corruption.
"""

from __future__ import annotations

import hashlib
import pickle
import struct
from dataclasses import dataclass
from pathlib import Path

from .errors import CorruptArtifact, UnsupportedVersion
from .pipeline import TrainedPipeline

MAGIC = b"MSFT1"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<5sIQ")


@dataclass
class PipelineArtifact:
    format_version: int
    pipeline: TrainedPipeline

    @property
    def prep_config(self):
        return self.pipeline.prep

    @property
    def vectorizer_kind(self) -> str:
        return self.pipeline.vectorizer_kind

    @property
    def classifier_kind(self) -> str:
        return self.pipeline.classifier_kind

    @property
    def training_metadata(self) -> dict:
        return self.pipeline.metadata


def save_artifact(pipeline: TrainedPipeline | PipelineArtifact, path) -> None:
    if isinstance(pipeline, PipelineArtifact):
        pipeline = pipeline.pipeline
    payload = pickle.dumps(pipeline, protocol=4)
    digest = hashlib.sha256(payload).digest()
    with open(Path(path), "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, FORMAT_VERSION, len(payload)))
        fh.write(digest)
        fh.write(payload)


def load_artifact(path) -> PipelineArtifact:
    blob = Path(path).read_bytes()
    if len(blob) < _HEADER.size + 32:
        raise CorruptArtifact(f"{path}: truncated header")
    magic, version, length = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise CorruptArtifact(f"{path}: bad magic {magic!r}")
    if not 1 <= version <= FORMAT_VERSION:
        raise UnsupportedVersion(f"{path}: format_version {version} is not supported")
    payload = blob[_HEADER.size + 32 :]
    if len(payload) != length:
        raise CorruptArtifact(f"{path}: payload length {len(payload)} != header {length}")
    digest = blob[_HEADER.size : _HEADER.size + 32]
    if hashlib.sha256(payload).digest() != digest:
        raise CorruptArtifact(f"{path}: checksum mismatch")
    try:
        pipeline = pickle.loads(payload)
    except Exception as exc:
        raise CorruptArtifact(f"{path}: payload does not deserialize: {exc}") from exc
    if not isinstance(pipeline, TrainedPipeline):
        raise CorruptArtifact(f"{path}: payload is not a pipeline")
    if pipeline.vectorizer.dim != pipeline.classifier.dim:
        raise CorruptArtifact(
            f"{path}: vectorizer dim {pipeline.vectorizer.dim} "
            f"!= classifier dim {pipeline.classifier.dim}"
        )
    return PipelineArtifact(format_version=version, pipeline=pipeline)
