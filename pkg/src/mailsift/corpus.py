"""Loading heterogeneous email CSV corpora and merging them into one labeled corpus.

Two on-disk layouts are supported:

* ``subject_body``: columns subject, body, label
* ``full_header``: columns sender, receiver, date, subject, body, label, urls

Files are UTF-8 CSV with a header row (column match is case-insensitive);
fields may be quoted and contain embedded newlines. Every record is reduced
to a single ``text_combined`` string before feature extraction. The receiver
and urls columns are deliberately left out of ``text_combined``: both are
removable without a measurable effect on classification quality.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import EmptyDataset, MissingColumn


class CorpusSchema(Enum):
    SUBJECT_BODY = "subject_body"
    FULL_HEADER = "full_header"

    @classmethod
    def from_tag(cls, tag: str) -> "CorpusSchema":
        try:
            return cls(tag.strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown schema tag {tag!r}; expected one of "
                f"{[s.value for s in cls]}"
            ) from None


_SCHEMA_COLUMNS = {
    CorpusSchema.SUBJECT_BODY: ("subject", "body", "label"),
    CorpusSchema.FULL_HEADER: ("sender", "receiver", "date", "subject", "body", "label", "urls"),
}


@dataclass(frozen=True)
class EmailRecord:
    """One email. Only body and label are mandatory; date is kept verbatim."""

    body: str
    label: int
    source: str = ""
    sender: str | None = None
    receiver: str | None = None
    date: str | None = None
    subject: str | None = None
    url_flag: int | None = None

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 (ham) or 1 (spam), got {self.label!r}")


@dataclass
class LoadedDataset:
    """Records parsed from one CSV file plus its schema and drop count."""

    records: list[EmailRecord]
    schema: CorpusSchema
    n_dropped: int = 0
    path: str = ""


@dataclass(frozen=True)
class CorpusRecord:
    text_combined: str
    label: int
    source: str = ""


@dataclass
class Corpus:
    """Merged, harmonized corpus keyed on text_combined."""

    records: list[CorpusRecord]
    class_counts: tuple[int, int]  # (n_spam, n_ham)
    n_dropped_blank: int = 0

    def __post_init__(self):
        n_spam = sum(1 for r in self.records if r.label == 1)
        n_ham = len(self.records) - n_spam
        if self.class_counts != (n_spam, n_ham):
            raise ValueError(
                f"class_counts {self.class_counts} do not match label tally {(n_spam, n_ham)}"
            )

    def __len__(self) -> int:
        return len(self.records)

    @property
    def n_spam(self) -> int:
        return self.class_counts[0]

    @property
    def n_ham(self) -> int:
        return self.class_counts[1]

    def labels(self) -> list[int]:
        return [r.label for r in self.records]

    def texts(self) -> list[str]:
        return [r.text_combined for r in self.records]

    def fingerprint(self) -> str:
        """Order-sensitive sha256 over (text, label) pairs."""
        h = hashlib.sha256()
        for r in self.records:
            h.update(r.text_combined.encode("utf-8"))
            h.update(b"\x00")
            h.update(str(r.label).encode("ascii"))
            h.update(b"\x01")
        return h.hexdigest()


def _parse_label(cell: str) -> int | None:
    try:
        value = float(cell.strip())
    except ValueError:
        return None
    if value == 0.0:
        return 0
    if value == 1.0:
        return 1
    return None


def _cell(row: list[str], idx: int) -> str:
    return row[idx] if idx < len(row) else ""


def _optional(cell: str) -> str | None:
    # Empty cell means the field is absent; anything else is kept verbatim.
    return cell if cell != "" else None


def load_dataset(path, schema: CorpusSchema, source: str | None = None) -> LoadedDataset:
    """Parse one CSV file into EmailRecords.

    Rows whose label is not 0 or 1 are dropped (not fatal: one bad row must
    not abort an 80k-row ingest); the drop count is returned on the dataset.
    Raises MissingColumn if a schema column is absent from the header and
    EmptyDataset if no valid rows remain.
    """
    path = Path(path)
    source = source if source is not None else path.name
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise EmptyDataset(f"{path}: file has no header row")
        col = {name.strip().lower(): i for i, name in enumerate(header)}
        for name in _SCHEMA_COLUMNS[schema]:
            if name not in col:
                raise MissingColumn(name)

        records: list[EmailRecord] = []
        dropped = 0
        for row in reader:
            if not row:
                continue
            label = _parse_label(_cell(row, col["label"]))
            if label is None:
                dropped += 1
                continue
            if schema is CorpusSchema.SUBJECT_BODY:
                records.append(
                    EmailRecord(
                        body=_cell(row, col["body"]),
                        label=label,
                        source=source,
                        subject=_optional(_cell(row, col["subject"])),
                    )
                )
            else:
                url_cell = _cell(row, col["urls"]).strip()
                records.append(
                    EmailRecord(
                        body=_cell(row, col["body"]),
                        label=label,
                        source=source,
                        sender=_optional(_cell(row, col["sender"])),
                        receiver=_optional(_cell(row, col["receiver"])),
                        date=_optional(_cell(row, col["date"])),
                        subject=_optional(_cell(row, col["subject"])),
                        url_flag=_parse_label(url_cell) if url_cell else None,
                    )
                )
    if not records:
        raise EmptyDataset(f"{path}: no rows with a valid 0/1 label")
    return LoadedDataset(records=records, schema=schema, n_dropped=dropped, path=str(path))


def combine_text(record: EmailRecord, schema: CorpusSchema) -> str:
    """Merge a record's text fields into one string.

    subject_body uses subject + body; full_header uses sender + date +
    subject + body. Absent or blank fields contribute nothing; present
    fields are joined by single spaces. receiver and url_flag never
    participate.
    """
    if schema is CorpusSchema.SUBJECT_BODY:
        parts = (record.subject, record.body)
    else:
        parts = (record.sender, record.date, record.subject, record.body)
    return " ".join(p.strip() for p in parts if p is not None and p.strip())


def merge_corpora(datasets) -> Corpus:
    """Combine several loaded datasets into one Corpus.

    Accepts LoadedDataset objects or (records, schema) pairs. Record order
    is dataset order then row order; rows whose text_combined is blank are
    dropped and counted. No cross-dataset deduplication is performed, so
    merged class counts are exactly the sums of the inputs.
    """
    records: list[CorpusRecord] = []
    dropped_blank = 0
    for ds in datasets:
        if isinstance(ds, LoadedDataset):
            recs, schema = ds.records, ds.schema
        else:
            recs, schema = ds
        for rec in recs:
            text = combine_text(rec, schema)
            if not text:
                dropped_blank += 1
                continue
            records.append(CorpusRecord(text_combined=text, label=rec.label, source=rec.source))
    if not records:
        raise EmptyDataset("all rows were dropped while merging")
    n_spam = sum(1 for r in records if r.label == 1)
    return Corpus(
        records=records,
        class_counts=(n_spam, len(records) - n_spam),
        n_dropped_blank=dropped_blank,
    )


@dataclass(frozen=True)
class ManifestEntry:
    path: Path
    schema: CorpusSchema


def read_manifest(path) -> list[ManifestEntry]:
    """Parse a manifest: one ``<csv path>,<schema tag>`` line per dataset.

    Blank lines and lines starting with ``#`` are ignored. Relative paths
    are resolved against the manifest's directory.
    """
    path = Path(path)
    entries: list[ManifestEntry] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "," not in line:
                raise ValueError(f"{path}:{lineno}: expected '<path>,<schema>', got {line!r}")
            file_part, tag = line.rsplit(",", 1)
            csv_path = Path(file_part.strip())
            if not csv_path.is_absolute():
                csv_path = path.parent / csv_path
            entries.append(ManifestEntry(path=csv_path, schema=CorpusSchema.from_tag(tag)))
    if not entries:
        raise EmptyDataset(f"{path}: manifest lists no datasets")
    return entries


def load_manifest(path) -> list[LoadedDataset]:
    return [load_dataset(e.path, e.schema) for e in read_manifest(path)]
