"""Load the fixture corpora and merge them into one labeled corpus.

Two CSV layouts exist side by side: subject/body/label files and full
header files (sender, receiver, date, subject, body, label, urls). The
manifest lists one file per line with its schema tag; merging reduces
every record to a single text_combined string (receiver and urls are
deliberately excluded - both are removable without any measurable effect).
"""

from pathlib import Path

from mailsift.corpus import CorpusSchema, combine_text, load_manifest, merge_corpora

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

datasets = load_manifest(FIXTURES / "manifest.txt")
for ds in datasets:
    print(f"{Path(ds.path).name:<24} {ds.schema.value:<13} {len(ds.records):>3} records "
          f"({ds.n_dropped} dropped)")

corpus = merge_corpora(datasets)
print(f"\nmerged: {len(corpus)} records, {corpus.n_spam} spam / {corpus.n_ham} ham")
print(f"fingerprint: {corpus.fingerprint()[:16]}...")

# how one full-header record collapses into text_combined
record = datasets[-1].records[0]
print("\nsender: ", record.sender)
print("date:   ", record.date)
print("subject:", record.subject)
print("body:   ", (record.body or "")[:60], "...")
print("\ntext_combined:", combine_text(record, CorpusSchema.FULL_HEADER)[:100], "...")
