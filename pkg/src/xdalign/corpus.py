"""Domain types for articles and alignments, plus corpus ingestion and validation.

Articles are stored one JSON object per line (UTF-8). Gold pairs are a
two-column TSV with optional '#'-prefixed header lines.
"""

import json
from collections import Counter
from dataclasses import dataclass, field
from datetime import date


class RecordParseError(ValueError):
    """A line could not be parsed into a Document."""


class CorpusValidationError(ValueError):
    """A document or corpus violates an invariant."""


@dataclass(frozen=True)
class Document:
    """One news article."""

    id: str
    lang: str
    publish_date: date
    title: str
    lead: str
    content: str = ""
    meta: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class DocPair:
    """An aligned article pair with its scaled cosine score in [-100, 100]."""

    src_id: str
    tgt_id: str
    score: float

    def key(self):
        return (self.src_id, self.tgt_id)


@dataclass(frozen=True)
class GoldSet:
    """Human-verified (src_id, tgt_id) pairs used for threshold tuning."""

    pairs: frozenset

    def __len__(self):
        return len(self.pairs)


REQUIRED_FIELDS = ("id", "lang", "publish_date", "title", "lead", "content")


def parse_document_record(line, line_number=None):
    """Parse one JSONL record into a validated Document.

    Raises RecordParseError for malformed JSON or missing fields, and
    CorpusValidationError for an unparseable date.
    """
    where = f" (line {line_number})" if line_number is not None else ""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordParseError(f"malformed record{where}: {exc}") from exc
    if not isinstance(obj, dict):
        raise RecordParseError(f"record{where} is not a JSON object")
    missing = [f for f in REQUIRED_FIELDS if f not in obj]
    if missing:
        raise RecordParseError(
            f"record{where} missing field(s): {', '.join(missing)}"
        )
    try:
        publish_date = date.fromisoformat(str(obj["publish_date"]))
    except ValueError as exc:
        raise CorpusValidationError(
            f"record{where}: invalid publish_date {obj['publish_date']!r}"
        ) from exc
    doc_id = str(obj["id"])
    if not doc_id:
        raise CorpusValidationError(f"record{where}: empty id")
    return Document(
        id=doc_id,
        lang=str(obj["lang"]),
        publish_date=publish_date,
        title=str(obj["title"]).strip(),
        lead=str(obj["lead"]).strip(),
        content=str(obj["content"]),
        meta=obj.get("meta", {}) or {},
    )


def document_to_record(doc):
    """Serialize a Document back to one JSONL line (round-trip inverse of parsing)."""
    obj = {
        "id": doc.id,
        "lang": doc.lang,
        "publish_date": doc.publish_date.isoformat(),
        "title": doc.title,
        "lead": doc.lead,
        "content": doc.content,
    }
    if doc.meta:
        obj["meta"] = doc.meta
    return json.dumps(obj, ensure_ascii=False)


def load_documents(path):
    """Read a documents.jsonl file into a list of Documents."""
    docs = []
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            docs.append(parse_document_record(line, line_number=n))
    return docs


@dataclass
class CorpusSummary:
    """Counts per language and per date, plus non-fatal warnings."""

    langs: tuple
    count_by_lang: dict
    count_by_date: dict
    warnings: list

    @property
    def total(self):
        return sum(self.count_by_lang.values())


def validate_corpus(docs, langs):
    """Validate a document collection against a configured language pair.

    Rejects duplicate ids and documents in neither configured language.
    Empty title or lead is a warning only; alignment text degrades
    gracefully to the non-empty side.
    """
    if not docs:
        raise CorpusValidationError("corpus is empty")
    langs = tuple(langs)
    if len(langs) != 2 or langs[0] == langs[1]:
        raise CorpusValidationError(f"need two distinct language tags, got {langs!r}")

    seen = Counter(d.id for d in docs)
    dupes = sorted(i for i, c in seen.items() if c > 1)
    if dupes:
        raise CorpusValidationError(f"duplicate document ids: {', '.join(dupes)}")

    bad_lang = sorted(d.id for d in docs if d.lang not in langs)
    if bad_lang:
        raise CorpusValidationError(
            f"documents outside language pair {langs}: {', '.join(bad_lang)}"
        )

    count_by_lang = {lang: 0 for lang in langs}
    count_by_date = Counter()
    warnings = []
    for d in docs:
        count_by_lang[d.lang] += 1
        count_by_date[d.publish_date] += 1
        if not d.title and not d.lead:
            warnings.append(f"{d.id}: empty title and lead (cannot be aligned)")
        elif not d.title:
            warnings.append(f"{d.id}: empty title")
        elif not d.lead:
            warnings.append(f"{d.id}: empty lead")
    return CorpusSummary(
        langs=langs,
        count_by_lang=dict(count_by_lang),
        count_by_date=dict(sorted(count_by_date.items())),
        warnings=warnings,
    )


def load_gold(path, corpus_ids=None):
    """Read a gold.tsv file (two id columns, '#' comments allowed).

    If corpus_ids is given, every id must resolve against it.
    """
    pairs = set()
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise RecordParseError(
                    f"gold line {n}: expected 2 tab-separated ids, got {len(cols)}"
                )
            pair = (cols[0], cols[1])
            if pair in pairs:
                raise CorpusValidationError(f"gold line {n}: duplicate pair {pair}")
            pairs.add(pair)
    if corpus_ids is not None:
        unknown = sorted(
            i for pair in pairs for i in pair if i not in corpus_ids
        )
        if unknown:
            raise CorpusValidationError(
                f"gold ids not in corpus: {', '.join(unknown)}"
            )
    return GoldSet(pairs=frozenset(pairs))
