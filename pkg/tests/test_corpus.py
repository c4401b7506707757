import json
from datetime import date

import pytest
from hypothesis import given, strategies as st

from xdalign.corpus import (
    CorpusValidationError,
    Document,
    RecordParseError,
    document_to_record,
    load_documents,
    load_gold,
    parse_document_record,
    validate_corpus,
)


def record(**overrides):
    obj = {
        "id": "de-1",
        "lang": "de",
        "publish_date": "2021-11-13",
        "title": "T",
        "lead": "L",
        "content": "C",
    }
    obj.update(overrides)
    return json.dumps(obj, ensure_ascii=False)


def doc(doc_id="de-1", lang="de", day="2021-11-13", title="T", lead="L"):
    return Document(
        id=doc_id,
        lang=lang,
        publish_date=date.fromisoformat(day),
        title=title,
        lead=lead,
        content="",
    )


class TestParse:
    def test_identity_round_trip(self):
        d = parse_document_record(record())
        assert d.id == "de-1"
        assert d.lang == "de"
        assert d.publish_date == date(2021, 11, 13)
        assert (d.title, d.lead, d.content) == ("T", "L", "C")

    def test_missing_field_names_it(self):
        obj = json.loads(record())
        del obj["lead"]
        with pytest.raises(RecordParseError, match="lead"):
            parse_document_record(json.dumps(obj))

    def test_invalid_date(self):
        with pytest.raises(CorpusValidationError, match="publish_date"):
            parse_document_record(record(publish_date="2021-13-40"))

    def test_malformed_json_reports_line_number(self):
        with pytest.raises(RecordParseError, match="line 7"):
            parse_document_record("{not json", line_number=7)

    def test_title_and_lead_trimmed(self):
        d = parse_document_record(record(title="  T ", lead=" L  "))
        assert d.title == "T"
        assert d.lead == "L"

    @given(
        st.text(min_size=1).filter(str.strip),
        st.text(),
        st.text(),
        st.text(),
        st.dates(min_value=date(2000, 1, 1), max_value=date(2100, 1, 1)),
    )
    def test_serialization_round_trip(self, doc_id, title, lead, content, day):
        original = Document(
            id=doc_id,
            lang="fr",
            publish_date=day,
            title=title.strip(),
            lead=lead.strip(),
            content=content,
        )
        assert parse_document_record(document_to_record(original)) == original


class TestValidate:
    def test_summary_counts(self):
        docs = [doc(f"de-{i}") for i in range(3)] + [
            doc(f"fr-{i}", lang="fr") for i in range(2)
        ]
        summary = validate_corpus(docs, ("de", "fr"))
        assert summary.count_by_lang == {"de": 3, "fr": 2}
        assert summary.total == 5

    def test_duplicate_id_rejected(self):
        with pytest.raises(CorpusValidationError, match="x"):
            validate_corpus([doc("x"), doc("x", lang="fr")], ("de", "fr"))

    def test_out_of_set_language_rejected(self):
        with pytest.raises(CorpusValidationError, match="it-doc"):
            validate_corpus([doc(), doc("it-doc", lang="it")], ("de", "fr"))

    def test_empty_corpus_rejected(self):
        with pytest.raises(CorpusValidationError):
            validate_corpus([], ("de", "fr"))

    def test_empty_title_is_warning_not_error(self):
        summary = validate_corpus(
            [doc(title=""), doc("fr-1", lang="fr")], ("de", "fr")
        )
        assert any("de-1" in w for w in summary.warnings)

    def test_per_date_counts(self):
        docs = [doc("a"), doc("b", day="2021-11-14"), doc("c", day="2021-11-14")]
        summary = validate_corpus(docs, ("de", "fr"))
        assert summary.count_by_date == {
            date(2021, 11, 13): 1,
            date(2021, 11, 14): 2,
        }


class TestFiles:
    def test_load_documents(self, fixtures_dir):
        docs = load_documents(fixtures_dir / "documents.jsonl")
        assert len(docs) == 22
        assert validate_corpus(docs, ("de", "fr")).count_by_lang == {
            "de": 11,
            "fr": 11,
        }

    def test_load_gold(self, fixtures_dir):
        gold = load_gold(fixtures_dir / "gold.tsv")
        assert ("de-1", "fr-1") in gold.pairs
        assert len(gold) == 4

    def test_load_gold_unknown_id(self, fixtures_dir):
        with pytest.raises(CorpusValidationError, match="de-1"):
            load_gold(fixtures_dir / "gold.tsv", corpus_ids={"other"})
