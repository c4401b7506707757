from datetime import date

import numpy as np
import pytest

from xdalign.aligner import PairSet, Strategy
from xdalign.corpus import DocPair, Document
from xdalign.metrics import PairMetrics
from xdalign.report import (
    corpus_stats,
    metric_correlation,
    score_histogram,
    top_k,
    write_report,
)


def pair_set(*score_by_ids):
    pairs = frozenset(DocPair(s, t, score) for s, t, score in score_by_ids)
    return PairSet(pairs=pairs, strategy=Strategy.INTERSECTION, threshold=46.0)


def doc(doc_id, lang, title="", lead="", content=""):
    return Document(
        id=doc_id,
        lang=lang,
        publish_date=date(2021, 11, 13),
        title=title,
        lead=lead,
        content=content,
    )


class TestCorpusStats:
    def test_avg_title_length(self):
        docs = [doc("a", "de", title="x" * 10), doc("b", "de", title="y" * 20)]
        table = corpus_stats(docs, ("de", "fr"))
        assert table.per_lang["de"].avg_title_chars == pytest.approx(15.0)
        assert table.per_lang["de"].articles == 2
        assert table.per_lang["fr"].articles == 0

    def test_empty_language_all_zero(self):
        table = corpus_stats([], ("de", "fr"))
        st = table.per_lang["de"]
        assert (st.articles, st.sentences, st.characters) == (0, 0, 0)

    def test_sentence_counts_via_segmenter(self):
        docs = [doc("a", "de", title="T", content="Eins. Zwei. Drei.")]
        table = corpus_stats(docs, ("de", "fr"))
        assert table.per_lang["de"].sentences == 3
        assert table.per_lang["de"].avg_content_sentences == pytest.approx(3.0)

    def test_tokens_skipped_without_tokenizer(self):
        table = corpus_stats([doc("a", "de", title="ein zwei")], ("de", "fr"))
        assert table.per_lang["de"].tokens is None

    def test_tokens_with_external_tokenizer(self):
        table = corpus_stats(
            [doc("a", "de", title="ein zwei", lead="drei")],
            ("de", "fr"),
            tokenizer=str.split,
        )
        assert table.per_lang["de"].tokens == 3


class TestScoreHistogram:
    def test_boundary_rule(self):
        hist = score_histogram([46.0, 99.9, 100.0], bins=100, low=46.0, high=100.0)
        assert hist.counts[0] == 1
        assert hist.counts[99] == 2  # 100.0 joins the last bin by right-inclusion
        assert sum(hist.counts) == 3
        assert len(hist.bin_edges) == 101

    def test_conservation(self):
        rng = np.random.default_rng(1)
        scores = rng.uniform(0, 100, 500)
        hist = score_histogram(scores, bins=100, low=46.0, high=100.0)
        assert sum(hist.counts) + hist.overflow == 500

    def test_derived_bin_arithmetic(self):
        # width 0.54: 46.53 is still bin 0 (edge 46.54), 46.55 is bin 1
        hist = score_histogram([46.0, 46.53, 46.55], bins=100, low=46.0, high=100.0)
        assert hist.counts[0] == 2
        assert hist.counts[1] == 1

    def test_out_of_range_goes_to_overflow(self):
        hist = score_histogram([10.0, 50.0], bins=100, low=46.0, high=100.0)
        assert hist.overflow == 1
        assert sum(hist.counts) == 1

    def test_uniform_edges(self):
        hist = score_histogram([], bins=10, low=0.0, high=100.0)
        widths = np.diff(hist.bin_edges)
        assert np.allclose(widths, 10.0)

    def test_bad_bounds(self):
        with pytest.raises(ValueError):
            score_histogram([], bins=10, low=50.0, high=50.0)


class TestTopK:
    def test_sorted_by_score_descending(self):
        ps = pair_set(("a", "x", 80.0), ("b", "y", 90.0), ("c", "z", 70.0))
        got = top_k(ps, 2)
        assert [(p.src_id, p.score) for p in got] == [("b", 90.0), ("a", 80.0)]

    def test_k_zero(self):
        assert top_k(pair_set(("a", "x", 80.0)), 0) == []

    def test_k_beyond_size_returns_all(self):
        ps = pair_set(("a", "x", 80.0), ("b", "y", 90.0))
        assert len(top_k(ps, 10)) == 2

    def test_ties_break_lexicographically(self):
        ps = pair_set(("b", "y", 80.0), ("a", "x", 80.0))
        got = top_k(ps, 2)
        assert [p.src_id for p in got] == ["a", "b"]

    def test_prefix_property(self):
        rng = np.random.default_rng(3)
        ps = pair_set(
            *((f"s{i}", f"t{i}", float(sc)) for i, sc in enumerate(rng.uniform(0, 100, 30)))
        )
        for k1, k2 in [(0, 5), (5, 12), (12, 30)]:
            assert top_k(ps, k1) == top_k(ps, k2)[:k1]


class TestMetricCorrelation:
    def test_identity_metric(self):
        scores = [70.0, 80.0, 90.0]
        r, obs = metric_correlation(scores, scores)
        assert r == pytest.approx(1.0)
        assert len(obs) == 3

    def test_negated_metric(self):
        scores = [70.0, 80.0, 90.0]
        r, _ = metric_correlation(scores, [-s for s in scores])
        assert r == pytest.approx(-1.0)

    def test_hand_computed(self):
        r, _ = metric_correlation([80.0, 85.0, 90.0], [0.2, 0.2, 0.5])
        assert r == pytest.approx(0.8660, abs=1e-4)

    def test_none_values_excluded(self):
        r, obs = metric_correlation([80.0, 85.0, 90.0], [0.2, None, 0.5])
        assert len(obs) == 2

    def test_too_few_observations_flagged(self):
        r, obs = metric_correlation([80.0], [0.2])
        assert r is None

    def test_affine_invariance(self):
        rng = np.random.default_rng(8)
        x = rng.uniform(0, 100, 20).tolist()
        y = rng.uniform(0, 1, 20).tolist()
        r1, _ = metric_correlation(x, y)
        r2, _ = metric_correlation(x, [3.0 * v + 7.0 for v in y])
        assert r1 == pytest.approx(r2, abs=1e-9)
        r3, _ = metric_correlation(y, x)
        assert r1 == pytest.approx(r3, abs=1e-9)


class TestWriteReport:
    def test_report_files_emitted(self, tmp_path):
        docs = [
            doc("a", "de", title="Titel", lead="Lead", content="Eins. Zwei."),
            doc("x", "fr", title="Titre", lead="Chapeau", content="Un. Deux."),
        ]
        ps = pair_set(("a", "x", 80.0))
        metrics = {
            ("a", "x"): PairMetrics(0.5, 0.5, 1.0, 1.0, 2),
        }
        summary = write_report(tmp_path / "report", docs, ("de", "fr"), ps, metrics)
        names = {p.name for p in (tmp_path / "report").iterdir()}
        assert {
            "stats.csv",
            "histogram.csv",
            "histogram.svg",
            "topk.csv",
            "scatter_monotonicity.csv",
            "scatter_monotonicity.svg",
            "summary.json",
        } <= names
        assert summary["pairs"] == 1
