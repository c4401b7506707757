"""Sentence segmentation and cross-lingual sentence alignment.

The default segmenter is rule-based: terminal punctuation, per-language
abbreviation lists, quote and ellipsis handling. Any callable
text -> list[str] can be substituted. Sentence alignment reuses the
document Intersection strategy (mutual best match) at threshold 0, so
all mutual-best pairs are retained with their scores; analysis
thresholds are applied downstream.
"""

import re
from dataclasses import dataclass

import numpy as np

from .aligner import Strategy, align
from .embeddings import embed_texts
from .similarity import SimilarityMatrix


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    idx: int
    text: str

    @property
    def char_len(self):
        return len(self.text)


@dataclass(frozen=True)
class SentencePair:
    src: Sentence
    tgt: Sentence
    score: float


# Common abbreviations that end with a period but do not end a sentence.
ABBREVIATIONS = {
    "de": {
        "dr", "prof", "nr", "ca", "bzw", "evtl", "ggf", "inkl", "mio", "mrd",
        "usw", "vgl", "abs", "bsp", "etc", "st", "tel", "z.b", "u.a", "z.t",
        "d.h", "o.ä", "u.ä", "sog", "resp", "fr", "str",
    },
    "fr": {
        "m", "mm", "mme", "mmes", "mlle", "mlles", "dr", "etc", "av", "bd",
        "st", "ste", "tél", "no", "env", "p.ex", "janv", "févr", "sept",
        "oct", "nov", "déc", "vol",
    },
}

_CLOSERS = "\"'»«”’)]"
_OPENERS = "\"'«»“‘([0-9"
_BOUNDARY = re.compile(
    r"[.!?…]+[%s]*(\s+)" % re.escape(_CLOSERS)
)


class RuleSegmenter:
    """Rule-based sentence splitter for one language."""

    def __init__(self, lang="de", extra_abbreviations=()):
        self.abbreviations = set(ABBREVIATIONS.get(lang, set()))
        self.abbreviations.update(a.lower().rstrip(".") for a in extra_abbreviations)

    def __call__(self, text):
        if not text.strip():
            return []
        pieces = []
        start = 0
        for match in _BOUNDARY.finditer(text):
            cut = match.end()
            if not self._is_boundary(text, match):
                continue
            pieces.append(text[start:cut])
            start = cut
        if start < len(text):
            pieces.append(text[start:])
        return [p.strip() for p in pieces if p.strip()]

    def _is_boundary(self, text, match):
        punct_end = match.start(1)  # end of punctuation run, start of whitespace
        if match.end() >= len(text):
            return True
        nxt = text[match.end()]
        if not (nxt.isupper() or nxt in _OPENERS):
            return False
        # '!' and '?' and ellipsis always terminate; only '.' can be an abbreviation
        run = text[match.start() : punct_end]
        if run.strip(".") != "":
            return True
        word = self._word_before(text, match.start())
        if word is None:
            return True
        lowered = word.lower()
        if lowered in self.abbreviations:
            return False
        # single-letter initials like "J. Smith"
        if len(word) == 1 and word.isalpha() and word.isupper():
            return False
        # embedded-dot abbreviations ("z.B.") never end a sentence mid-word
        return True

    @staticmethod
    def _word_before(text, pos):
        i = pos
        while i > 0 and (text[i - 1].isalnum() or text[i - 1] == "."):
            i -= 1
        word = text[i:pos].strip(".")
        return word if word else None


_SEGMENTERS = {}


def get_segmenter(lang):
    if lang not in _SEGMENTERS:
        _SEGMENTERS[lang] = RuleSegmenter(lang)
    return _SEGMENTERS[lang]


def segment_sentences(doc, segmenter=None):
    """Split a document's content into indexed sentences.

    Empty content yields an empty sequence. The concatenation of
    sentence texts reconstructs the content up to whitespace.
    """
    if segmenter is None:
        segmenter = get_segmenter(doc.lang)
    texts = segmenter(doc.content)
    return [Sentence(doc_id=doc.id, idx=i, text=t) for i, t in enumerate(texts)]


def sentence_ref(sentence):
    """Stable unit id for a sentence within the embedding pipeline."""
    return f"{sentence.doc_id}#{sentence.idx}"


def align_sentences(doc_pair, src_sentences, tgt_sentences, provider_config):
    """Mutual-best sentence pairs within one aligned document pair.

    Embeds every sentence through the provider, builds the sentence
    similarity matrix, and applies the Intersection strategy at
    threshold 0. An empty side yields an empty result.
    """
    if not src_sentences or not tgt_sentences:
        return []
    matrix = sentence_similarity_matrix(src_sentences, tgt_sentences, provider_config)
    return mutual_best_pairs(matrix, src_sentences, tgt_sentences)


def sentence_similarity_matrix(src_sentences, tgt_sentences, provider_config):
    texts = [s.text for s in src_sentences] + [s.text for s in tgt_sentences]
    ids = [sentence_ref(s) for s in src_sentences] + [
        sentence_ref(s) for s in tgt_sentences
    ]
    emb = embed_texts(texts, provider_config, ids=ids)
    vectors = emb.vectors.astype("float64")
    n_src = len(src_sentences)
    scores = np.clip(100.0 * (vectors[:n_src] @ vectors[n_src:].T), -100.0, 100.0)
    return SimilarityMatrix(
        row_ids=tuple(ids[:n_src]), col_ids=tuple(ids[n_src:]), scores=scores
    )


def mutual_best_pairs(matrix, src_sentences, tgt_sentences):
    """Intersection alignment on a sentence matrix, mapped back to SentencePairs."""
    by_ref_src = {sentence_ref(s): s for s in src_sentences}
    by_ref_tgt = {sentence_ref(s): s for s in tgt_sentences}
    pair_set = align(matrix, 0.0, Strategy.INTERSECTION)
    pairs = [
        SentencePair(
            src=by_ref_src[p.src_id], tgt=by_ref_tgt[p.tgt_id], score=p.score
        )
        for p in pair_set.pairs
    ]
    return sorted(pairs, key=lambda p: (p.src.idx, p.tgt.idx))


def filter_short_pairs(pairs, min_chars=30):
    """Keep only pairs where BOTH sides have at least min_chars characters."""
    return [
        p
        for p in pairs
        if p.src.char_len >= min_chars and p.tgt.char_len >= min_chars
    ]
