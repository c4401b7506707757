"""Post-processing: remove faulty article pairs after alignment.

Faulty pairs typically carry a suspiciously high similarity score and
contain an error message or the same text in the same language. Three
independent checks, each with a machine-readable removal reason:
"identical-text", "error-marker", "same-language".
"""

import re
from collections import Counter
from dataclasses import dataclass, field
from math import sqrt

from .aligner import PairSet
from .embeddings import build_alignment_text

_WS = re.compile(r"\s+")


@dataclass
class CleanupConfig:
    suspicious_score: float = 99.5
    same_language_check: bool = True
    same_language_overlap: float = 0.9
    error_markers: list = field(default_factory=list)

    def __post_init__(self):
        # values above 100 are allowed as a sentinel that disables the check
        if not 0.0 <= self.suspicious_score <= 101.0:
            raise ValueError("suspicious_score must be in [0, 100] (or >100 to disable)")


def _normalize_ws(text):
    return _WS.sub(" ", text).strip()


def _trigram_profile(text):
    text = _normalize_ws(text.lower())
    return Counter(text[i : i + 3] for i in range(max(len(text) - 2, 0)))


def trigram_overlap(text_a, text_b):
    """Cosine similarity of character-trigram count profiles, in [0, 1]."""
    pa, pb = _trigram_profile(text_a), _trigram_profile(text_b)
    if not pa or not pb:
        return 0.0
    dot = sum(count * pb[gram] for gram, count in pa.items())
    na = sqrt(sum(c * c for c in pa.values()))
    nb = sqrt(sum(c * c for c in pb.values()))
    return dot / (na * nb)


def _full_text(doc):
    return " ".join((doc.title, doc.lead, doc.content))


def filter_faulty_pairs(pairs, docs_by_id, config):
    """Partition a PairSet into kept pairs and (pair, reason) removals.

    A pair is removed iff its score reaches suspicious_score and both
    alignment texts are identical after whitespace normalization, or
    either document matches a configured error marker, or the two sides
    look like same-language duplicates by trigram overlap.
    """
    markers = [m.lower() for m in config.error_markers]
    kept = set()
    removed = []
    for pair in sorted(pairs.pairs, key=lambda p: p.key()):
        try:
            src = docs_by_id[pair.src_id]
            tgt = docs_by_id[pair.tgt_id]
        except KeyError as exc:
            raise ValueError(f"pair references unknown document id {exc}") from exc
        reason = _removal_reason(pair, src, tgt, markers, config)
        if reason is None:
            kept.add(pair)
        else:
            removed.append((pair, reason))
    kept_set = PairSet(
        pairs=frozenset(kept), strategy=pairs.strategy, threshold=pairs.threshold
    )
    return kept_set, removed


def _removal_reason(pair, src, tgt, markers, config):
    src_text = build_alignment_text(src)
    tgt_text = build_alignment_text(tgt)
    if pair.score >= config.suspicious_score and _normalize_ws(
        src_text
    ) == _normalize_ws(tgt_text):
        return "identical-text"
    if markers:
        for doc in (src, tgt):
            text = _full_text(doc).lower()
            for marker in markers:
                if marker in text:
                    return "error-marker"
    if config.same_language_check:
        if trigram_overlap(src_text, tgt_text) > config.same_language_overlap:
            return "same-language"
    return None
