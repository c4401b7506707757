"""Per-document-pair comparability measures.

AlignRatio (fraction of a document's sentences participating in
alignments), Pearson correlation of aligned sentence character lengths,
and monotonicity (Kendall rank correlation of aligned sentence
positions). Undefined values (fewer than two aligned pairs, or zero
variance) are represented as None and excluded from aggregates, never
coerced to 0.
"""

from dataclasses import dataclass

import numpy as np
from scipy import stats


@dataclass
class PairMetrics:
    align_ratio_src: float  # None when the source side has no sentences
    align_ratio_tgt: float
    length_corr: float  # None when undefined
    monotonicity: float  # None when undefined
    n_aligned: int


def align_ratio(num_aligned, total_sentences):
    """num_aligned / total_sentences; None when the document has no sentences."""
    if num_aligned < 0 or total_sentences < 0:
        raise ValueError("counts must be non-negative")
    if num_aligned > total_sentences:
        raise ValueError(
            f"aligned count {num_aligned} exceeds sentence total {total_sentences}"
        )
    if total_sentences == 0:
        return None
    return num_aligned / total_sentences


def pearson(x, y):
    """Pearson r, or None for fewer than 2 points or zero variance."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) != len(y):
        raise ValueError("length mismatch")
    if len(x) < 2 or np.std(x) == 0.0 or np.std(y) == 0.0:
        return None
    return float(stats.pearsonr(x, y).statistic)


def kendall_tau(x, y):
    """Kendall tau-b, or None for fewer than 2 points or a constant side."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) != len(y):
        raise ValueError("length mismatch")
    if len(x) < 2 or np.all(x == x[0]) or np.all(y == y[0]):
        return None
    return float(stats.kendalltau(x, y, variant="b").statistic)


def sentence_length_correlation(pairs):
    """Pearson r over (src char_len, tgt char_len) of aligned sentence pairs."""
    if len(pairs) < 2:
        return None
    return pearson(
        [p.src.char_len for p in pairs], [p.tgt.char_len for p in pairs]
    )


def monotonicity(pairs):
    """Kendall tau-b over (src idx, tgt idx) of aligned sentence pairs."""
    if len(pairs) < 2:
        return None
    return kendall_tau([p.src.idx for p in pairs], [p.tgt.idx for p in pairs])


def pair_metrics(pairs, src_total, tgt_total, analysis_threshold=None):
    """All comparability measures for one document pair.

    `pairs` are its aligned sentence pairs; when analysis_threshold is
    given only pairs with score >= threshold enter the statistics.
    """
    if analysis_threshold is not None:
        pairs = [p for p in pairs if p.score >= analysis_threshold]
    return PairMetrics(
        align_ratio_src=align_ratio(len({p.src.idx for p in pairs}), src_total),
        align_ratio_tgt=align_ratio(len({p.tgt.idx for p in pairs}), tgt_total),
        length_corr=sentence_length_correlation(pairs),
        monotonicity=monotonicity(pairs),
        n_aligned=len(pairs),
    )
